#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace otoc {

/// Tick-resolved O(i,j,t) for every j. time = tick / ticks_per_period.
struct OtocSeries {
    int n = 0;
    int i = 0;
    int ticks_per_period = 1;
    std::string protocol;
    std::string gate;
    std::vector<long> ticks;
    std::vector<std::vector<double>> values;   // [row][j-1]

    double at_tick(long tick, int j) const;
    double time_of(std::size_t row) const { return double(ticks[row]) / ticks_per_period; }
    std::size_t rows() const { return ticks.size(); }

    /// O(i,j,t) at integer periods only (rate fits work in period units).
    std::vector<std::pair<double, double>> unit_time_series(int j) const;
};

/// CSV with "# key=value" header lines, then t,j,otoc rows.
void write_series_csv(std::ostream& out, const OtocSeries& s,
                      const std::map<std::string, std::string>& meta);

}  // namespace otoc
