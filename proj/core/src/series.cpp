#include "otoc/series.hpp"

#include <ostream>
#include <stdexcept>

#include "otoc/version.hpp"

namespace otoc {

double OtocSeries::at_tick(long tick, int j) const {
    for (std::size_t r = 0; r < ticks.size(); ++r)
        if (ticks[r] == tick) return values[r][j - 1];
    throw std::out_of_range("tick not recorded in series");
}

std::vector<std::pair<double, double>> OtocSeries::unit_time_series(int j) const {
    std::vector<std::pair<double, double>> out;
    for (std::size_t r = 0; r < ticks.size(); ++r)
        if (ticks[r] % ticks_per_period == 0)
            out.emplace_back(double(ticks[r]) / ticks_per_period, values[r][j - 1]);
    return out;
}

void write_series_csv(std::ostream& out, const OtocSeries& s,
                      const std::map<std::string, std::string>& meta) {
    out << "# version=" << kVersion << "\n";
    out << "# n=" << s.n << " i=" << s.i << " protocol=" << s.protocol << " gate=" << s.gate
        << " ticks_per_period=" << s.ticks_per_period << "\n";
    for (const auto& [k, v] : meta) out << "# " << k << "=" << v << "\n";
    out << "t,j,otoc\n";
    out.precision(17);
    for (std::size_t r = 0; r < s.ticks.size(); ++r) {
        const double t = s.time_of(r);
        for (int j = 1; j <= s.n; ++j)
            out << t << "," << j << "," << s.values[r][j - 1] << "\n";
    }
}

}  // namespace otoc
