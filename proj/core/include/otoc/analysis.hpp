#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "otoc/gates.hpp"
#include "otoc/protocol.hpp"
#include "otoc/series.hpp"

namespace otoc {

/// Long-time average 1 + 1/(4^n - 1).
double o_infinity(int n);

/// Counting oracle: enumerates all 4^n - 1 Pauli strings against a
/// fixed single-site Pauli and tallies commuting vs anticommuting ones.
struct OInfinityCount {
    std::int64_t commuting = 0;
    std::int64_t anticommuting = 0;
    std::int64_t num = 0;     // exact numerator of O_inf
    std::int64_t den = 0;     // exact denominator (4^n - 1)
    double value = 0.0;
};
OInfinityCount o_infinity_bruteforce(int n);   // n <= 8

/// Discrete convergence rate r(t) = -[ln D(t+1) - ln D(t)] per unit
/// time, D(t) = |O(i,j,t) - O_inf|, sampled at integer periods.
struct RateSeries {
    int j = 0;
    std::vector<double> times;
    std::vector<double> rates;
    std::vector<bool> defined;   // false where D underflows or crosses zero
};
RateSeries rate_series(const OtocSeries& series, int j);

/// Exact light-cone boundary value (infinite system):
/// (4/3) c_-^{2t} on the same-parity branch, (4/3) c_+ c_-^{2t-1} on the
/// opposite-parity branch. Throws if (j,t) is not a boundary point.
double lightcone_value(const KernelScalars& s, int i, int j, long t);

/// Whether (j, t) lies on a light-cone boundary branch for origin i.
bool on_lightcone_boundary(int i, int j, long t);

/// BW PBC dual-unitary rate-transition time (periods); odd-i conventions,
/// 0 < j - i < n/2. No prediction otherwise.
std::optional<double> predict_transition_time(int n, int i, int j, GateClass cls);

/// Times when a light-cone boundary revisits site j (periods), both wrap
/// families for PBC, the reflection family for OBC.
std::vector<double> predict_spike_times(int n, int i, int j, Boundary bc, double horizon);

struct LambdaRef {
    std::string name;        // e.g. "bw_pbc", "bw_obc", "s_pbc"
    double lambda2_abs = 0;
    int n = 0;
};

struct PhantomReport {
    int j = 0;
    double early_rate = 0, late_rate = 0;
    double early_residual = 0, late_residual = 0;   // rms of the linear fit
    double t_c_observed = 0, t_c_predicted = 0;
    std::vector<LambdaRef> refs;
    std::string early_match, late_match;   // nearest reference names
    bool no_exponential_relaxation = false;
    bool non_monotone = false;
    std::vector<std::string> notes;
};

struct PhantomOptions {
    double window_margin = 2.0;        // periods dropped around t_c
    double spike_margin = 1.0;         // half-width dropped around predicted spikes
    double underflow_floor = 1e-250;   // D below this is excluded from fits
    int min_points = 5;
};

/// Two-window rate fit around the given transition time. Throws
/// std::runtime_error when either window has fewer than min_points.
PhantomReport phantom_report(const OtocSeries& series, int j, const std::vector<LambdaRef>& refs,
                             double t_c_predicted, const PhantomOptions& opt = {});

std::string phantom_report_json(const PhantomReport& r);

/// Least-squares slope of y against x; pair (slope, rms residual).
std::pair<double, double> fit_line_slope(const std::vector<double>& x,
                                         const std::vector<double>& y);

}  // namespace otoc
