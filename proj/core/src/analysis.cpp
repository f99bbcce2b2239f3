#include "otoc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace otoc {

double o_infinity(int n) {
    if (n < 1) throw std::invalid_argument("o_infinity needs n >= 1");
    return 1.0 + 1.0 / (std::ldexp(1.0, 2 * n) - 1.0);
}

OInfinityCount o_infinity_bruteforce(int n) {
    if (n < 1 || n > 8) throw std::invalid_argument("enumeration oracle supports 1 <= n <= 8");
    OInfinityCount c;
    const std::int64_t total = std::int64_t{1} << (2 * n);
    // fixed operator: letter 1 (x) at site 1; the averaged OTOC is
    // letter- and site-independent, which the unit tests verify.
    const int site = 0, beta = 1;
    for (std::int64_t s = 1; s < total; ++s) {
        const int letter = int((s >> (2 * site)) & 3);
        const bool anticommutes = letter != 0 && letter != beta;
        if (anticommutes)
            ++c.anticommuting;
        else
            ++c.commuting;
    }
    c.den = total - 1;
    c.num = c.den - (c.commuting - c.anticommuting);
    c.value = double(c.num) / double(c.den);
    return c;
}

RateSeries rate_series(const OtocSeries& series, int j) {
    const auto pts = series.unit_time_series(j);
    if (pts.size() < 2) throw std::invalid_argument("rate_series needs at least 2 unit-time points");
    const double oinf = o_infinity(series.n);
    RateSeries r;
    r.j = j;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        const double d0 = std::abs(pts[k].second - oinf);
        const double d1 = std::abs(pts[k + 1].second - oinf);
        const double dt = pts[k + 1].first - pts[k].first;
        r.times.push_back(pts[k].first);
        if (d0 > 0 && d1 > 0 && d0 > 1e-300 && d1 > 1e-300) {
            r.rates.push_back(-(std::log(d1) - std::log(d0)) / dt);
            r.defined.push_back(true);
        } else {
            r.rates.push_back(std::numeric_limits<double>::quiet_NaN());
            r.defined.push_back(false);
        }
    }
    return r;
}

bool on_lightcone_boundary(int i, int j, long t) {
    const long dj = j - i;
    if (t == 0) return dj == 0;
    if (i % 2 == 1) return dj == 2 * t || dj == -(2 * t - 1);
    return dj == -2 * t || dj == 2 * t - 1;
}

double lightcone_value(const KernelScalars& s, int i, int j, long t) {
    if (t < 0 || !on_lightcone_boundary(i, j, t))
        throw std::invalid_argument("(j, t) is not on the light-cone boundary for this i");
    if (t == 0) return 4.0 / 3.0;
    const long dj = j - i;
    const bool same_parity = (dj % 2) == 0;
    if (same_parity) return (4.0 / 3.0) * std::pow(s.cminus, 2.0 * t);
    return (4.0 / 3.0) * s.cplus * std::pow(s.cminus, 2.0 * t - 1.0);
}

std::optional<double> predict_transition_time(int n, int i, int j, GateClass cls) {
    if (cls != GateClass::dual_unitary) return std::nullopt;
    if (i % 2 == 0) return std::nullopt;
    const int dj = j - i;
    if (dj <= 0 || 2 * dj >= n) return std::nullopt;
    if (dj % 2 == 1)   // even j for i = 1: the wrapped left cone arrives first
        return (n + 1) / 2.0 - dj / 2.0;
    return dj / 2.0 + n / 2.0;
}

std::vector<double> predict_spike_times(int n, int i, int j, Boundary bc, double horizon) {
    std::vector<double> out;
    const int dj = j - i;
    if (bc == Boundary::pbc) {
        for (int k = 0;; ++k) {
            const double t = dj / 2.0 + k * n / 2.0;
            if (t > horizon) break;
            if (t > 0) out.push_back(t);
        }
        for (int k = 1;; ++k) {
            const double t = k * n / 2.0 - (dj - 1) / 2.0;
            if (t > horizon) break;
            if (t > 0) out.push_back(t);
        }
    } else {
        for (int k = 1;; ++k) {
            const double t = double(k) * n - (dj - 1) / 2.0;
            if (t > horizon) break;
            if (t > 0) out.push_back(t);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::pair<double, double> fit_line_slope(const std::vector<double>& x,
                                         const std::vector<double>& y) {
    const std::size_t m = x.size();
    if (m < 2 || y.size() != m) throw std::invalid_argument("fit_line_slope needs >= 2 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < m; ++k) {
        sx += x[k];
        sy += y[k];
        sxx += x[k] * x[k];
        sxy += x[k] * y[k];
    }
    const double denom = m * sxx - sx * sx;
    const double slope = (m * sxy - sx * sy) / denom;
    const double icpt = (sy - slope * sx) / m;
    double rss = 0;
    for (std::size_t k = 0; k < m; ++k) {
        const double e = y[k] - (slope * x[k] + icpt);
        rss += e * e;
    }
    return {slope, std::sqrt(rss / m)};
}

PhantomReport phantom_report(const OtocSeries& series, int j, const std::vector<LambdaRef>& refs,
                             double t_c_predicted, const PhantomOptions& opt) {
    PhantomReport rep;
    rep.j = j;
    rep.t_c_predicted = t_c_predicted;
    rep.refs = refs;

    const double oinf = o_infinity(series.n);
    const auto pts = series.unit_time_series(j);

    Boundary bc = series.protocol.find("pbc") != std::string::npos ? Boundary::pbc : Boundary::obc;
    const double horizon = pts.empty() ? 0.0 : pts.back().first;
    const auto spikes = predict_spike_times(series.n, series.i, j, bc, horizon + 1);

    std::vector<double> t, logd;
    double arrival = -1;
    for (const auto& [tt, oo] : pts) {
        const double d = std::abs(oo - oinf);
        if (arrival < 0 && oo != 0.0) arrival = tt;
        if (arrival < 0) continue;
        if (d < opt.underflow_floor) continue;
        bool near_spike = false;
        for (double ts : spikes)
            if (std::abs(tt - ts) < opt.spike_margin) near_spike = true;
        if (near_spike) continue;
        t.push_back(tt);
        logd.push_back(std::log(d));
    }

    // flat or never-arriving series (SWAP-like): nothing exponential to fit
    double spread = 0;
    for (double v : logd) spread = std::max(spread, std::abs(v - logd.front()));
    if (logd.empty() || spread < 1e-12) {
        rep.no_exponential_relaxation = true;
        return rep;
    }
    if (t.size() < std::size_t(2 * opt.min_points))
        throw std::runtime_error("phantom_report: series too short for two fit windows");

    // observed transition: largest local slope change of ln D
    double best = -1;
    for (std::size_t k = 1; k + 1 < logd.size(); ++k) {
        const double sl = (logd[k] - logd[k - 1]) / (t[k] - t[k - 1]);
        const double sr = (logd[k + 1] - logd[k]) / (t[k + 1] - t[k]);
        const double dd = std::abs(sr - sl);
        if (dd > best) {
            best = dd;
            rep.t_c_observed = t[k];
        }
    }

    std::vector<double> te, ye, tl, yl;
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (t[k] >= arrival + opt.window_margin && t[k] <= t_c_predicted - opt.window_margin) {
            te.push_back(t[k]);
            ye.push_back(logd[k]);
        } else if (t[k] >= t_c_predicted + opt.window_margin) {
            tl.push_back(t[k]);
            yl.push_back(logd[k]);
        }
    }
    if (te.size() < std::size_t(opt.min_points) || tl.size() < std::size_t(opt.min_points))
        throw std::runtime_error("phantom_report: fit windows too short");

    int drops = 0;
    for (std::size_t k = 0; k + 1 < logd.size(); ++k)
        if (logd[k + 1] > logd[k] + 1e-12) ++drops;
    rep.non_monotone = drops > 0;

    auto [se, re] = fit_line_slope(te, ye);
    auto [sl, rl] = fit_line_slope(tl, yl);
    rep.early_rate = -se;
    rep.late_rate = -sl;
    rep.early_residual = re;
    rep.late_residual = rl;

    auto nearest = [&](double rate) -> std::string {
        std::string best_name;
        double best_d = std::numeric_limits<double>::max();
        for (const auto& ref : refs) {
            const double d = std::abs(-std::log(ref.lambda2_abs) - rate);
            if (d < best_d) {
                best_d = d;
                best_name = ref.name;
            }
        }
        return best_name;
    };
    rep.early_match = nearest(rep.early_rate);
    rep.late_match = nearest(rep.late_rate);
    return rep;
}

std::string phantom_report_json(const PhantomReport& r) {
    nlohmann::json refs = nlohmann::json::array();
    for (const auto& ref : r.refs)
        refs.push_back({{"name", ref.name}, {"lambda2_abs", ref.lambda2_abs}, {"n", ref.n}});
    nlohmann::json out = {
        {"j", r.j},
        {"early_rate", r.early_rate},
        {"late_rate", r.late_rate},
        {"early_residual", r.early_residual},
        {"late_residual", r.late_residual},
        {"t_c_observed", r.t_c_observed},
        {"t_c_predicted", r.t_c_predicted},
        {"early_match", r.early_match},
        {"late_match", r.late_match},
        {"no_exponential_relaxation", r.no_exponential_relaxation},
        {"non_monotone", r.non_monotone},
        {"refs", refs},
        {"notes", r.notes},
    };
    return out.dump(2);
}

}  // namespace otoc
