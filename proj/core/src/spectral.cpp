#include "otoc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "otoc/phi_vector.hpp"
#include "otoc/propagator.hpp"

namespace otoc {

void apply_unit_time(PhiVector& phi, const Protocol& proto, const GateKernel& k) {
    if (proto.averaged()) {
        for (int s = 0; s < proto.averaging_count(); ++s) apply_averaged_step(phi, proto, k);
    } else {
        apply_period(phi, proto, k);
    }
}

SpectralResult lambda2_dense(const Protocol& proto, const GateKernel& k,
                             std::vector<std::complex<double>>* spectrum_out) {
    const int n = proto.n;
    if (n > 12) throw std::length_error("lambda2_dense: refusing to materialize beyond n = 12");
    const std::size_t dim = std::size_t{1} << n;

    Eigen::MatrixXd M(dim, dim);
    for (std::size_t c = 0; c < dim; ++c) {
        PhiVector phi = PhiVector::zero(n);
        phi.data[c] = 1.0;
        apply_unit_time(phi, proto, k);
        for (std::size_t r = 0; r < dim; ++r) M(long(r), long(c)) = phi.data[r];
    }

    Eigen::EigenSolver<Eigen::MatrixXd> es(M, /*computeEigenvectors=*/false);
    std::vector<std::complex<double>> ev(es.eigenvalues().data(),
                                         es.eigenvalues().data() + dim);
    if (spectrum_out) *spectrum_out = ev;

    // drop the two eigenvalues closest to 1 (e_0 and the stationary vector)
    for (int drop = 0; drop < 2; ++drop) {
        auto it = std::min_element(ev.begin(), ev.end(), [](auto a, auto b) {
            return std::abs(a - 1.0) < std::abs(b - 1.0);
        });
        ev.erase(it);
    }
    double l2 = 0;
    for (const auto& z : ev) l2 = std::max(l2, std::abs(z));

    SpectralResult res;
    res.lambda2_abs = l2;
    res.method = SpectralMethod::dense;
    res.n = n;
    res.protocol = proto.name();
    res.iterations = 0;
    res.residual = 0.0;
    res.gapless = std::abs(l2 - 1.0) < 1e-12;
    return res;
}

namespace {

std::vector<double> random_start(std::size_t dim, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::vector<double> v(dim);
    for (auto& x : v) x = g(rng);
    return v;
}

double norm2(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

SpectralResult lambda2_arnoldi(const Protocol& proto, const GateKernel& k,
                               const MatrixFreeOptions& opt) {
    const int n = proto.n;
    const std::size_t dim = std::size_t{1} << n;
    const int m = std::min<long>(opt.max_iters, long(dim) - 2);

    auto matvec = [&](const std::vector<double>& x) {
        PhiVector phi;
        phi.n = n;
        phi.data = x;
        apply_unit_time(phi, proto, k);
        phi.data[0] = 0.0;   // e_0 is an exact invariant coordinate
        return std::move(phi.data);
    };

    std::vector<double> v = random_start(dim, opt.seed);
    {   // difference filter removes the lambda = 1 eigenvectors
        auto mv = matvec(v);
        for (std::size_t s = 0; s < dim; ++s) v[s] = mv[s] - v[s];
        v[0] = 0.0;
    }
    const double v0n = norm2(v);
    for (auto& x : v) x /= v0n;

    std::vector<std::vector<double>> Q{v};
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(m + 1, m);
    int built = 0;
    for (int j = 0; j < m; ++j) {
        std::vector<double> w = matvec(Q[j]);
        for (int pass = 0; pass < 2; ++pass) {
            for (int i = 0; i <= j; ++i) {
                const double h = dot(Q[i], w);
                H(i, j) += h;
                for (std::size_t s = 0; s < dim; ++s) w[s] -= h * Q[i][s];
            }
        }
        const double hnext = norm2(w);
        H(j + 1, j) = hnext;
        built = j + 1;
        if (hnext < 1e-13) break;
        for (auto& x : w) x /= hnext;
        Q.push_back(std::move(w));
    }

    Eigen::MatrixXd Hm = H.topLeftCorner(built, built);
    Eigen::EigenSolver<Eigen::MatrixXd> es(Hm, /*computeEigenvectors=*/true);
    const double hlast = (built < m) ? 0.0 : H(built, built - 1);

    SpectralResult res;
    res.method = SpectralMethod::arnoldi;
    res.n = n;
    res.protocol = proto.name();
    res.iterations = built;

    double best = 0, best_res = 0;
    bool found = false;
    for (int i = 0; i < built; ++i) {
        const std::complex<double> theta = es.eigenvalues()(i);
        if (std::abs(theta - 1.0) < 1e-6) continue;   // defective lambda = 1 cluster
        const double resid = hlast * std::abs(es.eigenvectors()(built - 1, i));
        if (resid > 1e-6 * std::max(1.0, std::abs(theta))) continue;
        if (std::abs(theta) > best) {
            best = std::abs(theta);
            best_res = resid;
            found = true;
        }
    }
    res.converged = found;
    res.lambda2_abs = best;
    res.residual = best_res;
    res.gapless = found && std::abs(best - 1.0) < 1e-12;
    return res;
}

SpectralResult lambda2_ratio(const Protocol& proto, const GateKernel& k,
                             const MatrixFreeOptions& opt) {
    const int n = proto.n;
    const std::size_t dim = std::size_t{1} << n;

    auto matvec = [&](std::vector<double>& x) {
        PhiVector phi;
        phi.n = n;
        phi.data = std::move(x);
        apply_unit_time(phi, proto, k);
        phi.data[0] = 0.0;
        x = std::move(phi.data);
    };

    std::vector<double> d = random_start(dim, opt.seed);
    {
        std::vector<double> before = d;
        matvec(d);
        for (std::size_t s = 0; s < dim; ++s) d[s] -= before[s];
        d[0] = 0.0;
    }
    double nd = norm2(d);
    for (auto& x : d) x /= nd;

    std::vector<double> hist;
    hist.reserve(opt.max_iters);
    SpectralResult res;
    res.method = SpectralMethod::difference_ratio;
    res.n = n;
    res.protocol = proto.name();

    for (int it = 0; it < opt.max_iters; ++it) {
        matvec(d);
        const double r = norm2(d);
        for (auto& x : d) x /= r;
        hist.push_back(r);
    }
    res.iterations = int(hist.size());
    res.converged = false;

    if (hist.size() < 12) {
        res.lambda2_abs = hist.empty() ? 0.0 : hist.back();
        res.residual = 1.0;
        return res;
    }

    // Rounding noise re-grows the (defective) lambda = 1 sector, so late
    // ratios drift back to 1 once the true signal has decayed; only the
    // stretch before that takeover is usable.
    std::size_t usable = hist.size();
    bool dipped = false;
    for (std::size_t k = 0; k < hist.size(); ++k) {
        if (hist[k] < 0.99) dipped = true;
        if (dipped && std::abs(hist[k] - 1.0) < 1e-6) {
            usable = k;
            break;
        }
    }

    auto first_plateau = [&](double rel_tol) -> bool {
        for (std::size_t a = 0; a + 10 <= usable; ++a) {
            const auto [lo, hi] = std::minmax_element(hist.begin() + a, hist.begin() + a + 10);
            double mean = 0;
            for (std::size_t b = a; b < a + 10; ++b) mean += hist[b];
            mean /= 10;
            if ((*hi - *lo) / mean < rel_tol) {
                res.lambda2_abs = mean;
                res.residual = *hi - *lo;
                res.converged = true;
                res.gapless = std::abs(mean - 1.0) < 1e-12;
                return true;
            }
        }
        return false;
    };
    if (first_plateau(std::max(opt.tol * 10, 1e-12))) return res;
    if (first_plateau(1e-4)) return res;

    // oscillatory (complex pair): geometric mean over the flattest
    // log-window, flagged for the caller
    double best_spread = 1e300, best_val = hist[usable > 0 ? usable - 1 : 0];
    for (std::size_t a = 0; a + 10 <= usable; ++a) {
        double lmean = 0, lmin = 1e300, lmax = -1e300;
        for (std::size_t b = a; b < a + 10; ++b) {
            const double lv = std::log(hist[b]);
            lmean += lv;
            lmin = std::min(lmin, lv);
            lmax = std::max(lmax, lv);
        }
        if (lmax - lmin < best_spread) {
            best_spread = lmax - lmin;
            best_val = std::exp(lmean / 10);
        }
    }
    res.lambda2_abs = best_val;
    res.residual = best_spread;
    res.oscillatory = true;
    return res;
}

}  // namespace

SpectralResult lambda2_matrix_free(const Protocol& proto, const GateKernel& k,
                                   const MatrixFreeOptions& opt) {
    if (opt.method == SpectralMethod::difference_ratio) return lambda2_ratio(proto, k, opt);
    return lambda2_arnoldi(proto, k, opt);
}

const char* to_string(SpectralMethod m) {
    switch (m) {
        case SpectralMethod::dense: return "dense";
        case SpectralMethod::arnoldi: return "arnoldi";
        case SpectralMethod::difference_ratio: return "difference_ratio";
    }
    return "?";
}

std::string spectral_result_json(const SpectralResult& r, const std::string& gate_text) {
    nlohmann::json out = {
        {"lambda2_abs", r.lambda2_abs}, {"method", to_string(r.method)},
        {"n", r.n},                     {"protocol", r.protocol},
        {"gate", gate_text},            {"iterations", r.iterations},
        {"residual", r.residual},       {"gapless", r.gapless},
        {"oscillatory", r.oscillatory}, {"converged", r.converged},
    };
    return out.dump(2);
}

}  // namespace otoc
