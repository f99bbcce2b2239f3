#include "otoc/montecarlo.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

namespace otoc {

std::string RandomnessScenario::name() const {
    std::string s = space_diff ? "diffx" : "homx";
    s += time_diff ? "_difft" : "_homt";
    if (!space_diff && hom_x_per_step) s += "_step";
    return s;
}

RandomnessScenario RandomnessScenario::parse(const std::string& text) {
    RandomnessScenario s;
    if (text == "diffx_difft")
        s = {true, true, false};
    else if (text == "diffx_homt")
        s = {true, false, false};
    else if (text == "homx_difft")
        s = {false, true, false};
    else if (text == "homx_homt")
        s = {false, false, false};
    else if (text == "homx_difft_step")
        s = {false, true, true};
    else
        throw std::invalid_argument("unknown scenario \"" + text +
                                    "\" (diffx_difft|diffx_homt|homx_difft|homx_homt|homx_difft_step)");
    return s;
}

PauliCoeffVector PauliCoeffVector::initial(int n, int site, int letter) {
    if (n < 2 || n > 15) throw std::invalid_argument("PauliCoeffVector supports 2 <= n <= 15");
    if (site < 1 || site > n) throw std::invalid_argument("initial site out of range");
    if (letter < 1 || letter > 3) throw std::invalid_argument("initial letter must be 1..3");
    PauliCoeffVector v;
    v.n = n;
    v.coeffs.assign(std::size_t{1} << (2 * n), 0.0);
    std::size_t idx = std::size_t(letter) << (2 * (site - 1));
    v.coeffs[idx] = 1.0;
    return v;
}

double PauliCoeffVector::norm_sq() const {
    double s = 0;
    for (double c : coeffs) s += c * c;
    return s;
}

namespace {
std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}
}  // namespace

KeyedRng::KeyedRng(std::uint64_t seed, std::uint64_t time_key, std::uint64_t pos_key) {
    state_ = splitmix(splitmix(splitmix(seed) ^ time_key) ^ (pos_key * 0x100000001b3ull));
}

std::uint64_t KeyedRng::next_u64() {
    state_ = splitmix(state_);
    return state_;
}

double KeyedRng::uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

double KeyedRng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * M_PI * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * M_PI * u2);
}

Eigen::Matrix4cd build_w(const CanonicalGate& gate) {
    using c64 = std::complex<double>;
    Eigen::Matrix2cd X, Y, Z;
    X << 0, 1, 1, 0;
    Y << 0, c64(0, -1), c64(0, 1), 0;
    Z << 1, 0, 0, -1;
    auto factor = [](const Eigen::Matrix2cd& P, double a) {
        Eigen::Matrix4cd PP = Eigen::kroneckerProduct(P, P).eval();
        const double th = M_PI * a / 4.0;
        return (std::cos(th) * Eigen::Matrix4cd::Identity() + c64(0, std::sin(th)) * PP).eval();
    };
    return factor(X, gate.ax()) * factor(Y, gate.ay()) * factor(Z, gate.az());
}

Eigen::Matrix2cd sample_haar_u2(KeyedRng& rng) {
    using c64 = std::complex<double>;
    Eigen::Matrix2cd g;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) g(r, c) = c64(rng.normal(), rng.normal()) * M_SQRT1_2;
    // Gram-Schmidt with positive diagonal is Haar for Ginibre input
    Eigen::Vector2cd c0 = g.col(0);
    c0 /= c0.norm();
    Eigen::Vector2cd c1 = g.col(1) - (c0.adjoint() * g.col(1))(0, 0) * c0;
    c1 /= c1.norm();
    Eigen::Matrix2cd u;
    u.col(0) = c0;
    u.col(1) = c1;
    return u;
}

namespace {
Eigen::Matrix2cd pauli2(int a) {
    using c64 = std::complex<double>;
    Eigen::Matrix2cd m;
    switch (a) {
        case 0: m << 1, 0, 0, 1; break;
        case 1: m << 0, 1, 1, 0; break;
        case 2: m << 0, c64(0, -1), c64(0, 1), 0; break;
        default: m << 1, 0, 0, -1; break;
    }
    return m;
}
}  // namespace

Ptm16 two_qubit_ptm(const Eigen::Matrix4cd& g) {
    std::array<Eigen::Matrix4cd, 16> paulis;
    for (int a = 0; a < 16; ++a)
        paulis[a] = Eigen::kroneckerProduct(pauli2(a / 4), pauli2(a % 4)).eval();
    Ptm16 r;
    const Eigen::Matrix4cd gdag = g.adjoint();
    for (int a = 0; a < 16; ++a) {
        const Eigen::Matrix4cd left = paulis[a] * g;
        for (int b = 0; b < 16; ++b)
            r(a, b) = 0.25 * (left * paulis[b] * gdag).trace().real();
    }
    return r;
}

void apply_ptm(PauliCoeffVector& v, const Ptm16& r, int p, int q) {
    if (p == q || p < 1 || q < 1 || p > v.n || q > v.n)
        throw std::invalid_argument("apply_ptm needs two distinct in-range sites");
    const int dp = p - 1, dq = q - 1;
    const int dlo = dp < dq ? dp : dq, dhi = dp < dq ? dq : dp;
    const std::size_t plo = std::size_t{1} << (2 * dlo);
    const std::size_t phi = std::size_t{1} << (2 * dhi);
    const std::size_t pp = std::size_t{1} << (2 * dp), pq = std::size_t{1} << (2 * dq);
    const std::ptrdiff_t groups = std::ptrdiff_t(v.coeffs.size() >> 4);
    double* c = v.coeffs.data();

#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t g = 0; g < groups; ++g) {
        // insert two zero base-4 digits at dlo and dhi
        std::size_t k = std::size_t(g);
        std::size_t low = k % plo;
        std::size_t rest = k / plo;
        std::size_t mid = rest % (phi / (plo * 4));
        std::size_t high = rest / (phi / (plo * 4));
        const std::size_t base = high * phi * 4 + mid * plo * 4 + low;

        double in[16], out[16];
        for (int lp = 0; lp < 4; ++lp)
            for (int lq = 0; lq < 4; ++lq) in[4 * lp + lq] = c[base + lp * pp + lq * pq];
        for (int a = 0; a < 16; ++a) {
            double s = 0;
            for (int b = 0; b < 16; ++b) s += r(a, b) * in[b];
            out[a] = s;
        }
        for (int lp = 0; lp < 4; ++lp)
            for (int lq = 0; lq < 4; ++lq) c[base + lp * pp + lq * pq] = out[4 * lp + lq];
    }
}

namespace {

/// Per-site class-0 sums via hierarchical reduction; acc[j-1] holds
/// sum of c^2 over strings with the identity letter at site j.
void site_identity_sums(const std::vector<double>& c, int n, std::vector<double>& acc,
                        double* total_out) {
    std::vector<double> cur;
    cur.reserve(c.size() / 4);
    acc.assign(n, 0.0);
    // level 1: square and reduce over site 1's digit
    for (std::size_t g = 0; g < c.size() / 4; ++g) {
        const double v0 = c[4 * g] * c[4 * g], v1 = c[4 * g + 1] * c[4 * g + 1],
                     v2 = c[4 * g + 2] * c[4 * g + 2], v3 = c[4 * g + 3] * c[4 * g + 3];
        acc[0] += v0;
        cur.push_back(v0 + v1 + v2 + v3);
    }
    for (int j = 2; j <= n; ++j) {
        const std::size_t m = cur.size() / 4;
        for (std::size_t g = 0; g < m; ++g) {
            acc[j - 1] += cur[4 * g];
            cur[g] = cur[4 * g] + cur[4 * g + 1] + cur[4 * g + 2] + cur[4 * g + 3];
        }
        cur.resize(m);
    }
    *total_out = cur[0];
}

}  // namespace

OtocSeries run_realization(const Protocol& proto, const CanonicalGate& gate,
                           const RandomnessScenario& scen, int i, long horizon_ticks,
                           std::uint64_t seed, const RealizationOptions& opt) {
    if (proto.averaged())
        throw std::invalid_argument("run_realization needs a deterministic protocol");
    if (proto.n > opt.max_qubits)
        throw std::length_error("run_realization: n exceeds the coefficient budget cap " +
                                std::to_string(opt.max_qubits));

    const Eigen::Matrix4cd w = build_w(gate);
    PauliCoeffVector v = PauliCoeffVector::initial(proto.n, i, opt.alpha_letter);

    OtocSeries s;
    s.n = proto.n;
    s.i = i;
    s.ticks_per_period = proto.ticks_per_period();
    s.protocol = proto.name();

    std::vector<double> acc;
    double total = 0;
    auto record = [&](long tick) {
        site_identity_sums(v.coeffs, v.n, acc, &total);
        if (std::abs(total - 1.0) > opt.norm_drift_tol)
            throw std::runtime_error("Pauli-coefficient norm drifted beyond tolerance: " +
                                     std::to_string(total));
        s.ticks.push_back(tick);
        std::vector<double> row(proto.n);
        for (int j = 1; j <= proto.n; ++j) row[j - 1] = (4.0 / 3.0) * (total - acc[j - 1]);
        s.values.push_back(std::move(row));
    };
    record(0);

    std::uint64_t step_counter = 0;
    for (long tick = 1; tick <= horizon_ticks; ++tick) {
        const auto& layer = proto.layers[std::size_t(tick - 1) % proto.layers.size()];
        for (const auto& pr : layer) {
            ++step_counter;
            auto draw = [&](int site) {
                std::uint64_t tkey = 0;
                if (scen.time_diff) {
                    if (scen.space_diff)
                        tkey = step_counter;
                    else
                        tkey = scen.hom_x_per_step ? step_counter : std::uint64_t(tick);
                }
                const std::uint64_t pkey = scen.space_diff ? std::uint64_t(site) : 0;
                KeyedRng rng(seed, tkey, pkey);
                return sample_haar_u2(rng);
            };
            const Eigen::Matrix2cd vp = draw(pr.p);
            const Eigen::Matrix2cd vq = scen.space_diff ? draw(pr.q) : vp;
            const Eigen::Matrix4cd g = w * Eigen::kroneckerProduct(vp, vq).eval();
            apply_ptm(v, two_qubit_ptm(g), pr.p, pr.q);
        }
        record(tick);
    }
    return s;
}

}  // namespace otoc
