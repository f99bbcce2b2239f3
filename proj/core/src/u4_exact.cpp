#include "otoc/u4_exact.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace otoc {

namespace {

template <class T>
T int_pow(T base, int e) {
    T out(1);
    while (e-- > 0) out *= base;
    return out;
}

int floor_div2(int a) { return a >= 0 ? a / 2 : -((-a + 1) / 2); }

int ring_mod(int a, int n) {
    int r = a % n;
    return r < 0 ? r + n : r;
}

/// Two-wall endpoint DP on the ring: state (l, w) = leftmost up qudit and
/// width; each wall steps +-1 per row with weight q/(q^2+1); width 0 kills
/// the configuration, width n freezes it with top factor q^n.
template <class T>
T dw_pbc_impl(int n, int i, int j, int tau, int q) {
    const T pt = T(q) / T(q * q + 1);
    const T pt2 = pt * pt;
    const int l0 = (i % 2 == 1) ? i : i - 1;

    std::vector<std::vector<T>> live(n + 1, std::vector<T>(n + 1, T(0)));
    live[l0][2] = T(1);
    T absorbed(0);

    for (int step = 0; step < tau - 1; ++step) {
        std::vector<std::vector<T>> next(n + 1, std::vector<T>(n + 1, T(0)));
        for (int l = 1; l <= n; ++l) {
            for (int w = 1; w < n; ++w) {
                if (live[l][w] == T(0)) continue;
                const T ww = live[l][w] * pt2;
                for (int dl : {-1, 1}) {
                    for (int dr : {-1, 1}) {
                        const int w2 = w + dr - dl;
                        if (w2 <= 0) continue;
                        if (w2 >= n) {
                            absorbed += ww;
                            continue;
                        }
                        const int l2 = ring_mod(l + dl - 1, n) + 1;
                        next[l2][w2] += ww;
                    }
                }
            }
        }
        live.swap(next);
    }

    std::vector<T> qpow(n + 1, T(1));
    for (int w = 1; w <= n; ++w) qpow[w] = qpow[w - 1] * T(q);
    T tot = absorbed * qpow[n];
    for (int l = 1; l <= n; ++l)
        for (int w = 1; w < n; ++w) {
            if (live[l][w] == T(0)) continue;
            if (ring_mod(j - l, n) < w) tot += live[l][w] * qpow[w];
        }
    const T pref = T(q * q) / T(std::int64_t(q) * q * q * q - 1);
    return pref * tot;
}

/// Exact OBC evaluation: full wall configurations per gate row plus the
/// two edge-wire bits that even rows leave untouched. Each up gate is
/// expanded into its bit pairs (01, 10 with weight p; 11 with weight
/// 1 - 2p), and the next row is read off those bits.
template <class T>
T dw_obc_impl(int n, int i, int j, int tau, int q) {
    const int m_odd = n / 2, m_even = n / 2 - 1;
    const T p = T(1) / T(q * q + 1);
    const T e11 = T(q * q - 1) / T(q * q + 1);
    const T up_marginal = T(q * q) / T(q * q + 1);

    const int gi = (i - 1) / 2;
    // odd-row states: bitmask over m_odd gates; even-row states add wires
    std::vector<T> odd_state(std::size_t{1} << m_odd, T(0));
    std::vector<T> even_state;
    odd_state[std::size_t{1} << gi] = T(1);
    bool on_odd = true;

    struct Choice {
        std::uint64_t bits;
        int which;   // 0: down (both 0), 1..3: up expansions
    };

    for (int row = 2; row <= tau; ++row) {
        const bool to_even = on_odd;
        if (to_even) {
            std::vector<T> next((std::size_t{1} << m_even) * 4, T(0));
            const std::size_t ncfg = std::size_t{1} << m_odd;
            for (std::size_t cfg = 0; cfg < ncfg; ++cfg) {
                if (odd_state[cfg] == T(0)) continue;
                const T base_wt = odd_state[cfg];
                // depth-first over per-gate bit expansions
                struct Frame {
                    int g;
                    std::uint64_t bits;   // bit x set = qudit x+1 carries 1
                    T wt;
                };
                std::vector<Frame> stack{{0, 0, base_wt}};
                while (!stack.empty()) {
                    Frame f = stack.back();
                    stack.pop_back();
                    if (f.g == m_odd) {
                        std::uint64_t ncfgbits = 0;
                        for (int m = 0; m < m_even; ++m) {
                            const std::uint64_t mask =
                                (std::uint64_t{1} << (2 * m + 1)) | (std::uint64_t{1} << (2 * m + 2));
                            if (f.bits & mask) ncfgbits |= std::uint64_t{1} << m;
                        }
                        const std::size_t wl = (f.bits >> 0) & 1;
                        const std::size_t wr = (f.bits >> (n - 1)) & 1;
                        next[ncfgbits | (wl << m_even) | (wr << (m_even + 1))] += f.wt;
                        continue;
                    }
                    const int g = f.g;
                    if (!(cfg >> g & 1)) {
                        stack.push_back({g + 1, f.bits, f.wt});
                    } else {
                        const std::uint64_t bl = std::uint64_t{1} << (2 * g);
                        const std::uint64_t br = std::uint64_t{1} << (2 * g + 1);
                        stack.push_back({g + 1, f.bits | br, f.wt * p});
                        stack.push_back({g + 1, f.bits | bl, f.wt * p});
                        stack.push_back({g + 1, f.bits | bl | br, f.wt * e11});
                    }
                }
            }
            even_state.swap(next);
        } else {
            std::vector<T> next(std::size_t{1} << m_odd, T(0));
            const std::size_t ncfg = std::size_t{1} << m_even;
            for (std::size_t wcode = 0; wcode < 4; ++wcode) {
                const std::uint64_t wire_bits =
                    ((wcode & 1) ? std::uint64_t{1} : 0) |
                    ((wcode & 2) ? (std::uint64_t{1} << (n - 1)) : 0);
                for (std::size_t cfg = 0; cfg < ncfg; ++cfg) {
                    const T& wt0 = even_state[cfg | (wcode << m_even)];
                    if (wt0 == T(0)) continue;
                    struct Frame {
                        int g;
                        std::uint64_t bits;
                        T wt;
                    };
                    std::vector<Frame> stack{{0, wire_bits, wt0}};
                    while (!stack.empty()) {
                        Frame f = stack.back();
                        stack.pop_back();
                        if (f.g == m_even) {
                            std::uint64_t ncfgbits = 0;
                            for (int m = 0; m < m_odd; ++m) {
                                const std::uint64_t mask =
                                    (std::uint64_t{1} << (2 * m)) | (std::uint64_t{1} << (2 * m + 1));
                                if (f.bits & mask) ncfgbits |= std::uint64_t{1} << m;
                            }
                            next[ncfgbits] += f.wt;
                            continue;
                        }
                        const int g = f.g;
                        if (!(cfg >> g & 1)) {
                            stack.push_back({g + 1, f.bits, f.wt});
                        } else {
                            // even gate g covers qudits (2g+2, 2g+3), bits 2g+1 / 2g+2
                            const std::uint64_t bl = std::uint64_t{1} << (2 * g + 1);
                            const std::uint64_t br = std::uint64_t{1} << (2 * g + 2);
                            stack.push_back({g + 1, f.bits | br, f.wt * p});
                            stack.push_back({g + 1, f.bits | bl, f.wt * p});
                            stack.push_back({g + 1, f.bits | bl | br, f.wt * e11});
                        }
                    }
                }
            }
            odd_state.swap(next);
        }
        on_odd = !on_odd;
    }

    const T pref = T(q * q) / T(q * q - 1);
    T tot(0);
    if (on_odd) {
        const int gj = (j - 1) / 2;
        for (std::size_t cfg = 0; cfg < odd_state.size(); ++cfg)
            if (odd_state[cfg] != T(0) && (cfg >> gj & 1)) tot += odd_state[cfg];
        tot *= up_marginal;
    } else {
        if (j == 1 || j == n) {
            const int wire_bit = (j == 1) ? 0 : 1;
            for (std::size_t idx = 0; idx < even_state.size(); ++idx)
                if (even_state[idx] != T(0) && (idx >> (m_even + wire_bit) & 1))
                    tot += even_state[idx];
        } else {
            const int gj = (j % 2 == 0) ? (j - 2) / 2 : (j - 3) / 2;
            T acc(0);
            for (std::size_t idx = 0; idx < even_state.size(); ++idx)
                if (even_state[idx] != T(0) && (idx >> gj & 1)) acc += even_state[idx];
            tot = acc * up_marginal;
        }
    }
    return pref * tot;
}

template <class T>
T dw_dispatch(int n, int i, int j, int tau, int q, Boundary bc) {
    if (n < 4 || n % 2 != 0) throw std::invalid_argument("dw_otoc needs even n >= 4");
    if (i < 1 || i > n || j < 1 || j > n) throw std::invalid_argument("dw_otoc site out of range");
    if (q < 2) throw std::invalid_argument("dw_otoc needs q >= 2");
    if (tau < 0) throw std::invalid_argument("dw_otoc needs tau >= 0");
    if (tau == 0) {
        if (j == i) return T(q * q) / T(q * q - 1);
        return T(0);
    }
    if (bc == Boundary::pbc) return dw_pbc_impl<T>(n, i, j, tau, q);
    return dw_obc_impl<T>(n, i, j, tau, q);
}

bool outside_cone(int n, int i, int j, int tau, Boundary bc) {
    const int l0 = (i % 2 == 1) ? i : i - 1;
    const int lo = l0 - (tau - 1), hi = l0 + 1 + (tau - 1);
    if (bc == Boundary::obc) return j < std::max(1, lo) || j > std::min(n, hi);
    if (hi - lo + 1 >= n) return false;
    return ring_mod(j - lo, n) >= hi - lo + 1;
}

}  // namespace

double dw_otoc(int n, int i, int j, int tau, int q, Boundary bc, bool* causal_zero) {
    if (causal_zero) *causal_zero = tau > 0 && outside_cone(n, i, j, tau, bc);
    return dw_dispatch<double>(n, i, j, tau, q, bc);
}

BigRational dw_otoc_exact(int n, int i, int j, int tau, int q, Boundary bc) {
    return dw_dispatch<BigRational>(n, i, j, tau, q, bc);
}

double binomial_cdf(int n, int a, double p) {
    if (a < 0) return 0.0;
    if (a >= n) return 1.0;
    double term = std::pow(1.0 - p, n);   // k = 0
    double sum = term;
    for (int k = 1; k <= a; ++k) {
        term *= double(n - k + 1) / double(k) * (p / (1.0 - p));
        sum += term;
    }
    return sum < 1.0 ? sum : 1.0;
}

double binomial_tail(int n, int a, double p) {
    if (a >= n) return 0.0;
    if (a < 0) return 1.0;
    const int k0 = a + 1;
    double term = std::exp(std::lgamma(n + 1.0) - std::lgamma(k0 + 1.0) -
                           std::lgamma(n - k0 + 1.0) + (n - k0) * std::log1p(-p) +
                           k0 * std::log(p));
    double sum = term;
    for (int k = k0 + 1; k <= n; ++k) {
        term *= double(n - k + 1) / double(k) * (p / (1.0 - p));
        sum += term;
    }
    return sum;
}

double otoc_u4_infinite_deficit(int delta_j, int tau, int q) {
    if (tau < 1) throw std::invalid_argument("otoc_u4_infinite_deficit needs tau >= 1");
    if (delta_j < 0) delta_j = -delta_j;
    const QuditDim d(q);
    const double p = d.p(), zeta = d.zeta();
    const int m = tau - 1;
    const double t1 = binomial_tail(m, floor_div2(tau - delta_j - 1), p);
    const double t2 = binomial_tail(m, floor_div2(tau + delta_j - 1), p);
    const double t3 = binomial_tail(m, floor_div2(tau - delta_j - 3), p);
    const double t4 = binomial_tail(m, floor_div2(tau + delta_j - 3), p);
    // O - 1 = zeta (g1 g2 - 1) + (1 - zeta)(g3 g4 - 1) with g = 1 - tail
    return -zeta * (t1 + t2 - t1 * t2) - (1.0 - zeta) * (t3 + t4 - t3 * t4);
}

double otoc_u4_infinite(int delta_j, int tau, int q) {
    if (tau < 1) throw std::invalid_argument("otoc_u4_infinite needs tau >= 1");
    if (delta_j < 0) delta_j = -delta_j;
    const QuditDim d(q);
    const double p = d.p(), zeta = d.zeta();
    const int m = tau - 1;
    const double g1 = binomial_cdf(m, floor_div2(tau - delta_j - 1), p);
    const double g2 = binomial_cdf(m, floor_div2(tau + delta_j - 1), p);
    const double g3 = binomial_cdf(m, floor_div2(tau - delta_j - 3), p);
    const double g4 = binomial_cdf(m, floor_div2(tau + delta_j - 3), p);
    return zeta * g1 * g2 + (1.0 - zeta) * g3 * g4;
}

double u4_asymptotic_rate(int q) {
    if (q < 2) throw std::invalid_argument("u4_asymptotic_rate needs q >= 2");
    return 2.0 * std::log((1.0 + double(q) * q) / (2.0 * q));
}

}  // namespace otoc
