#include <cmath>
#include <map>
#include <sstream>
#include <vector>

#include "otoc/u4_exact.hpp"

namespace otoc {
namespace walls {

namespace {
BigInt binom(int n, int k) {
    if (k < 0 || k > n || n < 0) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (int t = 0; t < k; ++t) {
        r *= (n - t);
        r /= (t + 1);
    }
    return r;
}
}  // namespace

BigInt ballot_paths(int k, int u) {
    if (k == 0) return u == 0 ? 1 : 0;
    if (u <= 0 || u > k || (k - u) % 2 != 0) return 0;
    return BigInt(u) * binom(k, (k + u) / 2) / k;
}

BigInt from_top_paths(int k, int e, int top) {
    if (e <= 0 || k < 0) return 0;
    const int d = k + e - top;
    if (((d % 2) + 2) % 2 != 0) return 0;
    if (d < 0) return 0;
    return binom(k, d / 2) - binom(k, (k + e + top) / 2);
}

BigInt first_passage(int k, int top) {
    static std::map<std::pair<int, int>, BigInt> memo;
    const auto key = std::make_pair(k, top);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    // renewal: ballot = sum over first passage time k' of FP(k') * (top -> top)
    BigInt fp = ballot_paths(k, top);
    for (int kp = top; kp < k; ++kp) {
        const BigInt f = first_passage(kp, top);
        if (f != 0) fp -= f * from_top_paths(k - kp, top, top);
    }
    memo[key] = fp;
    return fp;
}

BigInt delta_correction(int twok, int top) {
    static std::map<std::pair<int, int>, BigInt> memo;
    const auto key = std::make_pair(twok, top);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    // renewal inverse of the top -> top return counts R:
    // Delta(2k) = R(2k) - sum_{0 < 2r < 2k} R(2r) Delta(2k - 2r)
    BigInt d = from_top_paths(twok, top, top);
    for (int r = 2; r < twok; r += 2) d -= from_top_paths(r, top, top) * delta_correction(twok - r, top);
    memo[key] = d;
    return d;
}

BigInt delta_correction_literal(int twok, int top) {
    // signed sum over ordered compositions of k into positive parts:
    // sum (-1)^(parts+1) prod_p R(2 r_p)
    const int k = twok / 2;
    BigInt total = 0;
    // iterate compositions via bitmask of k-1 separators
    for (unsigned mask = 0; mask < (1u << (k - 1)); ++mask) {
        BigInt prod = 1;
        int part = 1, parts = 0;
        for (int pos = 0; pos < k - 1; ++pos) {
            if (mask & (1u << pos)) {
                prod *= from_top_paths(2 * part, top, top);
                ++parts;
                part = 1;
            } else {
                ++part;
            }
        }
        prod *= from_top_paths(2 * part, top, top);
        ++parts;
        total += (parts % 2 == 1) ? prod : -prod;
    }
    return total;
}

BigInt pair_paths(int steps, int u0, int v0, int u1, int v1) {
    return binom(steps, u1 - u0) * binom(steps, v1 - v0) -
           binom(steps, v1 - u0) * binom(steps, u1 - v0);
}

}  // namespace walls

namespace {

BigRational big_pow(BigRational b, int e) {
    BigRational r = 1;
    while (e-- > 0) r *= b;
    return r;
}

void check_against_dp(const char* what, int n, int j, int tau, int q, Boundary bc, double value,
                      double tol) {
    const double exact = dw_otoc(n, 1, j, tau, q, bc);
    if (std::abs(value - exact) > tol) {
        std::ostringstream msg;
        msg.precision(16);
        msg << what << "(n=" << n << ", j=" << j << ", tau=" << tau << ", q=" << q << ") = " << value
            << " disagrees with the exact domain-wall evaluation " << exact
            << "; the transcribed formula does not cover this regime";
        throw FormulaInterpretationError(msg.str());
    }
}

}  // namespace

double obc_closed_form(int n, int j, int tau, int q, double tol) {
    if (n < 4 || n % 2 != 0) throw std::invalid_argument("obc_closed_form needs even n >= 4");
    if (tau < 1 || j < 1 || j > n) throw std::invalid_argument("obc_closed_form argument range");
    const int top = n;   // ballot coordinate of a saturated wall
    const BigRational pt = BigRational(q) / BigRational(q * q + 1);
    const BigRational pref = BigRational(q * q) / BigRational(std::int64_t(q) * q * q * q - 1);
    const BigRational bq(q);

    // saturated walls, frozen with weight q^n after first passage at row R
    BigRational sat = 0;
    for (int R = 2; R <= tau; ++R) {
        const BigInt fp = walls::first_passage(R + 1, top);
        if (fp != 0) sat += BigRational(fp) * big_pow(pt, R - 1);
    }
    sat *= big_pow(bq, n);

    // live wall at ballot position u, never saturated
    BigRational live = 0;
    for (int u = j; u <= n - 1; ++u) {
        BigInt count = walls::ballot_paths(tau + 1, u);
        for (int t0 = top; t0 <= tau; ++t0) {
            const BigInt fp = walls::first_passage(t0, top);
            if (fp != 0) count -= fp * walls::from_top_paths(tau + 1 - t0, u, top);
        }
        if (count != 0) live += BigRational(count) * big_pow(bq, u);
    }
    live *= big_pow(pt, tau - 1);

    const double value = double(BigRational(pref * (sat + live)).convert_to<double>());
    check_against_dp("obc_closed_form", n, j, tau, q, Boundary::obc, value, tol);
    return value;
}

double pbc_recursion(int n, int j, int tau, int q, double tol) {
    if (n < 4 || n % 2 != 0) throw std::invalid_argument("pbc_recursion needs even n >= 4");
    if (tau < 1 || j < 1 || j > n) throw std::invalid_argument("pbc_recursion argument range");
    const int half = n / 2;
    const BigRational pt = BigRational(q) / BigRational(q * q + 1);
    const BigRational pref = BigRational(q * q) / BigRational(std::int64_t(q) * q * q * q - 1);
    const BigRational bq(q);

    // Nhat[tc][u1]: wall pairs from (0,1) first reaching separation n/2 at
    // row tc with left coordinate u1
    std::vector<std::vector<BigInt>> nhat(tau + 1);
    for (int tc = half; tc <= tau; ++tc) {
        nhat[tc].assign(std::max(0, tc - half) + 1, 0);
        for (int u1 = 0; u1 <= tc - half; ++u1) {
            BigInt v = walls::pair_paths(tc - 1, 0, 1, u1, u1 + half);
            for (int t0 = half; t0 < tc; ++t0)
                for (int up = 0; up <= t0 - half; ++up)
                    if (nhat[t0][up] != 0)
                        v -= nhat[t0][up] *
                             walls::pair_paths(tc - t0, up, up + half, u1, u1 + half);
            nhat[tc][u1] = v;
        }
    }

    // frozen (saturated before the final row)
    BigRational sat = 0;
    for (int tc = half; tc <= tau - 1; ++tc)
        for (int u = 0; u <= tc - half; ++u)
            if (nhat[tc][u] != 0) sat += BigRational(nhat[tc][u]) * big_pow(pt, 2 * tc - 2);
    sat *= big_pow(bq, n);

    // live pairs (plus the just-saturating v = u + n/2 endpoint)
    BigRational live = 0;
    const int dj = ((j - 1) % n + n) % n;   // i = 1
    for (int u = 0; u <= tau - 1; ++u) {
        // wall qudit coordinate of the left edge at the final row
        const int L = 1 + 2 * u - (tau - 1);
        const int need = ((j - L) % n + n) % n;   // covered qudits needed: width > need
        const int vmin = std::max(u + (need + 2) / 2, u + 1);
        (void)dj;
        for (int v = vmin; v <= u + half; ++v) {
            BigInt count = walls::pair_paths(tau - 1, 0, 1, u, v);
            for (int t0 = half; t0 <= tau - 1; ++t0)
                for (int up = 0; up <= t0 - half; ++up)
                    if (nhat[t0][up] != 0)
                        count -= nhat[t0][up] * walls::pair_paths(tau - t0, up, up + half, u, v);
            if (count != 0) live += BigRational(count) * big_pow(bq, 2 * (v - u));
        }
    }
    live *= big_pow(pt, 2 * tau - 2);

    const double value = double(BigRational(pref * (sat + live)).convert_to<double>());
    check_against_dp("pbc_recursion", n, j, tau, q, Boundary::pbc, value, tol);
    return value;
}

}  // namespace otoc
