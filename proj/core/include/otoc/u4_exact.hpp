#pragma once

#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "otoc/protocol.hpp"

namespace otoc {

using BigRational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Local qudit dimension of the Haar-random-gate circuit.
struct QuditDim {
    int q = 2;
    explicit QuditDim(int q_) : q(q_) {
        if (q < 2) throw std::invalid_argument("qudit dimension must be >= 2");
    }
    double p() const { return 1.0 / (double(q) * q + 1.0); }
    double zeta() const {
        const double q4 = double(q) * q * q * q;
        return q4 / (q4 - 1.0);
    }
};

/// Exact average OTOC O(i,j,tau) of the Haar-U(q^2) brick-wall circuit,
/// evaluated from the domain-wall partition function. tau counts gate
/// rows (two rows per period). PBC uses the two-wall endpoint DP with
/// weight q/(q^2+1) per wall and row, top factor (q^2)^width and overall
/// prefactor q^2/(q^4-1); OBC propagates full wall configurations plus
/// the edge-wire bits that open boundaries carry across rows.
double dw_otoc(int n, int i, int j, int tau, int q, Boundary bc, bool* causal_zero = nullptr);

/// Same evaluation in exact rational arithmetic (ground truth in disputes).
BigRational dw_otoc_exact(int n, int i, int j, int tau, int q, Boundary bc);

/// Infinite-system closed form. Exact on its native sublattice
/// tau - delta_j odd; half-integer CDF arguments are floored (monotone
/// extrapolation) on the complementary parity.
double otoc_u4_infinite(int delta_j, int tau, int q);

/// Binomial CDF g(n, a, p) = sum_{k<=a} C(n,k)(1-p)^(n-k) p^k with
/// g = 0 for a < 0 and g = 1 for a >= n.
double binomial_cdf(int n, int a, double p);

/// Upper tail 1 - g(n, a, p), summed directly so values far below
/// the rounding unit stay accurate.
double binomial_tail(int n, int a, double p);

/// otoc_u4_infinite(...) - 1 without cancellation; usable down to the
/// underflow floor (the CDF-product route loses the deficit once it
/// drops below ~1e-16).
double otoc_u4_infinite_deficit(int delta_j, int tau, int q);

/// Late-time decay rate 2 ln((1+q^2)/(2q)) of the infinite-system OTOC
/// in period units.
double u4_asymptotic_rate(int q);

/// Raised when a transcribed closed form disagrees with the exact DP.
struct FormulaInterpretationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Finite-OBC closed form (single wall from i = 1, ballot-path counts
/// H/p/Delta). Valid before edge effects, tau <= min(j, n-3); verified
/// against dw_otoc on every call and throws FormulaInterpretationError
/// on disagreement beyond tol.
double obc_closed_form(int n, int j, int tau, int q, double tol = 1e-9);

/// Finite-PBC closed form (first-saturation recursion N-hat over
/// non-intersecting wall pairs). Verified against dw_otoc on every call.
double pbc_recursion(int n, int j, int tau, int q, double tol = 1e-9);

/// Lattice-path counts behind the closed forms (exposed for tests).
namespace walls {
/// Ballot count: paths 0 -> u in k steps staying > 0 after the start.
BigInt ballot_paths(int k, int u);
/// Paths from `top` to e in k steps staying > 0 (reflection count).
BigInt from_top_paths(int k, int e, int top);
/// First passage 0 -> top at exactly step k, staying > 0 before.
BigInt first_passage(int k, int top);
/// Renewal-inverse correction Delta_{2k} satisfying
/// first_passage = ballot - sum ballot * Delta; memoized decomposition.
BigInt delta_correction(int twok, int top);
/// Literal signed sum over compositions defining Delta_{2k} (test use).
BigInt delta_correction_literal(int twok, int top);
/// Non-intersecting wall-pair count N^(tau) between monotone coordinates.
BigInt pair_paths(int tau, int u0, int v0, int u1, int v1);
}  // namespace walls

}  // namespace otoc
