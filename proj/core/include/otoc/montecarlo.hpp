#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "otoc/gates.hpp"
#include "otoc/protocol.hpp"
#include "otoc/series.hpp"

namespace otoc {

/// Appendix-style single-site randomness choices: fresh unitaries per
/// position/time (diff) or one shared unitary (hom).
struct RandomnessScenario {
    bool space_diff = true;
    bool time_diff = true;
    /// hom.x only: draw the shared unitary once per layer (default) or
    /// once per elementary step.
    bool hom_x_per_step = false;

    std::string name() const;
    static RandomnessScenario parse(const std::string& text);
};

/// Pauli-string coefficients of the evolved operator, 4^n reals indexed
/// base 4 (site k letter in digit k-1; letters 1,X,Y,Z = 0..3).
struct PauliCoeffVector {
    int n = 0;
    std::vector<double> coeffs;

    static PauliCoeffVector initial(int n, int site, int letter = 1);
    double norm_sq() const;
};

/// Deterministic counter-based stream: the draw for (seed, time key,
/// position key) never depends on evaluation order.
class KeyedRng {
  public:
    KeyedRng(std::uint64_t seed, std::uint64_t time_key, std::uint64_t pos_key);
    double uniform();    // [0, 1)
    double normal();

  private:
    std::uint64_t next_u64();
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// exp(i pi/4 (ax XX + ay YY + az ZZ)) as a product of its three
/// commuting factors.
Eigen::Matrix4cd build_w(const CanonicalGate& gate);

Eigen::Matrix2cd sample_haar_u2(KeyedRng& rng);

using Ptm16 = Eigen::Matrix<double, 16, 16>;

/// Pauli transfer matrix of a two-site unitary: R[a][b] =
/// Re tr(P_a G P_b G^dag)/4 with P = sigma(a/4) (x) sigma(a%4).
Ptm16 two_qubit_ptm(const Eigen::Matrix4cd& g);

/// Applies the PTM on the letter digits of sites (p, q).
void apply_ptm(PauliCoeffVector& v, const Ptm16& r, int p, int q);

struct RealizationOptions {
    int max_qubits = 14;
    int alpha_letter = 1;       // initial operator letter at site i
    double norm_drift_tol = 1e-8;
};

/// One sampled circuit: per elementary step the single-site unitaries are
/// drawn through the scenario's key map, W (V_p x V_q) is converted to a
/// PTM and applied, and the beta-averaged O(i,j,t) is recorded for every
/// j at every tick.
OtocSeries run_realization(const Protocol& proto, const CanonicalGate& gate,
                           const RandomnessScenario& scen, int i, long horizon_ticks,
                           std::uint64_t seed, const RealizationOptions& opt = {});

}  // namespace otoc
