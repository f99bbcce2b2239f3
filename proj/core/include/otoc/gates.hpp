#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace otoc {

/// Canonical two-qubit gate parameters (a_x, a_y, a_z) with
/// 0 <= a_z <= a_y <= a_x <= 1. Values within 1e-15 of 0 or 1 are snapped
/// so that special-family detection stays robust.
class CanonicalGate {
  public:
    CanonicalGate(double ax, double ay, double az);

    double ax() const { return ax_; }
    double ay() const { return ay_; }
    double az() const { return az_; }

    bool operator==(const CanonicalGate&) const = default;

  private:
    double ax_, ay_, az_;
};

/// Scalars derived from the canonical angles that fully determine the
/// averaged OTOC update: u = sum of cos(pi a_k), v = sum of pairwise
/// products, c_pm = (9 +- 2u - v)/12, d = (v - 3)/6.
struct KernelScalars {
    double u = 0.0;
    double v = 0.0;
    double cplus = 0.0;
    double cminus = 0.0;
    double d = 0.0;

    static KernelScalars from_uv(double u, double v);
};

/// (u, v) for a canonical gate.
KernelScalars derive_uv(const CanonicalGate& gate);

/// The 4x4 real update acting on the two bits (s_p, s_q) of the OTOC
/// vector, one matrix entry per ordered two-bit state 00,01,10,11
/// (local index 2*s_p + s_q, row-major). Row 0 and column 0 are fixed
/// to the all-identity state.
struct GateKernel {
    std::array<double, 16> m{};
    KernelScalars scalars;

    double at(int row, int col) const { return m[4 * row + col]; }
};

GateKernel kernel_from_scalars(const KernelScalars& s);
GateKernel kernel_from_gate(const CanonicalGate& gate);

/// Effective scalars of a Haar-random two-site gate (u = 0, v = -3/5):
/// no canonical triple is claimed to realize them, so this bypasses
/// CanonicalGate.
GateKernel kernel_haar_u4();
KernelScalars scalars_haar_u4();

enum class GateClass { generic, dual_unitary, swap, haar_u4_effective };

GateClass classify_gate(const CanonicalGate& gate);

/// |lambda_2| of the staircase-PBC transfer matrix for a dual-unitary
/// gate (1,1,a_z): 1 - (1 + cos(pi a_z))/3. Rejects a_z = 1 (SWAP).
double lambda2_spbc_dual(double az);

/// Parses "ax,ay,az" or the keywords swap / xy / u4. The u4 keyword has
/// no canonical triple; it is returned as a kernel-only spec.
struct GateSpec {
    std::optional<CanonicalGate> gate;   // empty for u4
    GateKernel kernel;
    GateClass cls;
    std::string text;
};

GateSpec parse_gate_spec(std::string_view text);

const char* to_string(GateClass c);

}  // namespace otoc
