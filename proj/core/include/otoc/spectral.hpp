#pragma once

#include <complex>
#include <string>
#include <vector>

#include "otoc/gates.hpp"
#include "otoc/protocol.hpp"

namespace otoc {

enum class SpectralMethod { dense, arnoldi, difference_ratio };

struct SpectralResult {
    double lambda2_abs = 0.0;
    SpectralMethod method = SpectralMethod::dense;
    int n = 0;
    std::string protocol;
    int iterations = 0;
    double residual = 0.0;
    bool gapless = false;      // |lambda2| within 1e-12 of 1
    bool oscillatory = false;  // ratio iteration did not settle (complex pair)
    bool converged = true;
};

/// Unit-time transfer map: one period for deterministic kinds, L averaged
/// steps for averaged kinds. This is the exact operator whose spectrum the
/// module reports.
void apply_unit_time(struct PhiVector& phi, const Protocol& proto, const GateKernel& k);

/// Full-matrix eigensolve; the matrix is built by applying the production
/// period map to basis vectors. The doubly degenerate lambda = 1 pair
/// (e_0 and the stationary vector) is excluded before taking the largest
/// modulus. Optionally returns the full spectrum.
SpectralResult lambda2_dense(const Protocol& proto, const GateKernel& k,
                             std::vector<std::complex<double>>* spectrum_out = nullptr);

struct MatrixFreeOptions {
    int max_iters = 80;     // Krylov dimension (arnoldi) / iterations (ratio)
    double tol = 1e-10;
    SpectralMethod method = SpectralMethod::arnoldi;
    unsigned seed = 0x5eed;
};

/// Matrix-free subleading eigenvalue. The start vector is difference-
/// filtered, (M - I) psi, which removes the lambda = 1 eigenvectors; the
/// lambda = 1 sector of deterministic protocols is defective (Jordan
/// blocks), so remaining Ritz values near 1 are excluded by a tolerance
/// band instead. The difference_ratio method is a low-memory fallback:
/// it power-iterates the filtered vector and reads the first stable
/// plateau of the norm ratio before rounding noise re-injects the
/// lambda = 1 sector.
SpectralResult lambda2_matrix_free(const Protocol& proto, const GateKernel& k,
                                   const MatrixFreeOptions& opt = {});

const char* to_string(SpectralMethod m);

std::string spectral_result_json(const SpectralResult& r, const std::string& gate_text);

}  // namespace otoc
