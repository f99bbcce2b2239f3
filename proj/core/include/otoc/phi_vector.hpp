#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace otoc {

/// The 2^n-component averaged-OTOC vector. Component s (bit j-1 of the
/// integer index stores s_j) at bit string 2^(j-1) is O(i,j,t).
struct PhiVector {
    int n = 0;
    std::vector<double> data;

    static PhiVector zero(int n);
    /// e_0 + (4/3) e_{2^(i-1)}: the operator initially at site i.
    static PhiVector initial(int n, int i);

    double read_otoc(int j) const;
    std::size_t size() const { return data.size(); }
};

/// Smallest component of the per-site inverse-map image
/// ([[1, -3/4], [0, 3/4]] at every site). The image collects sums of
/// squared Pauli coefficients, so it must stay >= -1e-10.
double inverse_map_min(const PhiVector& phi);

/// Exact asymptotic vector (4^n * ones - e_0)/(4^n - 1); its OTOC
/// components all equal 1 + 1/(4^n - 1).
PhiVector stationary_vector(int n);

/// Binary snapshot: "OTPH", u32 version, u32 n, i64 tick, 2^n LE doubles.
void save_snapshot(const PhiVector& phi, std::int64_t tick, const std::string& path);
PhiVector load_snapshot(const std::string& path, std::int64_t* tick_out = nullptr);

}  // namespace otoc
