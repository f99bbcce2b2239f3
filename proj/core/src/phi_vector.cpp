#include "otoc/phi_vector.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace otoc {

PhiVector PhiVector::zero(int n) {
    if (n < 1 || n > 30) throw std::invalid_argument("PhiVector supports 1 <= n <= 30");
    PhiVector phi;
    phi.n = n;
    phi.data.assign(std::size_t{1} << n, 0.0);
    return phi;
}

PhiVector PhiVector::initial(int n, int i) {
    if (i < 1 || i > n) throw std::invalid_argument("initial site out of range");
    PhiVector phi = zero(n);
    phi.data[0] = 1.0;
    phi.data[std::size_t{1} << (i - 1)] = 4.0 / 3.0;
    return phi;
}

double PhiVector::read_otoc(int j) const {
    if (j < 1 || j > n) throw std::invalid_argument("read_otoc site out of range");
    return data[std::size_t{1} << (j - 1)];
}

double inverse_map_min(const PhiVector& phi) {
    std::vector<double> w = phi.data;
    const std::size_t dim = w.size();
    for (int b = 0; b < phi.n; ++b) {
        const std::size_t mask = std::size_t{1} << b;
        for (std::size_t s = 0; s < dim; ++s) {
            if (s & mask) continue;
            const double v0 = w[s], v1 = w[s | mask];
            w[s] = v0 - 0.75 * v1;
            w[s | mask] = 0.75 * v1;
        }
    }
    return *std::min_element(w.begin(), w.end());
}

PhiVector stationary_vector(int n) {
    PhiVector phi = PhiVector::zero(n);
    const double fourn = std::ldexp(1.0, 2 * n);
    const double val = fourn / (fourn - 1.0);
    std::fill(phi.data.begin(), phi.data.end(), val);
    phi.data[0] = 1.0;
    return phi;
}

namespace {
constexpr char kMagic[4] = {'O', 'T', 'P', 'H'};
constexpr std::uint32_t kVersion = 1;
}  // namespace

void save_snapshot(const PhiVector& phi, std::int64_t tick, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open snapshot file for writing: " + path);
    out.write(kMagic, 4);
    const std::uint32_t ver = kVersion, n = static_cast<std::uint32_t>(phi.n);
    out.write(reinterpret_cast<const char*>(&ver), sizeof ver);
    out.write(reinterpret_cast<const char*>(&n), sizeof n);
    out.write(reinterpret_cast<const char*>(&tick), sizeof tick);
    out.write(reinterpret_cast<const char*>(phi.data.data()),
              static_cast<std::streamsize>(phi.data.size() * sizeof(double)));
    if (!out) throw std::runtime_error("short write on snapshot file: " + path);
}

PhiVector load_snapshot(const std::string& path, std::int64_t* tick_out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open snapshot file: " + path);
    char magic[4];
    std::uint32_t ver = 0, n = 0;
    std::int64_t tick = 0;
    in.read(magic, 4);
    in.read(reinterpret_cast<char*>(&ver), sizeof ver);
    in.read(reinterpret_cast<char*>(&n), sizeof n);
    in.read(reinterpret_cast<char*>(&tick), sizeof tick);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("not a phi snapshot: " + path);
    if (ver != kVersion) throw std::runtime_error("unsupported snapshot version");
    PhiVector phi = PhiVector::zero(static_cast<int>(n));
    in.read(reinterpret_cast<char*>(phi.data.data()),
            static_cast<std::streamsize>(phi.data.size() * sizeof(double)));
    if (!in) throw std::runtime_error("truncated snapshot: " + path);
    if (tick_out) *tick_out = tick;
    return phi;
}

}  // namespace otoc
