#include "otoc/propagator.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace otoc {

namespace {

inline std::size_t insert_zero_bit(std::size_t k, int bit) {
    const std::size_t low = k & ((std::size_t{1} << bit) - 1);
    return ((k >> bit) << (bit + 1)) | low;
}

}  // namespace

void apply_pair_kernel(PhiVector& phi, const GateKernel& k, int p, int q) {
    if (p == q || p < 1 || q < 1 || p > phi.n || q > phi.n)
        throw std::invalid_argument("apply_pair_kernel needs two distinct in-range sites");
    const int bp = p - 1, bq = q - 1;
    const int blo = bp < bq ? bp : bq, bhi = bp < bq ? bq : bp;
    const std::size_t mp = std::size_t{1} << bp, mq = std::size_t{1} << bq;
    const std::ptrdiff_t groups = std::ptrdiff_t(phi.data.size() >> 2);
    double* d = phi.data.data();
    const double cp = k.scalars.cplus, cm = k.scalars.cminus, dd = k.scalars.d;
    const double m31 = k.at(3, 1), m33 = k.at(3, 3);

#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t g = 0; g < groups; ++g) {
        const std::size_t base = insert_zero_bit(insert_zero_bit(std::size_t(g), blo), bhi);
        const std::size_t i01 = base | mq;   // s_q = 1
        const std::size_t i10 = base | mp;   // s_p = 1
        const std::size_t i11 = base | mp | mq;
        const double v01 = d[i01], v10 = d[i10], v11 = d[i11];
        d[i01] = cp * v01 + cm * v10 + dd * v11;
        d[i10] = cm * v01 + cp * v10 + dd * v11;
        d[i11] = m31 * (v01 + v10) + m33 * v11;
    }
}

void apply_period(PhiVector& phi, const Protocol& proto, const GateKernel& k) {
    if (proto.averaged())
        throw std::invalid_argument("apply_period is for deterministic protocols");
    for (const auto& layer : proto.layers)
        for (const auto& pr : layer) apply_pair_kernel(phi, k, pr.p, pr.q);
}

void apply_averaged_step(PhiVector& phi, const Protocol& proto, const GateKernel& k) {
    if (!proto.averaged())
        throw std::invalid_argument("apply_averaged_step is for averaged protocols");
    const double invL = 1.0 / double(proto.pairs.size());
    std::vector<double> out = phi.data;
    const double cp = k.scalars.cplus, cm = k.scalars.cminus, dd = k.scalars.d;
    const double m31 = k.at(3, 1), m33 = k.at(3, 3);
    const double* in = phi.data.data();
    double* o = out.data();
    for (const auto& pr : proto.pairs) {
        const int bp = pr.p - 1, bq = pr.q - 1;
        const int blo = bp < bq ? bp : bq, bhi = bp < bq ? bq : bp;
        const std::size_t mp = std::size_t{1} << bp, mq = std::size_t{1} << bq;
        const std::ptrdiff_t groups = std::ptrdiff_t(phi.data.size() >> 2);
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t g = 0; g < groups; ++g) {
            const std::size_t base = insert_zero_bit(insert_zero_bit(std::size_t(g), blo), bhi);
            const std::size_t i01 = base | mq;
            const std::size_t i10 = base | mp;
            const std::size_t i11 = base | mp | mq;
            const double v01 = in[i01], v10 = in[i10], v11 = in[i11];
            o[i01] += invL * ((cp - 1.0) * v01 + cm * v10 + dd * v11);
            o[i10] += invL * (cm * v01 + (cp - 1.0) * v10 + dd * v11);
            o[i11] += invL * (m31 * (v01 + v10) + (m33 - 1.0) * v11);
        }
    }
    phi.data.swap(out);
}

int effective_max_qubits(const EvolveOptions& opt) {
    if (const char* env = std::getenv("OTOC_MAX_QUBITS")) {
        const int v = std::atoi(env);
        if (v >= 2) return v;
    }
    return opt.max_qubits;
}

namespace {

/// Support interval of the vector on the ring/chain; gates with both
/// sites outside act as the identity and are skipped.
class Cone {
  public:
    Cone(int n, Boundary bc, int i) : n_(n), pbc_(bc == Boundary::pbc), lo_(i), hi_(i) {}

    bool contains(int site) const {
        if (full()) return true;
        if (!pbc_) return lo_ <= site && site <= hi_;
        const int w = hi_ - lo_ + 1;
        int rel = (site - lo_) % n_;
        if (rel < 0) rel += n_;
        return rel < w;
    }
    bool full() const { return hi_ - lo_ + 1 >= n_; }
    void add(int site) {
        if (full()) return;
        if (contains(site)) return;
        // extend to the nearer end (sites arrive adjacent to the cone)
        int dlo = lo_ - site, dhi = site - hi_;
        if (pbc_) {
            dlo = (dlo % n_ + n_) % n_;
            dhi = (dhi % n_ + n_) % n_;
            if (dhi <= dlo)
                hi_ += dhi;
            else
                lo_ -= dlo;
        } else {
            if (site > hi_)
                hi_ = site;
            else if (site < lo_)
                lo_ = site;
        }
    }

  private:
    int n_;
    bool pbc_;
    int lo_, hi_;   // unwrapped; full once width >= n
};

}  // namespace

OtocSeries evolve(const Protocol& proto, const GateKernel& k, int i, long horizon_ticks,
                  const EvolveOptions& opt) {
    if (horizon_ticks < 0) throw std::invalid_argument("horizon must be >= 0");
    const int cap = effective_max_qubits(opt);
    if (proto.n > cap)
        throw std::length_error("n=" + std::to_string(proto.n) + " exceeds the qubit cap " +
                                std::to_string(cap) + " (set OTOC_MAX_QUBITS to override)");

    PhiVector phi = PhiVector::initial(proto.n, i);
    OtocSeries s;
    s.n = proto.n;
    s.i = i;
    s.ticks_per_period = proto.ticks_per_period();
    s.protocol = proto.name();

    auto record = [&](long tick) {
        s.ticks.push_back(tick);
        std::vector<double> row(proto.n);
        for (int j = 1; j <= proto.n; ++j) row[j - 1] = phi.read_otoc(j);
        s.values.push_back(std::move(row));
    };
    record(0);

    Cone cone(proto.n, proto.boundary, i);
    const bool track = opt.track_light_cone && !proto.averaged();
    for (long tick = 1; tick <= horizon_ticks; ++tick) {
        if (proto.averaged()) {
            for (int step = 0; step < proto.averaging_count(); ++step)
                apply_averaged_step(phi, proto, k);
        } else {
            const auto& layer = proto.layers[std::size_t(tick - 1) % proto.layers.size()];
            for (const auto& pr : layer) {
                if (track && !cone.contains(pr.p) && !cone.contains(pr.q)) continue;
                apply_pair_kernel(phi, k, pr.p, pr.q);
                if (track) {
                    cone.add(pr.p);
                    cone.add(pr.q);
                }
            }
        }
        record(tick);
    }
    return s;
}

}  // namespace otoc
