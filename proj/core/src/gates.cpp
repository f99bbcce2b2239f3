#include "otoc/gates.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace otoc {

namespace {
double snap01(double a) {
    if (std::abs(a) < 1e-15) return 0.0;
    if (std::abs(a - 1.0) < 1e-15) return 1.0;
    return a;
}
}  // namespace

CanonicalGate::CanonicalGate(double ax, double ay, double az)
    : ax_(snap01(ax)), ay_(snap01(ay)), az_(snap01(az)) {
    if (!(0.0 <= az_ && az_ <= ay_ && ay_ <= ax_ && ax_ <= 1.0)) {
        char buf[128];
        std::snprintf(buf, sizeof(buf),
                      "canonical gate parameters must satisfy 0 <= az <= ay <= ax <= 1, got (%g, %g, %g)",
                      ax, ay, az);
        throw std::invalid_argument(buf);
    }
}

KernelScalars KernelScalars::from_uv(double u, double v) {
    KernelScalars s;
    s.u = u;
    s.v = v;
    s.cplus = (9.0 + 2.0 * u - v) / 12.0;
    s.cminus = (9.0 - 2.0 * u - v) / 12.0;
    s.d = (v - 3.0) / 6.0;
    return s;
}

KernelScalars derive_uv(const CanonicalGate& g) {
    const double cx = std::cos(M_PI * g.ax());
    const double cy = std::cos(M_PI * g.ay());
    const double cz = std::cos(M_PI * g.az());
    return KernelScalars::from_uv(cx + cy + cz, cx * cy + cx * cz + cy * cz);
}

GateKernel kernel_from_scalars(const KernelScalars& s) {
    GateKernel k;
    k.scalars = s;
    const double cp = s.cplus, cm = s.cminus, d = s.d;
    k.m = {1.0, 0.0, 0.0, 0.0,
           0.0, cp, cm, d,
           0.0, cm, cp, d,
           0.0, -4.0 * d / 3.0, -4.0 * d / 3.0, (2.0 * d + s.v) / 3.0};
    return k;
}

GateKernel kernel_from_gate(const CanonicalGate& g) { return kernel_from_scalars(derive_uv(g)); }

KernelScalars scalars_haar_u4() { return KernelScalars::from_uv(0.0, -3.0 / 5.0); }

GateKernel kernel_haar_u4() { return kernel_from_scalars(scalars_haar_u4()); }

GateClass classify_gate(const CanonicalGate& g) {
    if (g.ax() == 1.0 && g.ay() == 1.0 && g.az() == 1.0) return GateClass::swap;
    const KernelScalars s = derive_uv(g);
    if (std::abs(s.cminus - 1.0) < 1e-12) return GateClass::dual_unitary;
    return GateClass::generic;
}

double lambda2_spbc_dual(double az) {
    if (!(0.0 <= az && az < 1.0))
        throw std::invalid_argument("lambda2_spbc_dual requires 0 <= az < 1 (SWAP excluded)");
    return 1.0 - (1.0 + std::cos(M_PI * az)) / 3.0;
}

GateSpec parse_gate_spec(std::string_view text) {
    GateSpec spec;
    spec.text = std::string(text);
    if (text == "swap") {
        spec.gate = CanonicalGate(1, 1, 1);
    } else if (text == "xy") {
        spec.gate = CanonicalGate(1, 1, 0);
    } else if (text == "u4") {
        spec.kernel = kernel_haar_u4();
        spec.cls = GateClass::haar_u4_effective;
        return spec;
    } else {
        double a[3];
        std::string s(text);
        for (auto& c : s)
            if (c == ',') c = ' ';
        std::istringstream in(s);
        if (!(in >> a[0] >> a[1] >> a[2]))
            throw std::invalid_argument("gate spec must be \"ax,ay,az\" or swap|xy|u4, got \"" +
                                        std::string(text) + "\"");
        spec.gate = CanonicalGate(a[0], a[1], a[2]);
    }
    spec.kernel = kernel_from_gate(*spec.gate);
    spec.cls = classify_gate(*spec.gate);
    return spec;
}

const char* to_string(GateClass c) {
    switch (c) {
        case GateClass::generic: return "generic";
        case GateClass::dual_unitary: return "dual_unitary";
        case GateClass::swap: return "swap";
        case GateClass::haar_u4_effective: return "haar_u4_effective";
    }
    return "?";
}

}  // namespace otoc
