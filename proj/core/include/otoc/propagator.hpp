#pragma once

#include "otoc/gates.hpp"
#include "otoc/phi_vector.hpp"
#include "otoc/protocol.hpp"
#include "otoc/series.hpp"

namespace otoc {

/// In-place kernel application on sites p != q. Only index groups whose
/// bits at p or q are set get modified; the all-identity component is a
/// fixed point, so data[0] stays exactly 1.
void apply_pair_kernel(PhiVector& phi, const GateKernel& k, int p, int q);

/// One period of a deterministic protocol (all layers in order).
void apply_period(PhiVector& phi, const Protocol& proto, const GateKernel& k);

/// One averaged elementary step: phi <- mean over pairs of M_pair phi.
/// Fixed pair order, so results are reproducible bit for bit.
void apply_averaged_step(PhiVector& phi, const Protocol& proto, const GateKernel& k);

struct EvolveOptions {
    int max_qubits = 28;             // overridden by OTOC_MAX_QUBITS
    bool track_light_cone = true;    // skip gates outside the support cone
};

/// Resource guard used by evolve(); throws std::length_error beyond the cap.
int effective_max_qubits(const EvolveOptions& opt);

/// Runs `horizon_ticks` ticks and records O(i,j,.) for every j at every
/// tick (deterministic kinds: one layer per tick; averaged kinds: one
/// unit of time = L averaged steps per tick).
OtocSeries evolve(const Protocol& proto, const GateKernel& k, int i, long horizon_ticks,
                  const EvolveOptions& opt = {});

}  // namespace otoc
