#pragma once

#include <string>
#include <vector>

namespace otoc {

enum class ProtocolKind { bw, s, custom_permutation, rnn_averaged, all_to_all_averaged };
enum class Boundary { obc, pbc };

struct SitePair {
    int p = 0, q = 0;
};

/// Gate ordering of one period plus boundary condition. Deterministic kinds
/// carry explicit layers (one tick each); averaged kinds carry the pair set
/// that is averaged over, with one unit of time = L averaged steps.
struct Protocol {
    ProtocolKind kind = ProtocolKind::bw;
    Boundary boundary = Boundary::obc;
    int n = 0;
    std::vector<std::vector<SitePair>> layers;
    std::vector<SitePair> pairs;

    bool averaged() const {
        return kind == ProtocolKind::rnn_averaged || kind == ProtocolKind::all_to_all_averaged;
    }
    int ticks_per_period() const { return averaged() ? 1 : static_cast<int>(layers.size()); }
    /// L of the averaged step (pair count); meaningless for deterministic kinds.
    int averaging_count() const { return static_cast<int>(pairs.size()); }

    std::string name() const;

    /// Brick wall: all (i,i+1) with odd i, then all with even i.
    static Protocol brickwall(int n, Boundary bc);
    /// Staircase: (1,2),(2,3),... in one tick, or one gate per tick when
    /// subgate_ticks is set (per-gate snapshot convention).
    static Protocol staircase(int n, Boundary bc, bool subgate_ticks = false);
    /// Any permutation of the nearest-neighbor pairs, applied once per period.
    static Protocol custom(int n, Boundary bc, std::vector<SitePair> order);
    static Protocol rnn(int n, Boundary bc);
    static Protocol all_to_all(int n);
};

/// Nearest-neighbor pairs of the chain (wrap pair included for PBC).
std::vector<SitePair> nearest_neighbor_pairs(int n, Boundary bc);

const char* to_string(Boundary b);

}  // namespace otoc
