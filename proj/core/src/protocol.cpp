#include "otoc/protocol.hpp"

#include <algorithm>
#include <stdexcept>

namespace otoc {

namespace {
void require_chain(int n) {
    if (n < 2) throw std::invalid_argument("protocol needs n >= 2");
}
}  // namespace

std::vector<SitePair> nearest_neighbor_pairs(int n, Boundary bc) {
    std::vector<SitePair> out;
    for (int i = 1; i < n; ++i) out.push_back({i, i + 1});
    if (bc == Boundary::pbc) out.push_back({n, 1});
    return out;
}

Protocol Protocol::brickwall(int n, Boundary bc) {
    require_chain(n);
    if (bc == Boundary::pbc && n % 2 != 0)
        throw std::invalid_argument("brick-wall with PBC needs even n");
    Protocol p;
    p.kind = ProtocolKind::bw;
    p.boundary = bc;
    p.n = n;
    std::vector<SitePair> odd, even;
    for (int i = 1; i + 1 <= n; i += 2) odd.push_back({i, i + 1});
    for (int i = 2; i + 1 <= n; i += 2) even.push_back({i, i + 1});
    if (bc == Boundary::pbc) even.push_back({n, 1});
    p.layers = {odd, even};
    return p;
}

Protocol Protocol::staircase(int n, Boundary bc, bool subgate_ticks) {
    require_chain(n);
    Protocol p;
    p.kind = ProtocolKind::s;
    p.boundary = bc;
    p.n = n;
    auto pairs = nearest_neighbor_pairs(n, bc);
    if (subgate_ticks) {
        for (auto& pr : pairs) p.layers.push_back({pr});
    } else {
        p.layers = {pairs};
    }
    return p;
}

Protocol Protocol::custom(int n, Boundary bc, std::vector<SitePair> order) {
    require_chain(n);
    auto expected = nearest_neighbor_pairs(n, bc);
    auto norm = [n](SitePair pr) {
        if (pr.q == pr.p % n + 1) return std::pair<int, int>{pr.p, pr.q};
        if (pr.p == pr.q % n + 1) return std::pair<int, int>{pr.q, pr.p};
        return std::pair<int, int>{-1, -1};
    };
    std::vector<std::pair<int, int>> a, b;
    for (auto pr : order) a.push_back(norm(pr));
    for (auto pr : expected) b.push_back(norm(pr));
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b)
        throw std::invalid_argument(
            "custom protocol must apply each nearest-neighbor pair exactly once per period");
    Protocol p;
    p.kind = ProtocolKind::custom_permutation;
    p.boundary = bc;
    p.n = n;
    p.layers = {std::move(order)};
    return p;
}

Protocol Protocol::rnn(int n, Boundary bc) {
    require_chain(n);
    Protocol p;
    p.kind = ProtocolKind::rnn_averaged;
    p.boundary = bc;
    p.n = n;
    p.pairs = nearest_neighbor_pairs(n, bc);
    return p;
}

Protocol Protocol::all_to_all(int n) {
    require_chain(n);
    Protocol p;
    p.kind = ProtocolKind::all_to_all_averaged;
    p.boundary = Boundary::pbc;
    p.n = n;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) p.pairs.push_back({i, j});
    return p;
}

std::string Protocol::name() const {
    std::string base;
    switch (kind) {
        case ProtocolKind::bw: base = "bw"; break;
        case ProtocolKind::s: base = "s"; break;
        case ProtocolKind::custom_permutation: base = "custom"; break;
        case ProtocolKind::rnn_averaged: base = "rnn"; break;
        case ProtocolKind::all_to_all_averaged: return "all_to_all";
    }
    return base + "_" + to_string(boundary);
}

const char* to_string(Boundary b) { return b == Boundary::obc ? "obc" : "pbc"; }

}  // namespace otoc
