#pragma once

// Test-only oracles, kept independent of the library's solver paths: a plain
// Gaussian-elimination solver and edge-by-edge reachability search.

#include "gpcip/digraph.hpp"
#include "gpcip/field.hpp"
#include "gpcip/rng.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace oracles {

// Solves A x = b over GF(q) for square A by row reduction with back checks.
inline std::vector<gpcip::MessageVec> gaussian_solve(
    std::vector<std::vector<gpcip::Fp>> a, std::vector<gpcip::MessageVec> b) {
    const std::size_t n = a.size();
    if (b.size() != n) throw std::invalid_argument("shape mismatch");
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col].value() == 0) ++pivot;
        if (pivot == n) throw std::invalid_argument("singular system");
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        gpcip::Fp inv = a[col][col].inv();
        for (std::size_t j = 0; j < n; ++j) a[col][j] *= inv;
        b[col] = inv * b[col];
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col].value() == 0) continue;
            gpcip::Fp f = a[r][col];
            for (std::size_t j = 0; j < n; ++j) a[r][j] -= f * a[col][j];
            b[r] -= f * b[col];
        }
    }
    return b;
}

// Per-node reachability by plain DFS over the edge list, including the node.
inline std::uint64_t brute_reach(const gpcip::Digraph& g, int v) {
    std::vector<int> stack{v};
    std::uint64_t seen = 1ull << (v - 1);
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int w = 1; w <= g.n(); ++w) {
            if (!g.has_edge(u, w) || (seen >> (w - 1) & 1)) continue;
            seen |= 1ull << (w - 1);
            stack.push_back(w);
        }
    }
    return seen;
}

inline gpcip::Digraph random_digraph(int n, gpcip::Rng& rng) {
    gpcip::Digraph g(n);
    for (int u = 1; u <= n; ++u)
        for (int v = 1; v <= n; ++v)
            if (u != v && rng.below(2) == 1) g.add_edge(u, v);
    return g;
}

inline gpcip::Digraph random_sink_free_digraph(int n, gpcip::Rng& rng) {
    for (;;) {
        gpcip::Digraph g = random_digraph(n, rng);
        bool sink_free = true;
        for (int v = 1; v <= n; ++v) sink_free = sink_free && g.out_degree(v) > 0;
        if (sink_free) return g;
    }
}

}  // namespace oracles
