#include "gpcip/digraph.hpp"

#include "gpcip/errors.hpp"
#include "gpcip/rng.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace gpcip {

Digraph::Digraph(int n) : n_(n), adj_(n, 0) {
    if (n < 1 || n > 64) throw std::invalid_argument("node count must be in [1, 64]");
}

Digraph::Digraph(int n, const std::vector<std::pair<int, int>>& edges) : Digraph(n) {
    for (auto [u, v] : edges) add_edge(u, v);
}

void Digraph::add_edge(int u, int v) {
    if (u < 1 || u > n_ || v < 1 || v > n_) throw std::invalid_argument("node out of range");
    if (u == v) throw std::invalid_argument("self-loops are not allowed");
    adj_[u - 1] |= 1ull << (v - 1);
}

bool Digraph::has_edge(int u, int v) const { return adj_[u - 1] >> (v - 1) & 1; }

std::vector<std::pair<int, int>> Digraph::edges() const {
    std::vector<std::pair<int, int>> e;
    for (int u = 1; u <= n_; ++u)
        for (int v = 1; v <= n_; ++v)
            if (has_edge(u, v)) e.emplace_back(u, v);
    return e;
}

int Digraph::out_degree(int u) const { return std::popcount(adj_[u - 1]); }

int Digraph::in_degree(int u) const {
    int d = 0;
    for (int w = 1; w <= n_; ++w) d += has_edge(w, u);
    return d;
}

std::uint64_t Digraph::all_mask() const {
    return n_ == 64 ? ~0ull : (1ull << n_) - 1;
}

Digraph Digraph::transpose() const {
    Digraph t(n_);
    for (int u = 1; u <= n_; ++u)
        for (int v = 1; v <= n_; ++v)
            if (has_edge(u, v)) t.add_edge(v, u);
    return t;
}

std::uint64_t reach_mask(const Digraph& g, int v) {
    std::uint64_t seen = 1ull << (v - 1);
    std::uint64_t frontier = seen;
    while (frontier) {
        std::uint64_t next = 0;
        while (frontier) {
            int u = std::countr_zero(frontier);
            frontier &= frontier - 1;
            next |= g.out_mask(u + 1);
        }
        frontier = next & ~seen;
        seen |= next;
    }
    return seen;
}

std::vector<int> reach_set(const Digraph& g, int v) {
    std::uint64_t m = reach_mask(g, v);
    std::vector<int> out;
    while (m) {
        out.push_back(std::countr_zero(m) + 1);
        m &= m - 1;
    }
    return out;
}

Condensation scc_condensation(const Digraph& g) {
    const int n = g.n();
    Condensation c;
    c.component.assign(n, -1);

    // iterative Tarjan
    std::vector<int> index(n, -1), low(n, 0), stack, call_node, call_edge;
    std::vector<bool> on_stack(n, false);
    int counter = 0;
    for (int root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        call_node.push_back(root);
        call_edge.push_back(0);
        while (!call_node.empty()) {
            int v = call_node.back();
            if (call_edge.back() == 0) {
                index[v] = low[v] = counter++;
                stack.push_back(v);
                on_stack[v] = true;
            }
            bool descended = false;
            for (int w = call_edge.back(); w < n; ++w) {
                if (!g.has_edge(v + 1, w + 1)) continue;
                if (index[w] == -1) {
                    call_edge.back() = w + 1;
                    call_node.push_back(w);
                    call_edge.push_back(0);
                    descended = true;
                    break;
                }
                if (on_stack[w]) low[v] = std::min(low[v], index[w]);
            }
            if (descended) continue;
            if (low[v] == index[v]) {
                std::uint64_t members = 0;
                int comp = static_cast<int>(c.members.size());
                for (;;) {
                    int w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    c.component[w] = comp;
                    members |= 1ull << w;
                    if (w == v) break;
                }
                c.members.push_back(members);
            }
            call_node.pop_back();
            call_edge.pop_back();
            if (!call_node.empty()) {
                int parent = call_node.back();
                low[parent] = std::min(low[parent], low[v]);
            }
        }
    }

    const int n_comp = static_cast<int>(c.members.size());
    c.dag_edges.assign(n_comp, {});
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (g.has_edge(u + 1, v + 1) && c.component[u] != c.component[v])
                c.dag_edges[c.component[u]].push_back(c.component[v]);

    // Tarjan emits components in reverse topological order: successors of a
    // component always have smaller ids, so one ascending pass closes reach.
    std::vector<std::uint64_t> comp_reach(n_comp, 0);
    for (int comp = 0; comp < n_comp; ++comp) {
        comp_reach[comp] = c.members[comp];
        for (int succ : c.dag_edges[comp]) comp_reach[comp] |= comp_reach[succ];
    }
    c.node_reach.assign(n, 0);
    for (int v = 0; v < n; ++v) c.node_reach[v] = comp_reach[c.component[v]];
    return c;
}

namespace {

std::uint64_t reach_of_set(const std::vector<std::uint64_t>& reach, std::uint64_t set_mask) {
    std::uint64_t r = 0;
    while (set_mask) {
        int v = std::countr_zero(set_mask);
        set_mask &= set_mask - 1;
        r |= reach[v];
    }
    return r;
}

bool covers(const std::vector<std::uint64_t>& reach, std::uint64_t targets, std::uint64_t all,
            std::uint64_t set_mask, MotherVariant variant) {
    const std::uint64_t reached = reach_of_set(reach, set_mask);
    if (variant == MotherVariant::FullCover) return reached == all;
    return (targets & ~set_mask & ~reached) == 0;
}

std::vector<std::uint64_t> all_reach(const Digraph& g) {
    std::vector<std::uint64_t> r(g.n());
    for (int v = 1; v <= g.n(); ++v) r[v - 1] = reach_mask(g, v);
    return r;
}

// next mask with the same popcount (Gosper); call with c != 0
std::uint64_t next_combination(std::uint64_t c) {
    std::uint64_t lo = c & -c;
    std::uint64_t left = c + lo;
    std::uint64_t changed = c ^ left;
    return left | ((changed / lo) >> 2);
}

// Smallest set size in [0, max_size] satisfying the cover predicate, or -1.
int min_cover_size(const std::vector<std::uint64_t>& reach, std::uint64_t targets,
                   std::uint64_t all, int n, MotherVariant variant, int max_size,
                   std::uint64_t* witness) {
    for (int size = 0; size <= max_size; ++size) {
        if (size == 0) {
            if (covers(reach, targets, all, 0, variant)) {
                if (witness) *witness = 0;
                return 0;
            }
            continue;
        }
        if (size > n) break;
        std::uint64_t c = (1ull << size) - 1;
        const std::uint64_t limit = n == 64 ? ~0ull : (1ull << n);
        while (c < limit) {
            if (covers(reach, targets, all, c, variant)) {
                if (witness) *witness = c;
                return size;
            }
            if (c == ((limit - 1) & ~((1ull << (n - size)) - 1))) break;
            c = next_combination(c);
        }
    }
    return -1;
}

std::vector<int> mask_to_nodes(std::uint64_t m) {
    std::vector<int> out;
    while (m) {
        out.push_back(std::countr_zero(m) + 1);
        m &= m - 1;
    }
    return out;
}

MotherSetResult mother_set(const Digraph& g, MotherVariant variant, int budget, bool in_targets) {
    if (g.n() > budget || g.n() > 62)
        throw BudgetExceeded("graph exceeds the brute-force node budget");
    std::uint64_t targets = 0;
    for (int v = 1; v <= g.n(); ++v) {
        int deg = in_targets ? g.in_degree(v) : g.out_degree(v);
        if (deg != 0) targets |= 1ull << (v - 1);
    }
    const auto reach = all_reach(g);
    std::uint64_t witness = 0;
    int size = min_cover_size(reach, targets, g.all_mask(), g.n(), variant, g.n(), &witness);
    MotherSetResult r;
    r.size = size;
    r.witness = mask_to_nodes(witness);
    r.variant = variant;
    return r;
}

}  // namespace

MotherSetResult mu_ext(const Digraph& g, MotherVariant variant, int budget) {
    return mother_set(g, variant, budget, /*in_targets=*/false);
}

MotherSetResult mu_int(const Digraph& g, MotherVariant variant, int budget) {
    return mother_set(g, variant, budget, /*in_targets=*/true);
}

DGraphReport is_d_graph(const Digraph& g, int D) {
    if (D < 1) throw std::invalid_argument("D must be >= 1");
    DGraphReport r;
    bool cond_i = true, cond_ii = true;
    for (int v = 1; v <= g.n(); ++v) {
        if (g.in_degree(v) < 1) cond_i = false;
        int od = g.out_degree(v);
        if (od != 0 && od < D) cond_ii = false;
    }
    if (!cond_i) r.failed_conditions.push_back("i");
    if (!cond_ii) r.failed_conditions.push_back("ii");
    // (iii) is the expensive condition; only evaluated once (i) and (ii) hold
    if (cond_i && cond_ii) {
        const int need = (g.n() + D - 1) / D;
        const Digraph t = g.transpose();
        std::uint64_t targets = 0;
        for (int v = 1; v <= t.n(); ++v)
            if (t.in_degree(v) != 0) targets |= 1ull << (v - 1);
        const auto reach = all_reach(t);
        const bool cond_iii = min_cover_size(reach, targets, t.all_mask(), t.n(),
                                             MotherVariant::RestrictedTarget, need - 1,
                                             nullptr) < 0;
        if (!cond_iii) r.failed_conditions.push_back("iii");
    }
    r.ok = r.failed_conditions.empty();
    return r;
}

ScanReport scan_mother_set_bound(int K, int D, const ScanMode& mode, std::int64_t budget) {
    if (K < 1 || K > 8) throw std::invalid_argument("scan supports 1 <= K <= 8");
    if (D < 1) throw std::invalid_argument("D must be >= 1");
    const int n_pairs = K * (K - 1);
    ScanReport report;
    report.bound = K / (D + 1);

    // ordered node pairs, bit t of a configuration = presence of pair t
    std::vector<std::pair<int, int>> pairs;
    for (int u = 1; u <= K; ++u)
        for (int v = 1; v <= K; ++v)
            if (u != v) pairs.emplace_back(u, v);

    auto examine = [&](std::uint64_t config) {
        Digraph g(K);
        for (int t = 0; t < n_pairs; ++t)
            if (config >> t & 1) g.add_edge(pairs[t].first, pairs[t].second);
        ++report.graphs_scanned;
        if (!is_d_graph(g, D).ok) return;
        ++report.d_graphs_found;
        const int mu = mu_ext(g, MotherVariant::RestrictedTarget).size;
        report.max_mu_ext = std::max(report.max_mu_ext, mu);
        if (mu > report.bound) report.counterexamples.push_back(g.edges());
    };

    if (mode.exhaustive) {
        if (n_pairs >= 63 || (1ull << n_pairs) > static_cast<std::uint64_t>(budget))
            throw BudgetExceeded(
                "exhaustive scan exceeds the graph budget; use the sampled mode");
        for (std::uint64_t config = 0; config < (1ull << n_pairs); ++config) examine(config);
    } else {
        Rng rng(mode.seed);
        for (std::uint64_t i = 0; i < mode.sample_count; ++i) {
            std::uint64_t config = rng.next();
            if (n_pairs < 64) config &= (1ull << n_pairs) - 1;
            examine(config);
        }
    }
    return report;
}

}  // namespace gpcip
