#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace gpcip {

/// Directed graph without self-loops or parallel edges, at most 64 nodes.
/// Node i occupies bit i-1 of a mask (nodes are 1-based externally).
class Digraph {
public:
    explicit Digraph(int n);
    Digraph(int n, const std::vector<std::pair<int, int>>& edges);

    int n() const { return n_; }
    void add_edge(int u, int v);
    bool has_edge(int u, int v) const;
    std::vector<std::pair<int, int>> edges() const;  // lexicographic

    std::uint64_t out_mask(int u) const { return adj_[u - 1]; }
    int out_degree(int u) const;
    int in_degree(int u) const;
    std::uint64_t all_mask() const;

    Digraph transpose() const;

private:
    int n_;
    std::vector<std::uint64_t> adj_;
};

/// Nodes reachable from v, including v itself.
std::uint64_t reach_mask(const Digraph& g, int v);
std::vector<int> reach_set(const Digraph& g, int v);

/// Strongly connected components plus the reachability they induce.
struct Condensation {
    std::vector<int> component;               // node (0-based) -> component id
    std::vector<std::uint64_t> members;       // component id -> node mask
    std::vector<std::vector<int>> dag_edges;  // adjacency between components
    std::vector<std::uint64_t> node_reach;    // per node: reach mask incl. itself
};

Condensation scc_condensation(const Digraph& g);

enum class MotherVariant {
    RestrictedTarget,  // cover every node outside the set with nonzero degree
    FullCover,         // the union of reach sets must be all of V
};

struct MotherSetResult {
    int size = 0;
    std::vector<int> witness;
    MotherVariant variant = MotherVariant::RestrictedTarget;
};

inline constexpr int kDefaultNodeBudget = 20;

/// Minimum set of nodes reaching every u outside it with d_out(u) != 0
/// (restricted-target) or covering all of V by reach sets (full-cover).
MotherSetResult mu_ext(const Digraph& g, MotherVariant variant, int budget = kDefaultNodeBudget);

/// Same with in-degree targets.
MotherSetResult mu_int(const Digraph& g, MotherVariant variant, int budget = kDefaultNodeBudget);

struct DGraphReport {
    bool ok = false;
    std::vector<std::string> failed_conditions;  // subset of {"i", "ii", "iii"}
};

/// Conditions: (i) every in-degree >= 1, (ii) every out-degree is 0 or >= D,
/// (iii) mu_int of the transpose >= ceil(K/D).
DGraphReport is_d_graph(const Digraph& g, int D);

struct ScanMode {
    bool exhaustive = true;
    std::uint64_t sample_count = 0;
    std::uint64_t seed = 1;
};

struct ScanReport {
    std::uint64_t graphs_scanned = 0;
    std::uint64_t d_graphs_found = 0;
    int max_mu_ext = -1;  // -1 when no D-graph was seen
    int bound = 0;        // floor(K / (D+1))
    std::vector<std::vector<std::pair<int, int>>> counterexamples;
};

/// Scans labeled digraphs on K nodes for D-graphs whose external mother-set
/// size exceeds floor(K/(D+1)). Exhaustive mode requires 2^(K(K-1)) <= budget.
ScanReport scan_mother_set_bound(int K, int D, const ScanMode& mode,
                                 std::int64_t budget = 10'000'000);

}  // namespace gpcip
