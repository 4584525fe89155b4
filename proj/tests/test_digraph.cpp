#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gpcip/digraph.hpp"
#include "gpcip/errors.hpp"
#include "gpcip/rng.hpp"
#include "oracles.hpp"

#include <algorithm>

using namespace gpcip;

namespace {

Digraph complete(int n) {
    Digraph g(n);
    for (int u = 1; u <= n; ++u)
        for (int v = 1; v <= n; ++v)
            if (u != v) g.add_edge(u, v);
    return g;
}

Digraph cycle3() { return Digraph(3, {{1, 2}, {2, 3}, {3, 1}}); }

}  // namespace

TEST_CASE("graph construction rejects bad edges") {
    Digraph g(3);
    CHECK_THROWS_AS(g.add_edge(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(0, 2), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(1, 4), std::invalid_argument);
    CHECK_THROWS_AS(Digraph(0), std::invalid_argument);
}

TEST_CASE("transpose") {
    const Digraph g(2, {{1, 2}});
    CHECK(g.transpose().edges() == std::vector<std::pair<int, int>>{{2, 1}});

    const Digraph c = cycle3();
    CHECK(c.transpose().edges() == Digraph(3, {{1, 3}, {2, 1}, {3, 2}}).edges());

    Rng rng(4);
    for (int rep = 0; rep < 50; ++rep) {
        const Digraph r = oracles::random_digraph(1 + static_cast<int>(rng.below(7)), rng);
        CHECK(r.transpose().transpose().edges() == r.edges());
    }
}

TEST_CASE("reachability") {
    const Digraph path(3, {{1, 2}, {2, 3}});
    CHECK(reach_set(path, 1) == std::vector<int>{1, 2, 3});
    CHECK(reach_set(path, 3) == std::vector<int>{3});

    Digraph iso(2);
    CHECK(reach_set(iso, 1) == std::vector<int>{1});

    const Digraph k3 = complete(3);
    for (int v = 1; v <= 3; ++v) CHECK(reach_set(k3, v) == std::vector<int>{1, 2, 3});
}

TEST_CASE("condensation of simple graphs") {
    const Condensation c1 = scc_condensation(cycle3());
    CHECK(c1.members.size() == 1);

    const Condensation c2 = scc_condensation(Digraph(3, {{1, 2}, {2, 3}}));
    CHECK(c2.members.size() == 3);
    CHECK(c2.node_reach[0] == 0b111);
    CHECK(c2.node_reach[2] == 0b100);
}

TEST_CASE("condensation reachability equals brute-force search") {
    Rng rng(2718);
    for (int rep = 0; rep < 2000; ++rep) {
        const int n = 1 + static_cast<int>(rng.below(8));
        const Digraph g = oracles::random_digraph(n, rng);
        const Condensation c = scc_condensation(g);
        for (int v = 1; v <= n; ++v) {
            CHECK(c.node_reach[v - 1] == oracles::brute_reach(g, v));
            CHECK(c.node_reach[v - 1] == reach_mask(g, v));
        }
    }
}

TEST_CASE("external mother sets") {
    CHECK(mu_ext(complete(3), MotherVariant::RestrictedTarget).size == 1);
    CHECK(mu_ext(complete(3), MotherVariant::FullCover).size == 1);

    Digraph empty3(3);
    CHECK(mu_ext(empty3, MotherVariant::RestrictedTarget).size == 0);
    CHECK(mu_ext(empty3, MotherVariant::FullCover).size == 3);

    CHECK(mu_ext(cycle3(), MotherVariant::RestrictedTarget).size == 1);
}

TEST_CASE("internal mother sets") {
    CHECK(mu_int(Digraph(3, {{1, 2}, {2, 3}}), MotherVariant::RestrictedTarget).size == 1);
    CHECK(mu_int(Digraph(3), MotherVariant::RestrictedTarget).size == 0);
    CHECK(mu_int(complete(3), MotherVariant::RestrictedTarget).size == 1);
}

TEST_CASE("mother-set budget") {
    CHECK_THROWS_AS(mu_ext(complete(3), MotherVariant::RestrictedTarget, 2), BudgetExceeded);
}

TEST_CASE("witness attains the size and nothing smaller works") {
    Rng rng(31337);
    for (int rep = 0; rep < 300; ++rep) {
        const int n = 2 + static_cast<int>(rng.below(5));
        const Digraph g = oracles::random_digraph(n, rng);
        for (MotherVariant variant : {MotherVariant::RestrictedTarget, MotherVariant::FullCover}) {
            const MotherSetResult r = mu_ext(g, variant);
            REQUIRE(r.size >= 0);
            CHECK(static_cast<int>(r.witness.size()) == r.size);

            // re-verify the witness and re-test every subset one size below
            std::uint64_t targets = 0, reached = 0, wmask = 0;
            for (int v : r.witness) {
                wmask |= 1ull << (v - 1);
                reached |= reach_mask(g, v);
            }
            for (int v = 1; v <= n; ++v)
                if (g.out_degree(v) != 0) targets |= 1ull << (v - 1);
            if (variant == MotherVariant::FullCover)
                CHECK(reached == g.all_mask());
            else
                CHECK((targets & ~wmask & ~reached) == 0);

            if (r.size > 0) {
                std::vector<int> nodes(n);
                for (int i = 0; i < n; ++i) nodes[i] = i + 1;
                std::vector<bool> mask(n, false);
                std::fill(mask.begin(), mask.begin() + r.size - 1, true);
                // all (size-1)-subsets must fail
                std::sort(mask.begin(), mask.end());
                do {
                    std::uint64_t sm = 0, rm = 0;
                    for (int i = 0; i < n; ++i)
                        if (mask[i]) {
                            sm |= 1ull << i;
                            rm |= reach_mask(g, i + 1);
                        }
                    const bool ok = variant == MotherVariant::FullCover
                                        ? rm == g.all_mask()
                                        : (targets & ~sm & ~rm) == 0;
                    CHECK_FALSE(ok);
                } while (std::next_permutation(mask.begin(), mask.end()));
            }
        }
    }
}

TEST_CASE("restricted-target and full-cover coincide on sink-free graphs") {
    Rng rng(555);
    for (int rep = 0; rep < 300; ++rep) {
        const int n = 2 + static_cast<int>(rng.below(5));
        const Digraph g = oracles::random_sink_free_digraph(n, rng);
        CHECK(mu_ext(g, MotherVariant::RestrictedTarget).size ==
              mu_ext(g, MotherVariant::FullCover).size);
    }
}

TEST_CASE("D-graph conditions") {
    auto r = is_d_graph(complete(3), 2);
    CHECK_FALSE(r.ok);
    CHECK(r.failed_conditions == std::vector<std::string>{"iii"});

    r = is_d_graph(Digraph(3, {{1, 2}, {1, 3}, {2, 1}, {2, 3}}), 2);
    CHECK_FALSE(r.ok);
    CHECK(r.failed_conditions == std::vector<std::string>{"iii"});

    r = is_d_graph(Digraph(3, {{1, 2}, {2, 3}, {3, 1}}), 2);  // out-degree 1 everywhere
    CHECK_FALSE(r.ok);
    CHECK(std::find(r.failed_conditions.begin(), r.failed_conditions.end(), "ii") !=
          r.failed_conditions.end());

    r = is_d_graph(Digraph(2, {{1, 2}}), 1);  // node 1 has in-degree 0
    CHECK_FALSE(r.ok);
    CHECK(std::find(r.failed_conditions.begin(), r.failed_conditions.end(), "i") !=
          r.failed_conditions.end());
}

TEST_CASE("exhaustive scans at small K find no bound violations") {
    for (int K = 1; K <= 4; ++K) {
        const ScanReport report = scan_mother_set_bound(K, 2, ScanMode{true, 0, 1});
        CHECK(report.graphs_scanned == 1ull << (K * (K - 1)));
        CHECK(report.counterexamples.empty());
        CHECK(report.bound == K / 3);
    }
}

TEST_CASE("sampled scan mode is seeded and clean") {
    const ScanReport report = scan_mother_set_bound(6, 2, ScanMode{false, 5000, 7});
    CHECK(report.graphs_scanned == 5000);
    CHECK(report.counterexamples.empty());

    const ScanReport again = scan_mother_set_bound(6, 2, ScanMode{false, 5000, 7});
    CHECK(again.d_graphs_found == report.d_graphs_found);
    CHECK(again.max_mu_ext == report.max_mu_ext);
}

TEST_CASE("infeasible exhaustive scans are refused") {
    CHECK_THROWS_AS(scan_mother_set_bound(6, 2, ScanMode{true, 0, 1}), BudgetExceeded);
}
