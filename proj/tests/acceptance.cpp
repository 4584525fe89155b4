// Acceptance suite: one criterion per function, one pass/fail line each.
// Everything here is exact (rational or integer comparisons); the only
// randomness is seeded and deterministic.

#include "gpcip/audit.hpp"
#include "gpcip/digraph.hpp"
#include "gpcip/protocol.hpp"
#include "gpcip/relation.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace gpcip;

namespace {

Instance inst_of(int K, int M, int D, int m = 1) {
    return Instance{K, M, D, next_prime_at_least(static_cast<std::uint32_t>(M + D)), m};
}

const std::vector<std::tuple<int, int, int>> kAuditInstances = {
    {4, 1, 2}, {5, 1, 2}, {6, 1, 2}, {7, 1, 2}, {8, 1, 2}, {5, 2, 2}, {6, 2, 2}};

std::vector<MessageVec> random_messages(const Instance& inst, Rng& rng) {
    std::vector<MessageVec> messages;
    for (int i = 0; i < inst.K; ++i) {
        std::vector<Fp> symbols;
        for (int s = 0; s < inst.m; ++s)
            symbols.push_back(Fp(static_cast<std::int64_t>(rng.below(inst.q)), inst.q));
        messages.push_back(MessageVec(std::move(symbols)));
    }
    return messages;
}

// criterion 1: measured rate equals the closed formula, exhaustively
bool rate_reproduction() {
    for (int K = 3; K <= 12; ++K)
        for (int M = 1; M <= 3; ++M)
            for (int D = 2; D <= 3; ++D) {
                if (M + D > K) continue;
                const Instance inst = inst_of(K, M, D);
                const Rational formula = achievable_rate(K, M, D);
                Rng rng(static_cast<std::uint64_t>(K) * 10007 + M * 101 + D);
                for (const auto& ws : all_demand_side_pairs(inst))
                    for (int seed = 0; seed < 10; ++seed) {
                        const Query query =
                            build_query(inst, sample_partition(inst, ws, rng), rng);
                        if (measured_rate(query) != formula) return false;
                    }
            }
    return true;
}

// criterion 2: recovery returns the planted demands for every (W, S) and seed
bool recoverability() {
    for (int K = 3; K <= 10; ++K)
        for (int M = 1; M <= 3; ++M)
            for (int D = 2; D <= 3; ++D) {
                if (M + D > K) continue;
                for (int m : {1, 3}) {
                    const Instance inst = inst_of(K, M, D, m);
                    Rng rng(static_cast<std::uint64_t>(K) * 7919 + M * 53 + D * 7 + m);
                    for (const auto& ws : all_demand_side_pairs(inst))
                        for (int seed = 0; seed < 100; ++seed) {
                            const auto messages = random_messages(inst, rng);
                            const Query query =
                                build_query(inst, sample_partition(inst, ws, rng), rng);
                            const Answer answer = answer_query(query, messages);
                            std::map<int, MessageVec> side;
                            for (int s : ws.S) side[s] = messages[s - 1];
                            const auto got = recover(query, answer, ws, side);
                            if (got.size() != ws.W.size()) return false;
                            for (int w : ws.W)
                                if (!(got.at(w) == messages[w - 1])) return false;
                        }
                }
            }
    return true;
}

// criterion 3: exact posterior uniformity on the audit instances
bool exact_privacy() {
    for (auto [K, M, D] : kAuditInstances) {
        const PrivacyReport report = audit_individual_privacy(inst_of(K, M, D));
        if (!report.pass || report.worst_violation != 0) return false;
    }
    return true;
}

// criterion 4: each protocol mutation must be caught on a listed instance
bool mutation_sensitivity() {
    const auto fails_somewhere = [](const ProtocolVariant& variant) {
        for (auto [K, M, D] : kAuditInstances) {
            const PrivacyReport report = audit_individual_privacy(inst_of(K, M, D), variant);
            if (!report.pass && report.worst_violation > 0) return true;
        }
        return false;
    };
    return fails_somewhere(ProtocolVariant{true, false, true}) &&   // always branch A
           fails_somewhere(ProtocolVariant{false, true, true}) &&   // theta1 doubled
           fails_somewhere(ProtocolVariant{false, false, false});   // shuffle removed
}

// criterion 5: certain covers never undercut ceil(K/D)
bool certain_cover_bound() {
    for (auto [K, M, D] : kAuditInstances) {
        const Instance inst = inst_of(K, M, D);
        const JointAudit joint = build_joint(inst);
        const int bound = (K + D - 1) / D;
        for (const auto& [key, st] : joint.keys)
            if (min_certain_cover(joint, key).size < bound) return false;
    }
    return true;
}

// criterion 6: every index decodable via some disjoint (Wstar, Sstar)
bool decodability_everywhere() {
    for (auto [K, M, D] : kAuditInstances)
        if (!audit_decodability(inst_of(K, M, D)).pass) return false;
    return true;
}

// criterion 7: balance identities hold everywhere, and perturbations break them
bool theta_balance_everywhere() {
    for (int K = 3; K <= 30; ++K)
        for (int M = 1; M <= K - 2; ++M)
            for (int D = 2; D <= K - M; ++D) {
                const Instance inst = inst_of(K, M, D);
                if (!verify_theta_balance(inst)) return false;
                const BranchWeights w = theta_weights(inst);
                const Rational other = w.theta2 ? *w.theta2 : *w.theta3;
                if (verify_theta_balance(inst, w.theta1 + 1, other)) return false;
                if (verify_theta_balance(inst, w.theta1, other + 1)) return false;
            }
    return true;
}

// criterion 8: no mother-set bound violations among scanned D-graphs
bool mother_set_scans() {
    for (int K = 1; K <= 5; ++K) {
        const ScanReport r = scan_mother_set_bound(K, 2, ScanMode{true, 0, 1});
        std::printf("    exhaustive K=%d: %llu graphs, %llu D-graphs, max mu_ext %d, bound %d\n",
                    K, static_cast<unsigned long long>(r.graphs_scanned),
                    static_cast<unsigned long long>(r.d_graphs_found), r.max_mu_ext, r.bound);
        if (!r.counterexamples.empty()) return false;
    }
    for (int K : {6, 7}) {
        const ScanReport r =
            scan_mother_set_bound(K, 2, ScanMode{false, 1'000'000, 42}, 10'000'000);
        std::printf("    sampled    K=%d: %llu graphs, %llu D-graphs, max mu_ext %d, bound %d\n",
                    K, static_cast<unsigned long long>(r.graphs_scanned),
                    static_cast<unsigned long long>(r.d_graphs_found), r.max_mu_ext, r.bound);
        if (!r.counterexamples.empty()) return false;
    }
    return true;
}

// criterion 9: independent oracles agree with the implementation paths
bool oracle_equivalences() {
    // (a) brute-force reachability vs condensation reachability
    {
        Rng rng(90001);
        for (int rep = 0; rep < 10'000; ++rep) {
            const int n = 1 + static_cast<int>(rng.below(8));
            const Digraph g = oracles::random_digraph(n, rng);
            const Condensation c = scc_condensation(g);
            for (int v = 1; v <= n; ++v)
                if (c.node_reach[v - 1] != oracles::brute_reach(g, v)) return false;
        }
    }
    // (b) relation cover vs full-cover mother set on sink-free graphs
    {
        Rng rng(90002);
        for (int rep = 0; rep < 10'000; ++rep) {
            const int n = 1 + static_cast<int>(rng.below(7));
            const Digraph g = oracles::random_sink_free_digraph(n, rng);
            const CoverSearchResult cover = min_cover_size(relation_from_graph(g, 2));
            if (!cover.found) return false;
            if (cover.size != mu_ext(g, MotherVariant::FullCover).size) return false;
        }
    }
    // (c) the structured solver vs generic elimination
    {
        Rng rng(90003);
        for (std::uint32_t q : {3u, 5u, 7u, 11u, 13u})
            for (std::size_t n = 1; n <= std::min<std::size_t>(8, q); ++n)
                for (int rep = 0; rep < 100; ++rep) {
                    std::vector<int> pool;
                    for (std::uint32_t v = 0; v < q; ++v) pool.push_back(static_cast<int>(v));
                    std::vector<Fp> omegas;
                    for (int v : rng.subset(pool, n)) omegas.push_back(Fp(v, q));
                    std::vector<MessageVec> rhs;
                    std::vector<std::vector<Fp>> vm;
                    for (std::size_t j = 1; j <= n; ++j) {
                        std::vector<Fp> row;
                        for (std::size_t l = 0; l < n; ++l) row.push_back(omegas[l].pow(j - 1));
                        vm.push_back(row);
                        rhs.push_back(MessageVec(
                            {Fp(static_cast<std::int64_t>(rng.below(q)), q)}));
                    }
                    const auto fast = vandermonde_solve(omegas, rhs);
                    const auto slow = oracles::gaussian_solve(vm, rhs);
                    for (std::size_t l = 0; l < n; ++l)
                        if (!(fast[l] == slow[l])) return false;
                }
    }
    return true;
}

// criterion 10: protocol-induced covers respect the conjectured bound and rank
bool protocol_cover_bounds() {
    for (auto [K, M, D] : kAuditInstances) {
        const Instance inst = inst_of(K, M, D);
        const JointAudit joint = build_joint(inst);
        const int bound = cover_bound(K, M, D);
        for (const auto& [key, st] : joint.keys) {
            const Query query = query_from_key(inst, key);
            const CoverSearchResult cover = min_cover_size(relation_from_protocol(inst, query));
            if (!cover.found) return false;
            if (cover.size > bound) return false;
            if (K - cover.size > static_cast<int>(rank(coefficient_matrix(query)))) return false;
        }
    }
    return true;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<bool()> run;
    };
    const std::vector<Criterion> criteria = {
        {"rate reproduction (exhaustive grid, 10 seeds)", rate_reproduction},
        {"recoverability (exhaustive grid, 100 seeds, m in {1,3})", recoverability},
        {"exact individual privacy (7 instances)", exact_privacy},
        {"mutation sensitivity (3 broken variants)", mutation_sensitivity},
        {"certain-cover lower bound", certain_cover_bound},
        {"decodability of every index", decodability_everywhere},
        {"branch-weight balance identities (K <= 30)", theta_balance_everywhere},
        {"mother-set bound scans (exhaustive K <= 5, sampled K = 6,7)", mother_set_scans},
        {"oracle equivalences (reach, cover, solver)", oracle_equivalences},
        {"protocol cover bounds and rank", protocol_cover_bounds},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        bool ok = false;
        std::string note;
        try {
            ok = criteria[i].run();
        } catch (const std::exception& e) {
            note = std::string(" (") + e.what() + ")";
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%2zu] %-60s %s (%.2fs)%s\n", i + 1, criteria[i].name,
                    ok ? "PASS" : "FAIL", secs, note.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
