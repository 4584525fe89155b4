#include "gpcip/audit.hpp"

#include <algorithm>
#include <stdexcept>

namespace gpcip {

namespace {

std::vector<int> sorted_union(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> r;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

std::vector<int> sorted_difference(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> r;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

std::vector<int> all_indices(int K) {
    std::vector<int> r(K);
    for (int i = 0; i < K; ++i) r[i] = i + 1;
    return r;
}

void combinations(const std::vector<int>& pool, int k,
                  const std::function<void(const std::vector<int>&)>& cb) {
    if (k < 0 || k > static_cast<int>(pool.size())) return;
    std::vector<int> pick(k);
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == k) {
            cb(pick);
            return;
        }
        for (int i = start; i <= static_cast<int>(pool.size()) - (k - depth); ++i) {
            pick[depth] = pool[i];
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
}

// All ways to split pool into `blocks` labeled alpha-sets (pool sorted).
void labeled_partitions(const std::vector<int>& pool, int blocks, int alpha,
                        std::vector<std::vector<int>>& acc,
                        const std::function<void(const std::vector<std::vector<int>>&)>& cb) {
    if (blocks == 0) {
        cb(acc);
        return;
    }
    combinations(pool, alpha, [&](const std::vector<int>& blk) {
        acc.push_back(blk);
        labeled_partitions(sorted_difference(pool, blk), blocks - 1, alpha, acc, cb);
        acc.pop_back();
    });
}

QueryKey make_key(std::vector<int> q0, std::vector<std::vector<int>> parts, bool canonical) {
    if (canonical) std::sort(parts.begin(), parts.end());
    return QueryKey{std::move(q0), std::move(parts)};
}

std::uint32_t mask_of(const std::vector<int>& idx) {
    std::uint32_t m = 0;
    for (int i : idx) m |= 1u << (i - 1);
    return m;
}

}  // namespace

void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& cb) {
    combinations(all_indices(n), k, cb);
}

Rational prior_s(const Instance& inst) {
    inst.validate();
    return Rational(1, binomial(inst.K, inst.M));
}

Rational prior_w_given_s(const Instance& inst, const std::vector<int>& W,
                         const std::vector<int>& S) {
    inst.validate();
    if (static_cast<int>(W.size()) != inst.D) return 0;
    for (int w : W)
        if (std::find(S.begin(), S.end(), w) != S.end()) return 0;
    return Rational(1, binomial(inst.K - inst.M, inst.D));
}

BigInt placement_count(const Instance& inst) {
    const DerivedParams p = derive_params(inst);
    const int K = inst.K, D = inst.D, M = inst.M;
    BigInt prod_rho = 1;
    for (int i = 1; i <= p.beta - 1; ++i) prod_rho *= binomial(K - i * p.alpha - p.rho, p.alpha);

    BigInt branch_b = binomial(K - p.alpha, p.rho) * prod_rho;
    BigInt branch_a;
    if (p.rho < D) {
        branch_a = binomial(D, p.rho) * binomial(K - p.alpha, p.rho) * prod_rho;
    } else {
        branch_a = binomial(M, p.rho - D) * binomial(K - p.rho, p.alpha) * prod_rho;
    }
    return branch_a + branch_b;
}

QueryDistribution query_distribution(const Instance& inst, const DemandSideInfo& ws,
                                     const ProtocolVariant& variant, std::int64_t budget) {
    const DerivedParams p = derive_params(inst);
    ws.validate(inst);
    if (placement_count(inst) > budget)
        throw BudgetExceeded(
            "exact enumeration exceeds the placement budget; use the sampled (Monte-Carlo) mode");

    const BranchWeights w = theta_weights(inst, variant);
    const bool canonical = variant.shuffle;
    const std::vector<int> everything = all_indices(inst.K);
    const std::vector<int> demand_side = sorted_union(ws.W, ws.S);
    const std::vector<int> others = sorted_difference(everything, demand_side);

    QueryDistribution dist;
    auto add = [&](std::vector<int> q0, std::vector<std::vector<int>> parts, const Rational& pr) {
        dist[make_key(std::move(q0), std::move(parts), canonical)] += pr;
    };

    BigInt prod_rho = 1;
    for (int i = 1; i <= p.beta - 1; ++i)
        prod_rho *= binomial(inst.K - i * p.alpha - p.rho, p.alpha);

    if (w.prob_a > 0) {
        if (p.rho < inst.D) {
            const Rational weight =
                w.prob_a / Rational(binomial(inst.D, p.rho) * binomial(inst.K - p.alpha, p.rho) *
                                    prod_rho);
            combinations(ws.W, p.rho, [&](const std::vector<int>& q0) {
                const std::vector<int> anchor0 = sorted_union(sorted_difference(ws.W, q0), ws.S);
                combinations(others, p.rho, [&](const std::vector<int>& fillers) {
                    const std::vector<int> anchor = sorted_union(anchor0, fillers);
                    const std::vector<int> rest = sorted_difference(others, fillers);
                    std::vector<std::vector<int>> acc;
                    labeled_partitions(rest, p.beta - 1, p.alpha, acc,
                                       [&](const std::vector<std::vector<int>>& blocks) {
                                           std::vector<std::vector<int>> parts;
                                           parts.push_back(anchor);
                                           parts.insert(parts.end(), blocks.begin(), blocks.end());
                                           add(q0, std::move(parts), weight);
                                       });
                });
            });
        } else {
            BigInt prod0 = binomial(inst.K - p.rho, p.alpha) * prod_rho;
            const Rational weight =
                w.prob_a / Rational(binomial(inst.M, p.rho - inst.D) * prod0);
            combinations(ws.S, p.rho - inst.D, [&](const std::vector<int>& extra) {
                const std::vector<int> q0 = sorted_union(ws.W, extra);
                const std::vector<int> rest = sorted_difference(everything, q0);
                std::vector<std::vector<int>> acc;
                labeled_partitions(rest, p.beta, p.alpha, acc,
                                   [&](const std::vector<std::vector<int>>& blocks) {
                                       add(q0, blocks, weight);
                                   });
            });
        }
    }

    if (w.prob_b > 0) {
        const Rational weight =
            w.prob_b / Rational(binomial(inst.K - p.alpha, p.rho) * prod_rho);
        combinations(others, p.rho, [&](const std::vector<int>& q0) {
            const std::vector<int> rest = sorted_difference(others, q0);
            std::vector<std::vector<int>> acc;
            labeled_partitions(rest, p.beta - 1, p.alpha, acc,
                               [&](const std::vector<std::vector<int>>& blocks) {
                                   std::vector<std::vector<int>> parts;
                                   parts.push_back(demand_side);
                                   parts.insert(parts.end(), blocks.begin(), blocks.end());
                                   add(q0, std::move(parts), weight);
                               });
        });
    }
    return dist;
}

std::vector<DemandSideInfo> all_demand_side_pairs(const Instance& inst) {
    std::vector<DemandSideInfo> cells;
    const std::vector<int> everything = all_indices(inst.K);
    combinations(everything, inst.M, [&](const std::vector<int>& S) {
        combinations(sorted_difference(everything, S), inst.D, [&](const std::vector<int>& W) {
            cells.push_back(DemandSideInfo{W, S});
        });
    });
    return cells;
}

JointAudit build_joint(const Instance& inst, const ProtocolVariant& variant,
                       std::int64_t budget) {
    inst.validate();
    const BigInt cells = binomial(inst.K, inst.M) * binomial(inst.K - inst.M, inst.D);
    if (placement_count(inst) * cells > budget)
        throw BudgetExceeded(
            "exact enumeration exceeds the placement budget; use the sampled (Monte-Carlo) mode");

    JointAudit joint;
    joint.inst = inst;
    const Rational ps = prior_s(inst);
    for (const auto& ws : all_demand_side_pairs(inst)) {
        const Rational pws = ps * prior_w_given_s(inst, ws.W, ws.S);
        const std::uint32_t wmask = mask_of(ws.W);
        for (auto& [key, pr] : query_distribution(inst, ws, variant, budget)) {
            KeyStats& st = joint.keys[key];
            const Rational mass = pr * pws;
            st.mass += mass;
            for (int j : ws.W) st.demand_mass[j] += mass;
            st.demand_sets.insert(wmask);
        }
    }
    return joint;
}

PosteriorReport posterior(const JointAudit& joint, const QueryKey& key) {
    auto it = joint.keys.find(key);
    if (it == joint.keys.end() || it->second.mass == 0)
        throw std::invalid_argument("unreachable query key");
    PosteriorReport r;
    for (int j = 1; j <= joint.inst.K; ++j) {
        auto dm = it->second.demand_mass.find(j);
        r.posterior[j] = dm == it->second.demand_mass.end()
                             ? Rational(0)
                             : Rational(dm->second / it->second.mass);
    }
    return r;
}

PosteriorReport posterior(const Instance& inst, const QueryKey& key,
                          const ProtocolVariant& variant, std::int64_t budget) {
    return posterior(build_joint(inst, variant, budget), key);
}

PrivacyReport audit_individual_privacy(const JointAudit& joint) {
    const Rational uniform(joint.inst.D, joint.inst.K);
    PrivacyReport report;
    report.pass = true;
    report.worst_violation = 0;
    for (const auto& [key, st] : joint.keys) {
        ++report.keys_checked;
        const PosteriorReport post = posterior(joint, key);
        for (const auto& [j, pr] : post.posterior) {
            if (pr == uniform) continue;
            report.pass = false;
            Rational dev = pr - uniform;
            if (dev < 0) dev = -dev;
            report.worst_violation = std::max(report.worst_violation, dev);
            report.violations.push_back(PrivacyViolation{key, j, pr});
        }
    }
    return report;
}

PrivacyReport audit_individual_privacy(const Instance& inst, const ProtocolVariant& variant,
                                       std::int64_t budget) {
    return audit_individual_privacy(build_joint(inst, variant, budget));
}

bool verify_theta_balance(const Instance& inst, const Rational& theta1,
                          const Rational& theta_other) {
    const DerivedParams p = derive_params(inst);
    const int K = inst.K, M = inst.M, D = inst.D, alpha = p.alpha, beta = p.beta, rho = p.rho;

    BigInt prod_full = 1, prod_rho = 1;
    for (int i = 1; i <= beta - 1; ++i) {
        prod_full *= binomial(K - i * alpha, alpha);
        prod_rho *= binomial(K - i * alpha - rho, alpha);
    }
    const Rational pa = theta1 / (theta1 + theta_other);
    const Rational pb = theta_other / (theta1 + theta_other);

    if (rho < D) {
        const Rational lhs = pa * Rational(binomial(alpha, M + rho) * binomial(M + rho, M) *
                                               factorial(beta),
                                           binomial(D, rho) * binomial(K - alpha, rho) * prod_rho);
        const Rational rhs =
            Rational(binomial(alpha - 1, M) * factorial(beta - 1)) *
            (pb / Rational(prod_full) +
             pa * Rational(D - rho, D) / Rational(binomial(K - alpha, rho) * prod_rho));
        return lhs == rhs;
    }
    const BigInt prod0 = binomial(K - rho, alpha) * prod_rho;
    const Rational lhs =
        pa * Rational(binomial(rho, D) * binomial(K - rho, alpha - rho) * factorial(beta),
                      binomial(M, rho - D) * prod0);
    const Rational rhs =
        pb * Rational(binomial(alpha - 1, M) * factorial(beta - 1), prod_full);
    return lhs == rhs;
}

bool verify_theta_balance(const Instance& inst) {
    const BranchWeights w = theta_weights(inst);
    return verify_theta_balance(inst, w.theta1, w.theta2 ? *w.theta2 : *w.theta3);
}

CertainCover min_certain_cover(const JointAudit& joint, const QueryKey& key) {
    auto it = joint.keys.find(key);
    if (it == joint.keys.end() || it->second.mass == 0)
        throw std::invalid_argument("unreachable query key");
    const auto& wmasks = it->second.demand_sets;
    for (int size = 0; size <= joint.inst.K; ++size) {
        CertainCover result;
        bool found = false;
        for_each_subset(joint.inst.K, size, [&](const std::vector<int>& J) {
            if (found) return;
            const std::uint32_t jmask = mask_of(J);
            for (std::uint32_t wm : wmasks)
                if ((wm & jmask) == 0) return;
            found = true;
            result.size = size;
            result.witness = J;
        });
        if (found) return result;
    }
    throw std::logic_error("no certain cover");  // unreachable: J = [K] always works
}

bool decodability_check(const Query& query, const std::vector<int>& Sstar,
                        const std::vector<int>& Wstar) {
    const int M = static_cast<int>(Sstar.size());
    const int D = static_cast<int>(Wstar.size());
    if (D != query.D) throw std::invalid_argument("|Wstar| must equal D");
    if (M + D != query.alpha) throw std::invalid_argument("|Sstar| must equal M");
    for (int s : Sstar)
        if (std::find(Wstar.begin(), Wstar.end(), s) != Wstar.end())
            throw std::invalid_argument("Wstar and Sstar must be disjoint");

    Matrix m = coefficient_matrix(query);
    for (int s : Sstar) m.add_row(unit_row(m.n_cols, s - 1, query.q));
    for (int j : Wstar)
        if (!in_row_space(m, unit_row(m.n_cols, j - 1, query.q))) return false;
    return true;
}

Query query_from_key(const Instance& inst, const QueryKey& key) {
    const DerivedParams p = derive_params(inst);
    if (static_cast<int>(key.q0.size()) != p.rho)
        throw std::invalid_argument("key q0 size does not match rho");
    if (static_cast<int>(key.parts.size()) != p.beta)
        throw std::invalid_argument("key part count does not match beta");
    std::vector<int> seen = key.q0;
    for (const auto& blk : key.parts) {
        if (static_cast<int>(blk.size()) != p.alpha)
            throw std::invalid_argument("key part size does not match alpha");
        seen.insert(seen.end(), blk.begin(), blk.end());
    }
    std::sort(seen.begin(), seen.end());
    if (seen != all_indices(inst.K)) throw std::invalid_argument("key is not a partition of [K]");

    Partition part;
    part.q0 = key.q0;
    part.parts = key.parts;
    Rng rng(1);
    return build_query(inst, part, rng, ProtocolVariant{false, false, false});
}

DecodabilityReport audit_decodability(const JointAudit& joint) {
    const Instance& inst = joint.inst;
    DecodabilityReport report;
    report.pass = true;
    const std::vector<int> everything = all_indices(inst.K);
    for (const auto& [key, st] : joint.keys) {
        ++report.keys_checked;
        const Query query = query_from_key(inst, key);
        for (int j = 1; j <= inst.K; ++j) {
            bool ok = false;
            combinations(everything, inst.D, [&](const std::vector<int>& Wstar) {
                if (ok || std::find(Wstar.begin(), Wstar.end(), j) == Wstar.end()) return;
                combinations(sorted_difference(everything, Wstar), inst.M,
                             [&](const std::vector<int>& Sstar) {
                                 if (ok) return;
                                 if (decodability_check(query, Sstar, Wstar)) ok = true;
                             });
            });
            if (!ok) {
                report.pass = false;
                report.failures.push_back(DecodabilityFailure{key, j});
            }
        }
    }
    return report;
}

DecodabilityReport audit_decodability(const Instance& inst, std::int64_t budget) {
    return audit_decodability(build_joint(inst, {}, budget));
}

Rational measured_rate(const Query& query) {
    return Rational(query.D, rank(coefficient_matrix(query)));
}

McPrivacyReport mc_privacy_smoke(const Instance& inst, std::uint64_t samples, std::uint64_t seed,
                                 const ProtocolVariant& variant) {
    inst.validate();
    Rng rng(seed);
    const std::vector<int> everything = all_indices(inst.K);

    std::vector<std::uint64_t> q0_seen(inst.K + 1), q0_dem(inst.K + 1), pt_seen(inst.K + 1),
        pt_dem(inst.K + 1);
    for (std::uint64_t s = 0; s < samples; ++s) {
        DemandSideInfo ws;
        ws.S = rng.subset(everything, inst.M);
        ws.W = rng.subset(sorted_difference(everything, ws.S), inst.D);
        const Partition part = sample_partition(inst, ws, rng, variant);
        std::vector<bool> in_q0(inst.K + 1, false), in_w(inst.K + 1, false);
        for (int i : part.q0) in_q0[i] = true;
        for (int i : ws.W) in_w[i] = true;
        for (int j = 1; j <= inst.K; ++j) {
            if (in_q0[j]) {
                ++q0_seen[j];
                q0_dem[j] += in_w[j];
            } else {
                ++pt_seen[j];
                pt_dem[j] += in_w[j];
            }
        }
    }

    const Rational p(inst.D, inst.K);
    McPrivacyReport report;
    report.samples = samples;
    report.pass = true;
    auto account = [&](int j, const char* name, std::uint64_t seen, std::uint64_t dem) {
        if (seen == 0) return;
        McBucket b;
        b.j = j;
        b.bucket = name;
        b.seen = seen;
        b.demanded = dem;
        // n * (phat - p)^2 <= 9 p (1-p), all rational
        const Rational phat = Rational(BigInt(dem), BigInt(seen));
        const Rational dev = phat - p;
        b.ok = Rational(BigInt(seen)) * dev * dev <= 9 * p * (1 - p);
        report.pass = report.pass && b.ok;
        report.buckets.push_back(std::move(b));
    };
    for (int j = 1; j <= inst.K; ++j) {
        account(j, "q0", q0_seen[j], q0_dem[j]);
        account(j, "part", pt_seen[j], pt_dem[j]);
    }
    return report;
}

}  // namespace gpcip
