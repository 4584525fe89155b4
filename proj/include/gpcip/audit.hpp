#pragma once

#include "gpcip/errors.hpp"
#include "gpcip/protocol.hpp"
#include "gpcip/rational.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace gpcip {

/// Canonical observable of a query. The step-2 permutation is uniform and the
/// coefficient rows are the same for every (W, S), so the pair
/// (q0, sorted parts) carries all information the server gets. For the
/// no-shuffle protocol variant the parts keep their sent order instead.
struct QueryKey {
    std::vector<int> q0;
    std::vector<std::vector<int>> parts;

    auto operator<=>(const QueryKey&) const = default;
};

using QueryDistribution = std::map<QueryKey, Rational>;

struct KeyStats {
    Rational mass;                       // joint probability of observing the key
    std::map<int, Rational> demand_mass; // joint mass with j demanded, per index
    std::set<std::uint32_t> demand_sets; // bitmask (bit j-1) of every consistent W
};

struct JointAudit {
    Instance inst;
    std::map<QueryKey, KeyStats> keys;
};

struct PosteriorReport {
    std::map<int, Rational> posterior;  // P(j in W | key) per index
};

struct PrivacyViolation {
    QueryKey key;
    int j = 0;
    Rational posterior;
};

struct PrivacyReport {
    bool pass = false;
    std::size_t keys_checked = 0;
    Rational worst_violation;  // max |posterior - D/K| over all keys and indices
    std::vector<PrivacyViolation> violations;
};

struct CertainCover {
    int size = 0;
    std::vector<int> witness;
};

struct DecodabilityFailure {
    QueryKey key;
    int j = 0;
};

struct DecodabilityReport {
    bool pass = false;
    std::size_t keys_checked = 0;
    std::vector<DecodabilityFailure> failures;
};

struct McBucket {
    int j = 0;
    std::string bucket;  // "q0" or "part"
    std::uint64_t seen = 0;
    std::uint64_t demanded = 0;
    bool ok = true;
};

struct McPrivacyReport {
    std::uint64_t samples = 0;
    bool pass = false;
    std::vector<McBucket> buckets;
};

inline constexpr std::int64_t kDefaultBudget = 10'000'000;

Rational prior_s(const Instance& inst);
Rational prior_w_given_s(const Instance& inst, const std::vector<int>& W,
                         const std::vector<int>& S);

/// Labeled step-1 placements per (W, S) cell; the budget guard compares the
/// total over all cells against the enumeration budget.
BigInt placement_count(const Instance& inst);

/// Exhaustive-enumeration oracle for the step-1/step-2 randomness of one
/// (W, S) cell. Masses sum to exactly 1.
QueryDistribution query_distribution(const Instance& inst, const DemandSideInfo& ws,
                                     const ProtocolVariant& variant = {},
                                     std::int64_t budget = kDefaultBudget);

/// Aggregates query distributions over all (W, S) weighted by the priors.
JointAudit build_joint(const Instance& inst, const ProtocolVariant& variant = {},
                       std::int64_t budget = kDefaultBudget);

PosteriorReport posterior(const JointAudit& joint, const QueryKey& key);
PosteriorReport posterior(const Instance& inst, const QueryKey& key,
                          const ProtocolVariant& variant = {},
                          std::int64_t budget = kDefaultBudget);

/// Pass iff P(j in W | key) = D/K exactly for every reachable key and index.
PrivacyReport audit_individual_privacy(const Instance& inst, const ProtocolVariant& variant = {},
                                       std::int64_t budget = kDefaultBudget);
PrivacyReport audit_individual_privacy(const JointAudit& joint);

/// Both sides of the branch-weight balance identity as exact rationals.
bool verify_theta_balance(const Instance& inst);
bool verify_theta_balance(const Instance& inst, const Rational& theta1,
                          const Rational& theta_other);

/// Minimum-cardinality set intersecting every demand set consistent with key.
CertainCover min_certain_cover(const JointAudit& joint, const QueryKey& key);

/// True iff every demanded unit vector of Wstar lies in the row space of the
/// coefficient matrix augmented with the unit vectors of Sstar.
bool decodability_check(const Query& query, const std::vector<int>& Sstar,
                        const std::vector<int>& Wstar);

/// For every reachable key and every index j, some disjoint (Wstar with j,
/// Sstar) must be rank-decodable.
DecodabilityReport audit_decodability(const Instance& inst, std::int64_t budget = kDefaultBudget);
DecodabilityReport audit_decodability(const JointAudit& joint);

/// Rebuilds a representative query (deterministic coefficient rows) from an
/// observed key.
Query query_from_key(const Instance& inst, const QueryKey& key);

Rational measured_rate(const Query& query);

/// Sampling-based smoke test: per index and block kind, the demand frequency
/// must sit within 3 sigma of D/K. Statistical only; never a substitute for
/// the exact audit.
McPrivacyReport mc_privacy_smoke(const Instance& inst, std::uint64_t samples, std::uint64_t seed,
                                 const ProtocolVariant& variant = {});

/// Enumerates all (W, S) cells of an instance in lexicographic order.
std::vector<DemandSideInfo> all_demand_side_pairs(const Instance& inst);

void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& cb);

}  // namespace gpcip
