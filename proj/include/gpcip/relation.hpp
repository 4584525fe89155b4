#pragma once

#include "gpcip/digraph.hpp"
#include "gpcip/protocol.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace gpcip {

enum class Condition4Variant {
    Literal,      // f(I) must avoid J*
    ExcludingI,   // f(I) \ I must avoid J*
};

/// A set relation f: every I in [K] with |I| <= M maps to a subset f(I).
/// Sets are stored as bitmasks (bit j-1 for index j). The codomain rule
/// |f(I)| >= D is reported by the validator, not enforced here: relations
/// induced by live protocols can violate it.
struct SetRelation {
    int K = 0;
    int M = 0;
    int D = 0;
    std::map<std::uint64_t, std::uint64_t> f;

    /// Throws unless f is total on {I : |I| <= M}.
    void validate_total() const;

    std::uint64_t full_mask() const { return K == 64 ? ~0ull : (1ull << K) - 1; }
};

struct ConditionReport {
    bool pass = true;
    // first offending inputs, as index lists (meaning depends on the condition)
    std::vector<std::vector<int>> witnesses;
};

struct GoodRelationReport {
    ConditionReport contains_input;   // (i)   I subset of f(I)
    ConditionReport demand_cover;     // (ii)  every j in a disjoint D-set of some f(I)
    ConditionReport closure;          // (iii) I2 in f(I1) implies f(I2) in f(I1)
    ConditionReport avoidance;        // (iv)  every small J* avoided by some f(I)
    bool codomain_ok = true;          // |f(I)| >= D for all I
    std::vector<std::vector<int>> nonconforming;  // the I with |f(I)| < D
    bool good = false;                // all four conditions pass
};

GoodRelationReport validate_good(const SetRelation& rel, Condition4Variant variant);

struct CoverSearchResult {
    bool found = false;   // false = no cover exists (size is meaningless then)
    int size = 0;
    std::vector<int> witness;
};

/// Minimum |I*| whose sub-subsets of size <= M have images covering [K].
CoverSearchResult min_cover_size(const SetRelation& rel, int budget = 20);

/// max{K - D*ceil(K/(M+D)), M*floor(K/(M+D))}.
int cover_bound(int K, int M, int D);

struct CoverBoundReport {
    int cover_size = 0;
    bool cover_found = false;
    int bound = 0;
    bool ok = false;
};

/// Requires a good relation (throws otherwise); checks the cover bound.
CoverBoundReport check_cover_bound(const SetRelation& rel, Condition4Variant variant);

/// M = 1 relation from a digraph: f({v}) = reach set of v, f(empty) = empty.
SetRelation relation_from_graph(const Digraph& g, int D);

/// f(I) = closure of the messages decodable from the answer given side set I,
/// by repeated row-space membership of unit vectors.
SetRelation relation_from_protocol(const Instance& inst, const Query& query);

}  // namespace gpcip
