#include "gpcip/relation.hpp"

#include "gpcip/errors.hpp"
#include "gpcip/linalg.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <stdexcept>

namespace gpcip {

namespace {

std::vector<int> mask_to_nodes(std::uint64_t m) {
    std::vector<int> out;
    while (m) {
        out.push_back(std::countr_zero(m) + 1);
        m &= m - 1;
    }
    return out;
}

void for_each_mask_of_size(int n, int k, const std::function<void(std::uint64_t)>& cb) {
    if (k == 0) {
        cb(0);
        return;
    }
    if (k > n) return;
    std::uint64_t c = (1ull << k) - 1;
    const std::uint64_t last = ((1ull << k) - 1) << (n - k);
    for (;;) {
        cb(c);
        if (c == last) break;
        std::uint64_t lo = c & -c;
        std::uint64_t left = c + lo;
        c = left | (((c ^ left) / lo) >> 2);
    }
}

}  // namespace

void SetRelation::validate_total() const {
    if (K < 1 || K > 62) throw std::invalid_argument("K must be in [1, 62]");
    if (M < 0 || D < 1) throw std::invalid_argument("invalid relation parameters");
    for (int size = 0; size <= M; ++size)
        for_each_mask_of_size(K, size, [&](std::uint64_t I) {
            if (!f.count(I)) throw std::invalid_argument("relation is not total on its domain");
        });
    for (const auto& [I, J] : f) {
        if ((I | full_mask()) != full_mask() || (J | full_mask()) != full_mask())
            throw std::invalid_argument("relation entry out of range");
        if (std::popcount(I) > M) throw std::invalid_argument("domain entry larger than M");
    }
}

GoodRelationReport validate_good(const SetRelation& rel, Condition4Variant variant) {
    rel.validate_total();
    GoodRelationReport rep;

    for (const auto& [I, J] : rel.f) {
        if (std::popcount(J) < rel.D) {
            rep.codomain_ok = false;
            rep.nonconforming.push_back(mask_to_nodes(I));
        }
        if ((I & ~J) != 0) {
            rep.contains_input.pass = false;
            rep.contains_input.witnesses.push_back(mask_to_nodes(I));
        }
    }

    // (ii): j is coverable iff some f(I) \ I both contains j and has >= D elements
    for (int j = 1; j <= rel.K; ++j) {
        const std::uint64_t jbit = 1ull << (j - 1);
        bool ok = false;
        for (const auto& [I, J] : rel.f) {
            const std::uint64_t pool = J & ~I;
            if ((pool & jbit) && std::popcount(pool) >= rel.D) {
                ok = true;
                break;
            }
        }
        if (!ok) {
            rep.demand_cover.pass = false;
            rep.demand_cover.witnesses.push_back({j});
        }
    }

    for (const auto& [i1, j1] : rel.f)
        for (const auto& [i2, j2] : rel.f)
            if ((i2 & ~j1) == 0 && (j2 & ~j1) != 0) {
                rep.closure.pass = false;
                if (rep.closure.witnesses.size() < 8) {
                    rep.closure.witnesses.push_back(mask_to_nodes(i1));
                    rep.closure.witnesses.push_back(mask_to_nodes(i2));
                }
            }

    // (iv): in the literal variant, witnesses are restricted to nonempty I
    // whose image conforms to the codomain (|f(I)| >= D); the excluding-I
    // variant admits every nonempty I, since f(I) \ I is already a reduced
    // image with no codomain reading attached.
    const int jstar_limit = (rel.K + rel.D - 1) / rel.D;  // ceil(K/D)
    for (int size = 1; size < jstar_limit; ++size) {
        for_each_mask_of_size(rel.K, size, [&](std::uint64_t jstar) {
            bool avoided = false;
            for (const auto& [I, J] : rel.f) {
                if (I == 0) continue;
                if (variant == Condition4Variant::Literal && std::popcount(J) < rel.D) continue;
                const std::uint64_t image = variant == Condition4Variant::Literal ? J : (J & ~I);
                if ((image & jstar) == 0) {
                    avoided = true;
                    break;
                }
            }
            if (!avoided) {
                rep.avoidance.pass = false;
                if (rep.avoidance.witnesses.size() < 8)
                    rep.avoidance.witnesses.push_back(mask_to_nodes(jstar));
            }
        });
    }

    rep.good = rep.contains_input.pass && rep.demand_cover.pass && rep.closure.pass &&
               rep.avoidance.pass;
    return rep;
}

CoverSearchResult min_cover_size(const SetRelation& rel, int budget) {
    rel.validate_total();
    if (rel.K > budget) throw BudgetExceeded("relation exceeds the cover-search budget");

    // union of f(I) over I subset of istar is monotone in istar, so search by size
    for (int size = 0; size <= rel.K; ++size) {
        CoverSearchResult result;
        for_each_mask_of_size(rel.K, size, [&](std::uint64_t istar) {
            if (result.found) return;
            std::uint64_t covered = 0;
            for (const auto& [I, J] : rel.f)
                if ((I & ~istar) == 0) covered |= J;
            if (covered == rel.full_mask()) {
                result.found = true;
                result.size = size;
                result.witness = mask_to_nodes(istar);
            }
        });
        if (result.found) return result;
    }
    return CoverSearchResult{};  // no cover exists
}

int cover_bound(int K, int M, int D) {
    const int alpha = M + D;
    const int ceil_term = K - D * ((K + alpha - 1) / alpha);
    const int floor_term = M * (K / alpha);
    return std::max(ceil_term, floor_term);
}

CoverBoundReport check_cover_bound(const SetRelation& rel, Condition4Variant variant) {
    const GoodRelationReport validation = validate_good(rel, variant);
    if (!validation.good)
        throw std::invalid_argument("cover bound applies to good relations only");
    const CoverSearchResult cover = min_cover_size(rel);
    CoverBoundReport rep;
    rep.cover_found = cover.found;
    rep.cover_size = cover.size;
    rep.bound = cover_bound(rel.K, rel.M, rel.D);
    rep.ok = cover.found && cover.size <= rep.bound;
    return rep;
}

SetRelation relation_from_graph(const Digraph& g, int D) {
    SetRelation rel;
    rel.K = g.n();
    rel.M = 1;
    rel.D = D;
    rel.f[0] = 0;
    for (int v = 1; v <= g.n(); ++v) rel.f[1ull << (v - 1)] = reach_mask(g, v);
    return rel;
}

SetRelation relation_from_protocol(const Instance& inst, const Query& query) {
    inst.validate();
    SetRelation rel;
    rel.K = inst.K;
    rel.M = inst.M;
    rel.D = inst.D;

    const Matrix base = coefficient_matrix(query);
    auto closure = [&](std::uint64_t start) {
        std::uint64_t cur = start;
        for (;;) {
            Matrix m = base;
            for (int i = 1; i <= inst.K; ++i)
                if (cur >> (i - 1) & 1) m.add_row(unit_row(m.n_cols, i - 1, inst.q));
            std::uint64_t next = cur;
            for (int j = 1; j <= inst.K; ++j) {
                if (next >> (j - 1) & 1) continue;
                if (in_row_space(m, unit_row(m.n_cols, j - 1, inst.q))) next |= 1ull << (j - 1);
            }
            if (next == cur) return cur;
            cur = next;
        }
    };

    for (int size = 0; size <= inst.M; ++size)
        for_each_mask_of_size(inst.K, size, [&](std::uint64_t I) { rel.f[I] = closure(I); });
    return rel;
}

}  // namespace gpcip
