#include "gpcip/protocol.hpp"

#include <algorithm>
#include <set>
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

std::vector<std::vector<Fp>> power_rows(const std::vector<Fp>& omegas, int n_rows, int n_cols) {
    std::vector<std::vector<Fp>> rows;
    rows.reserve(n_rows);
    for (int i = 1; i <= n_rows; ++i) {
        std::vector<Fp> row;
        row.reserve(n_cols);
        for (int l = 0; l < n_cols; ++l) row.push_back(omegas[l].pow(i - 1));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

void Instance::validate() const {
    if (D < 2) throw std::invalid_argument("D must be >= 2");
    if (M < 1) throw std::invalid_argument("M must be >= 1");
    if (D + M > K) throw std::invalid_argument("D+M must be <= K");
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    if (!is_prime(q)) throw std::invalid_argument("q must be prime");
    if (static_cast<int>(q) < alpha()) throw std::invalid_argument("field too small: q < M+D");
}

void DemandSideInfo::validate(const Instance& inst) const {
    auto in_range = [&](const std::vector<int>& v) {
        for (int i : v)
            if (i < 1 || i > inst.K) return false;
        return true;
    };
    if (!in_range(W) || !in_range(S)) throw std::invalid_argument("index out of range");
    std::set<int> w(W.begin(), W.end()), s(S.begin(), S.end());
    if (static_cast<int>(w.size()) != inst.D || w.size() != W.size())
        throw std::invalid_argument("|W| must equal D");
    if (static_cast<int>(s.size()) != inst.M || s.size() != S.size())
        throw std::invalid_argument("|S| must equal M");
    for (int i : W)
        if (s.count(i)) throw std::invalid_argument("W and S must be disjoint");
}

DerivedParams derive_params(const Instance& inst) {
    inst.validate();
    DerivedParams p;
    p.alpha = inst.alpha();
    p.beta = inst.K / p.alpha;
    p.rho = inst.K - p.alpha * p.beta;
    p.gamma = std::min(p.rho, inst.D);
    p.omegas.reserve(p.alpha);
    for (int l = 0; l < p.alpha; ++l) p.omegas.push_back(Fp(l, inst.q));
    return p;
}

BranchWeights theta_weights(const Instance& inst, const ProtocolVariant& variant) {
    const DerivedParams p = derive_params(inst);
    const int K = inst.K, M = inst.M, D = inst.D;
    const int alpha = p.alpha, beta = p.beta, rho = p.rho;

    BigInt prod_full = 1;   // prod_{i=1}^{beta-1} C(K - i*alpha, alpha)
    BigInt prod_rho = 1;    // prod_{i=1}^{beta-1} C(K - i*alpha - rho, alpha)
    for (int i = 1; i <= beta - 1; ++i) {
        prod_full *= binomial(K - i * alpha, alpha);
        prod_rho *= binomial(K - i * alpha - rho, alpha);
    }

    BranchWeights w;
    w.theta1 = Rational(binomial(alpha - 1, M), prod_full);
    if (rho < D) {
        Rational lead(binomial(alpha - 1, M + rho) * binomial(M + rho, M));
        Rational bracket = Rational(alpha * beta, D - rho) - 1;
        Rational den(binomial(D, rho) * binomial(K - alpha, rho) * prod_rho);
        w.theta2 = lead * bracket / den;
    } else {
        BigInt num = BigInt(beta) * binomial(rho, D) * binomial(K - rho, alpha - rho);
        BigInt den = binomial(M, rho - D) * binomial(K - rho, alpha) * prod_rho;
        w.theta3 = Rational(num, den);
    }

    Rational t1 = w.theta1;
    if (variant.double_theta1) t1 *= 2;
    const Rational other = rho < D ? *w.theta2 : *w.theta3;
    w.prob_a = t1 / (t1 + other);
    w.prob_b = other / (t1 + other);
    if (variant.always_branch_a) {
        w.prob_a = 1;
        w.prob_b = 0;
    }
    return w;
}

namespace {

// Uniform partition of pool into `blocks` labeled alpha-sets.
std::vector<std::vector<int>> random_blocks(std::vector<int> pool, int blocks, int alpha,
                                            Rng& rng) {
    rng.shuffle(pool);
    std::vector<std::vector<int>> out;
    out.reserve(blocks);
    auto it = pool.begin();
    for (int b = 0; b < blocks; ++b) {
        std::vector<int> blk(it, it + alpha);
        std::sort(blk.begin(), blk.end());
        out.push_back(std::move(blk));
        it += alpha;
    }
    return out;
}

}  // namespace

Partition sample_partition(const Instance& inst, const DemandSideInfo& ws, Rng& rng,
                           const ProtocolVariant& variant) {
    const DerivedParams p = derive_params(inst);
    ws.validate(inst);
    const BranchWeights w = theta_weights(inst, variant);
    const std::vector<int> everything = all_indices(inst.K);
    const std::vector<int> demand_side = sorted_union(ws.W, ws.S);
    const std::vector<int> others = sorted_difference(everything, demand_side);

    Partition part;
    part.branch = rng.bernoulli(w.prob_a) ? Branch::A : Branch::B;

    if (part.branch == Branch::B) {
        // one part is exactly S u W; everything else is uniform
        part.q0 = rng.subset(others, p.rho);
        std::vector<int> rest = sorted_difference(others, part.q0);
        part.parts.push_back(demand_side);
        auto blocks = random_blocks(rest, p.beta - 1, p.alpha, rng);
        part.parts.insert(part.parts.end(), blocks.begin(), blocks.end());
        return part;
    }

    if (p.rho < inst.D) {
        // rho demand indices go to q0; the rest of W plus all of S anchor one
        // part, padded with rho uniform fillers
        part.q0 = rng.subset(ws.W, p.rho);
        std::vector<int> fillers = rng.subset(others, p.rho);
        std::vector<int> anchor = sorted_union(sorted_difference(ws.W, part.q0), ws.S);
        part.parts.push_back(sorted_union(anchor, fillers));
        std::vector<int> rest = sorted_difference(others, fillers);
        auto blocks = random_blocks(rest, p.beta - 1, p.alpha, rng);
        part.parts.insert(part.parts.end(), blocks.begin(), blocks.end());
    } else {
        // all of W plus rho-D side indices go to q0; the rest is uniform
        std::vector<int> extra = rng.subset(ws.S, p.rho - inst.D);
        part.q0 = sorted_union(ws.W, extra);
        std::vector<int> rest = sorted_difference(everything, part.q0);
        part.parts = random_blocks(rest, p.beta, p.alpha, rng);
    }
    return part;
}

Query build_query(const Instance& inst, const Partition& partition, Rng& rng,
                  const ProtocolVariant& variant) {
    const DerivedParams p = derive_params(inst);
    Query query;
    query.K = inst.K;
    query.q = inst.q;
    query.m = inst.m;
    query.rho = p.rho;
    query.alpha = p.alpha;
    query.gamma = p.gamma;
    query.D = inst.D;
    query.q0.indices = partition.q0;
    query.q0.coeff_rows = power_rows(p.omegas, p.gamma, p.rho);
    for (const auto& blk : partition.parts) {
        QueryBlock b;
        b.indices = blk;
        b.coeff_rows = power_rows(p.omegas, inst.D, p.alpha);
        query.parts.push_back(std::move(b));
    }
    if (variant.shuffle) rng.shuffle(query.parts);
    return query;
}

Answer answer_query(const Query& query, const std::vector<MessageVec>& messages) {
    if (static_cast<int>(messages.size()) != query.K)
        throw std::invalid_argument("message count mismatch");
    for (const auto& x : messages)
        if (static_cast<int>(x.size()) != query.m)
            throw std::invalid_argument("message length mismatch");

    auto combine = [&](const QueryBlock& blk) {
        std::vector<MessageVec> out;
        for (const auto& row : blk.coeff_rows) {
            MessageVec acc = MessageVec::zero(query.m, query.q);
            for (std::size_t l = 0; l < blk.indices.size(); ++l)
                acc += row[l] * messages[blk.indices[l] - 1];
            out.push_back(std::move(acc));
        }
        return out;
    };

    Answer ans;
    ans.a0 = combine(query.q0);
    for (const auto& blk : query.parts) ans.ai.push_back(combine(blk));
    return ans;
}

std::map<int, MessageVec> recover(const Query& query, const Answer& answer,
                                  const DemandSideInfo& ws,
                                  const std::map<int, MessageVec>& side_values) {
    if (answer.a0.size() != query.q0.coeff_rows.size() || answer.ai.size() != query.parts.size())
        throw std::invalid_argument("query/answer block count mismatch");
    for (std::size_t i = 0; i < query.parts.size(); ++i)
        if (answer.ai[i].size() != query.parts[i].coeff_rows.size())
            throw std::invalid_argument("query/answer block count mismatch");
    for (int s : ws.S)
        if (!side_values.count(s)) throw std::invalid_argument("missing side information value");

    const std::set<int> demands(ws.W.begin(), ws.W.end());
    const std::set<int> side(ws.S.begin(), ws.S.end());
    std::vector<Fp> omegas;
    for (int l = 0; l < query.alpha; ++l) omegas.push_back(Fp(l, query.q));

    std::map<int, MessageVec> out;
    auto solve_block = [&](const QueryBlock& blk, const std::vector<MessageVec>& rhs) {
        bool has_demand = false;
        for (int i : blk.indices) has_demand |= demands.count(i) > 0;
        if (!has_demand) return;

        std::vector<std::size_t> unknown_pos;
        std::vector<MessageVec> residual = rhs;
        for (std::size_t l = 0; l < blk.indices.size(); ++l) {
            int idx = blk.indices[l];
            if (side.count(idx)) {
                for (std::size_t j = 0; j < residual.size(); ++j)
                    residual[j] -= blk.coeff_rows[j][l] * side_values.at(idx);
            } else {
                unknown_pos.push_back(l);
            }
        }
        if (unknown_pos.size() > residual.size())
            throw std::runtime_error("undecodable: more unknowns than equations");

        std::vector<Fp> nodes;
        for (std::size_t l : unknown_pos) nodes.push_back(omegas[l]);
        std::vector<MessageVec> rhs_square(residual.begin(),
                                           residual.begin() + unknown_pos.size());
        auto solution = vandermonde_solve(nodes, rhs_square);

        // surplus equations must agree with the solution
        for (std::size_t j = unknown_pos.size(); j < residual.size(); ++j) {
            MessageVec check = MessageVec::zero(query.m, query.q);
            for (std::size_t t = 0; t < unknown_pos.size(); ++t)
                check += blk.coeff_rows[j][unknown_pos[t]] * solution[t];
            if (!(check == residual[j])) throw std::runtime_error("undecodable: inconsistent block");
        }
        for (std::size_t t = 0; t < unknown_pos.size(); ++t) {
            int idx = blk.indices[unknown_pos[t]];
            if (demands.count(idx)) out.emplace(idx, solution[t]);
        }
    };

    if (!query.q0.indices.empty()) solve_block(query.q0, answer.a0);
    for (std::size_t i = 0; i < query.parts.size(); ++i) solve_block(query.parts[i], answer.ai[i]);

    if (out.size() != demands.size()) throw std::runtime_error("undecodable: demand not covered");
    return out;
}

Matrix coefficient_matrix(const Query& query) {
    Matrix m(static_cast<std::size_t>(query.K));
    auto emit = [&](const QueryBlock& blk) {
        for (const auto& row : blk.coeff_rows) {
            std::vector<Fp> full(query.K, Fp(0, query.q));
            for (std::size_t l = 0; l < blk.indices.size(); ++l)
                full[blk.indices[l] - 1] = row[l];
            m.add_row(std::move(full));
        }
    };
    emit(query.q0);
    for (const auto& blk : query.parts) emit(blk);
    return m;
}

Rational achievable_rate(int K, int M, int D) {
    if (D < 2 || M < 1 || D + M > K) throw std::invalid_argument("invalid (K, M, D)");
    const int alpha = M + D;
    const int beta = K / alpha;
    if (K - D <= alpha * beta) return Rational(D, K - M * beta);
    return Rational(1, (K + alpha - 1) / alpha);
}

}  // namespace gpcip
