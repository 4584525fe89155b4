#pragma once

#include "gpcip/field.hpp"
#include "gpcip/linalg.hpp"
#include "gpcip/rational.hpp"
#include "gpcip/rng.hpp"

#include <map>
#include <optional>
#include <vector>

namespace gpcip {

/// Problem parameters. K messages of length m over GF(q); the aggregator
/// holds M side-information messages and retrieves D demands.
struct Instance {
    int K = 0;
    int M = 0;
    int D = 0;
    std::uint32_t q = 0;
    int m = 1;

    void validate() const;
    int alpha() const { return M + D; }
};

struct DerivedParams {
    int alpha = 0;
    int beta = 0;
    int rho = 0;
    int gamma = 0;
    std::vector<Fp> omegas;  // the first alpha field elements 0,1,...,alpha-1
};

struct DemandSideInfo {
    std::vector<int> W;  // demand indices, sorted, 1-based
    std::vector<int> S;  // side information indices, sorted, 1-based

    void validate(const Instance& inst) const;
};

enum class Branch { A, B };

struct Partition {
    std::vector<int> q0;                  // sorted
    std::vector<std::vector<int>> parts;  // each sorted; order = construction order
    Branch branch = Branch::A;
};

struct BranchWeights {
    Rational theta1;
    std::optional<Rational> theta2;  // defined when rho < D
    std::optional<Rational> theta3;  // defined when rho >= D
    Rational prob_a;                 // probability of the structured branch
    Rational prob_b;
};

/// Knobs for the deliberately broken protocol variants the audit must catch.
struct ProtocolVariant {
    bool always_branch_a = false;
    bool double_theta1 = false;
    bool shuffle = true;  // false drops the part permutation from step 2
};

struct QueryBlock {
    std::vector<int> indices;                 // sorted, 1-based
    std::vector<std::vector<Fp>> coeff_rows;  // row i holds omega_l^{i-1}
};

struct Query {
    int K = 0;
    std::uint32_t q = 0;
    int m = 1;
    int rho = 0;
    int alpha = 0;
    int gamma = 0;
    int D = 0;
    QueryBlock q0;
    std::vector<QueryBlock> parts;
};

struct Answer {
    std::vector<MessageVec> a0;               // gamma combinations over q0
    std::vector<std::vector<MessageVec>> ai;  // D combinations per part
};

DerivedParams derive_params(const Instance& inst);

BranchWeights theta_weights(const Instance& inst, const ProtocolVariant& variant = {});

/// Step 1: draw the branch by its exact rational probability, then place
/// indices uniformly subject to the branch constraints.
Partition sample_partition(const Instance& inst, const DemandSideInfo& ws, Rng& rng,
                           const ProtocolVariant& variant = {});

/// Step 2: attach the deterministic coefficient rows and shuffle the parts.
Query build_query(const Instance& inst, const Partition& partition, Rng& rng,
                  const ProtocolVariant& variant = {});

/// Step 3: per-block linear combinations of the stored messages.
Answer answer_query(const Query& query, const std::vector<MessageVec>& messages);

/// Step 4: subtract side information per block and solve the residual square
/// Vandermonde systems; returns the demanded messages keyed by index.
std::map<int, MessageVec> recover(const Query& query, const Answer& answer,
                                  const DemandSideInfo& ws,
                                  const std::map<int, MessageVec>& side_values);

/// K-column matrix with one row per answer equation.
Matrix coefficient_matrix(const Query& query);

/// The two-branch achievable-rate formula.
Rational achievable_rate(int K, int M, int D);

}  // namespace gpcip
