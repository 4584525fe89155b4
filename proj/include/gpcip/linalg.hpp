#pragma once

#include "gpcip/field.hpp"

#include <cstddef>
#include <vector>

namespace gpcip {

/// Rectangular matrix over GF(q); row-major, entries carry the modulus.
struct Matrix {
    std::size_t n_cols = 0;
    std::vector<std::vector<Fp>> rows;

    Matrix() = default;
    explicit Matrix(std::size_t cols) : n_cols(cols) {}

    void add_row(std::vector<Fp> row);
    std::size_t n_rows() const { return rows.size(); }
    Matrix transposed() const;
};

std::vector<Fp> unit_row(std::size_t n, std::size_t one_pos, std::uint32_t q);

/// Rank over GF(q) by exact elimination.
std::size_t rank(const Matrix& m);

/// True iff v is an F_q-linear combination of the rows of m.
bool in_row_space(const Matrix& m, const std::vector<Fp>& v);

/// Solves sum_l omega_l^{j-1} x_l = rhs_j for j = 1..n. The omegas must be
/// pairwise distinct; the convention 0^0 = 1 makes row 1 all-ones.
std::vector<MessageVec> vandermonde_solve(const std::vector<Fp>& omegas,
                                          const std::vector<MessageVec>& rhs);

}  // namespace gpcip
