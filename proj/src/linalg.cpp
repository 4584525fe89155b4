#include "gpcip/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace gpcip {

void Matrix::add_row(std::vector<Fp> row) {
    if (row.size() != n_cols) throw std::invalid_argument("row length mismatch");
    rows.push_back(std::move(row));
}

Matrix Matrix::transposed() const {
    Matrix t(n_rows());
    if (rows.empty()) return t;
    for (std::size_t c = 0; c < n_cols; ++c) {
        std::vector<Fp> row;
        row.reserve(n_rows());
        for (const auto& r : rows) row.push_back(r[c]);
        t.add_row(std::move(row));
    }
    return t;
}

std::vector<Fp> unit_row(std::size_t n, std::size_t one_pos, std::uint32_t q) {
    std::vector<Fp> r(n, Fp(0, q));
    r.at(one_pos) = Fp(1, q);
    return r;
}

namespace {

// Row echelon form in place; returns pivot column per reduced row.
std::vector<std::size_t> eliminate(std::vector<std::vector<Fp>>& rows, std::size_t n_cols) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n_cols && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c].value() == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[r], rows[p]);
        Fp inv = rows[r][c].inv();
        for (std::size_t j = c; j < n_cols; ++j) rows[r][j] *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c].value() == 0) continue;
            Fp f = rows[i][c];
            for (std::size_t j = c; j < n_cols; ++j) rows[i][j] -= f * rows[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

std::size_t rank(const Matrix& m) {
    if (m.rows.empty()) return 0;
    auto rows = m.rows;
    return eliminate(rows, m.n_cols).size();
}

bool in_row_space(const Matrix& m, const std::vector<Fp>& v) {
    if (v.size() != m.n_cols) throw std::invalid_argument("vector/matrix dimension mismatch");
    auto rows = m.rows;
    auto pivots = eliminate(rows, m.n_cols);
    // reduce v against the echelon basis; representable iff residue is zero
    auto res = v;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        Fp f = res[pivots[i]];
        if (f.value() == 0) continue;
        for (std::size_t j = 0; j < m.n_cols; ++j) res[j] -= f * rows[i][j];
    }
    return std::all_of(res.begin(), res.end(), [](const Fp& x) { return x.value() == 0; });
}

std::vector<MessageVec> vandermonde_solve(const std::vector<Fp>& omegas,
                                          const std::vector<MessageVec>& rhs) {
    const std::size_t n = omegas.size();
    if (n == 0) throw std::invalid_argument("empty system");
    if (rhs.size() != n) throw std::invalid_argument("rhs/omega count mismatch");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (omegas[i] == omegas[j]) throw std::invalid_argument("singular system");

    const std::uint32_t q = omegas[0].modulus();
    const std::size_t m = rhs[0].size();

    // master polynomial P(t) = prod (t - omega_k), coefficients low-to-high
    std::vector<Fp> master(n + 1, Fp(0, q));
    master[0] = Fp(1, q);
    for (std::size_t k = 0; k < n; ++k) {
        master[k + 1] = master[k];
        for (std::size_t j = k; j >= 1; --j) master[j] = master[j - 1] - omegas[k] * master[j];
        master[0] = -omegas[k] * master[0];
    }

    // x_l = Q_l(omega_l)^{-1} * sum_j Q_l[j] * rhs_{j+1}, where
    // Q_l = P / (t - omega_l) is the numerator of the l-th Lagrange basis.
    std::vector<MessageVec> x(n, MessageVec::zero(m, q));
    std::vector<Fp> quot(n, Fp(0, q));
    for (std::size_t l = 0; l < n; ++l) {
        quot[n - 1] = master[n];
        for (std::size_t j = n - 1; j-- > 0;) quot[j] = master[j + 1] + omegas[l] * quot[j + 1];
        Fp denom = Fp(0, q);
        for (std::size_t j = n; j-- > 0;) denom = denom * omegas[l] + quot[j];
        Fp scale = denom.inv();
        MessageVec acc = MessageVec::zero(m, q);
        for (std::size_t j = 0; j < n; ++j) acc += quot[j] * rhs[j];
        x[l] = scale * acc;
    }
    return x;
}

}  // namespace gpcip
