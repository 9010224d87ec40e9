#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <findim/errors.hpp>
#include <findim/matrix.hpp>

namespace findim {

struct RrefResult {
    Matrix reduced;
    std::vector<std::size_t> pivots; // pivot column indices, ascending
};

// Reduced row-echelon form by plain Gaussian elimination. Pivot rule: first
// row with a nonzero entry in column order, so bases derived from the result
// are reproducible bit-for-bit.
inline RrefResult rref(Matrix m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t pivot_row = row;
        while (pivot_row < m.rows() && m(pivot_row, col) == 0) ++pivot_row;
        if (pivot_row == m.rows()) continue;
        if (pivot_row != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pivot_row, j), m(row, j));
        Rational inv = m(row, col);
        for (std::size_t j = col; j < m.cols(); ++j) m(row, j) /= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || m(r, col) == 0) continue;
            Rational factor = m(r, col);
            for (std::size_t j = col; j < m.cols(); ++j) m(r, j) -= factor * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

// Basis of the column space: the pivot columns of the original matrix.
inline Matrix image_basis(const Matrix& m) { return m.select_columns(rref(m).pivots); }

// Basis of the null space, one column per free variable, in column order.
inline Matrix kernel_basis(const Matrix& m) {
    RrefResult r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t p : r.pivots) is_pivot[p] = true;
    Matrix k(m.cols(), m.cols() - r.pivots.size());
    std::size_t out = 0;
    for (std::size_t free_col = 0; free_col < m.cols(); ++free_col) {
        if (is_pivot[free_col]) continue;
        k(free_col, out) = 1;
        for (std::size_t pr = 0; pr < r.pivots.size(); ++pr) {
            if (r.pivots[pr] < free_col) k(r.pivots[pr], out) = -r.reduced(pr, free_col);
        }
        ++out;
    }
    return k;
}

// One exact solution of M*X = rhs (free variables set to zero); rhs may have
// several columns. Throws InconsistentError if some column lies outside the
// column space.
inline Matrix solve(const Matrix& m, const Matrix& rhs) {
    if (m.rows() != rhs.rows())
        throw Error("solve: row mismatch " + m.shape() + " vs " + rhs.shape());
    RrefResult r = rref(hstack(m, rhs));
    for (std::size_t p : r.pivots)
        if (p >= m.cols()) throw InconsistentError("solve: right-hand side outside the column space");
    Matrix x(m.cols(), rhs.cols());
    for (std::size_t pr = 0; pr < r.pivots.size(); ++pr)
        for (std::size_t j = 0; j < rhs.cols(); ++j) x(r.pivots[pr], j) = r.reduced(pr, m.cols() + j);
    return x;
}

inline Matrix inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw NotInvertible("inverse of non-square matrix " + m.shape());
    RrefResult r = rref(hstack(m, Matrix::identity(m.rows())));
    if (r.pivots.size() != m.rows() || (m.rows() && r.pivots.back() >= m.cols()))
        throw NotInvertible("matrix " + m.shape() + " is singular");
    Matrix inv(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) inv(i, j) = r.reduced(i, m.cols() + j);
    return inv;
}

// Splitting of an idempotent matrix P through its image:
// projection * inclusion = identity on the image, inclusion * projection = P.
struct SplitData {
    Matrix inclusion;  // ambient-dim x rank
    Matrix projection; // rank x ambient-dim
};

inline SplitData split_idempotent(const Matrix& p) {
    if (p.rows() != p.cols()) throw NotIdempotent("split_idempotent: matrix " + p.shape() + " is not square");
    if (!(p * p == p)) throw NotIdempotent("split_idempotent: P*P != P");
    Matrix inclusion = p.select_columns(rref(p).pivots);
    Matrix projection = solve(inclusion, p);
    // Exact postconditions; a failure here would be an engine bug.
    if (!(projection * inclusion == Matrix::identity(inclusion.cols())))
        throw Error("split_idempotent: projection*inclusion != id");
    if (!(inclusion * projection == p)) throw Error("split_idempotent: inclusion*projection != P");
    return {std::move(inclusion), std::move(projection)};
}

} // namespace findim
