#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "etk/matrix.hpp"

namespace etk {

namespace detail {

/// In-place reduced row echelon form on a list of rows.
/// Pivoting is deterministic: for each column, the first row (in current
/// order) with a nonzero entry becomes the pivot row. Returns pivot columns.
inline std::vector<std::size_t> rref_rows(std::vector<std::vector<Rational>>& row,
                                          std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < row.size(); ++c) {
        std::size_t p = r;
        while (p < row.size() && sgn(row[p][c]) == 0) ++p;
        if (p == row.size()) continue;
        std::swap(row[p], row[r]);
        if (row[r][c] != 1) {
            Rational inv = Rational(1) / row[r][c];
            for (std::size_t j = c; j < cols; ++j)
                if (sgn(row[r][j]) != 0) row[r][j] *= inv;
        }
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k == r || sgn(row[k][c]) == 0) continue;
            Rational f = row[k][c];
            for (std::size_t j = c; j < cols; ++j)
                if (sgn(row[r][j]) != 0) row[k][j] -= f * row[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::vector<std::vector<Rational>> to_rows(const RatMatrix& m) {
    std::vector<std::vector<Rational>> rows(m.rows, std::vector<Rational>(m.cols));
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) rows[i][j] = m.at(i, j);
    return rows;
}

inline RatMatrix from_rows(const std::vector<std::vector<Rational>>& rows, std::size_t cols,
                           std::size_t keep) {
    RatMatrix m(keep, cols);
    for (std::size_t i = 0; i < keep; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
    return m;
}

}  // namespace detail

struct RrefResult {
    RatMatrix mat;                    // same shape as the input, fully reduced
    std::vector<std::size_t> pivots;  // pivot column per pivot row
    std::size_t rank() const { return pivots.size(); }
};

/// Canonical reduced row echelon form (unique for a given row space).
inline RrefResult rref(const RatMatrix& m) {
    auto rows = detail::to_rows(m);
    auto pivots = detail::rref_rows(rows, m.cols);
    return {detail::from_rows(rows, m.cols, m.rows), std::move(pivots)};
}

inline std::size_t rank(const RatMatrix& m) { return rref(m).rank(); }

/// Linear subspace of Q^ambient, stored as the canonical RREF basis of its
/// span. Two subspaces are equal as sets iff their stored bases are identical.
struct Subspace {
    std::size_t ambient = 0;
    RatMatrix basis;  // dim() x ambient, in RREF with no zero rows
    std::vector<std::size_t> pivots;

    std::size_t dim() const { return basis.rows; }

    static Subspace zero(std::size_t ambient) {
        Subspace s;
        s.ambient = ambient;
        s.basis = RatMatrix(0, ambient);
        return s;
    }

    static Subspace full(std::size_t ambient) {
        Subspace s;
        s.ambient = ambient;
        s.basis = RatMatrix::identity(ambient);
        for (std::size_t i = 0; i < ambient; ++i) s.pivots.push_back(i);
        return s;
    }

    /// Canonical subspace spanned by the rows of `spanning`.
    static Subspace span_of(const RatMatrix& spanning) {
        auto rows = detail::to_rows(spanning);
        auto pivots = detail::rref_rows(rows, spanning.cols);
        Subspace s;
        s.ambient = spanning.cols;
        s.basis = detail::from_rows(rows, spanning.cols, pivots.size());
        s.pivots = std::move(pivots);
        return s;
    }

    /// Adopts rows already known to be in RREF form with the given pivots.
    static Subspace from_rref(RatMatrix basis, std::vector<std::size_t> pivots) {
        Subspace s;
        s.ambient = basis.cols;
        s.basis = std::move(basis);
        s.pivots = std::move(pivots);
        return s;
    }

    /// Canonical coset representative: subtracts basis rows to zero out every
    /// pivot coordinate of v. The result depends only on v + (this subspace).
    std::vector<Rational> coset_reduce(std::vector<Rational> v) const {
        if (v.size() != ambient) throw std::invalid_argument("coset_reduce: size mismatch");
        for (std::size_t r = 0; r < dim(); ++r) {
            const Rational& f = v[pivots[r]];
            if (sgn(f) == 0) continue;
            Rational c = f;  // copy: v[pivots[r]] is updated in the loop
            for (std::size_t j = pivots[r]; j < ambient; ++j) {
                const Rational& b = basis.at(r, j);
                if (sgn(b) != 0) v[j] -= c * b;
            }
        }
        return v;
    }

    bool contains(const std::vector<Rational>& v) const {
        return is_zero_vector(coset_reduce(v));
    }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient == b.ambient && a.basis == b.basis;
    }
};

/// Canonical basis of the right nullspace {x : m x = 0}.
inline Subspace kernel(const RatMatrix& m) {
    auto rr = rref(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (auto p : rr.pivots) is_pivot[p] = true;
    RatMatrix span(m.cols - rr.rank(), m.cols);
    std::size_t row = 0;
    for (std::size_t f = 0; f < m.cols; ++f) {
        if (is_pivot[f]) continue;
        span.at(row, f) = 1;
        for (std::size_t t = 0; t < rr.rank(); ++t) span.at(row, rr.pivots[t]) = -rr.mat.at(t, f);
        ++row;
    }
    return Subspace::span_of(span);
}

/// Intersection of two subspaces of the same ambient space.
inline Subspace intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient != b.ambient) throw std::invalid_argument("intersect: ambient mismatch");
    if (a.dim() == 0 || b.dim() == 0) return Subspace::zero(a.ambient);
    // Solve alpha * A = beta * B by stacking [A^T | -B^T].
    RatMatrix sys(a.ambient, a.dim() + b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.ambient; ++j) sys.at(j, i) = a.basis.at(i, j);
    for (std::size_t i = 0; i < b.dim(); ++i)
        for (std::size_t j = 0; j < b.ambient; ++j) sys.at(j, a.dim() + i) = -b.basis.at(i, j);
    Subspace coeff = kernel(sys);
    RatMatrix span(coeff.dim(), a.ambient);
    for (std::size_t r = 0; r < coeff.dim(); ++r)
        for (std::size_t i = 0; i < a.dim(); ++i) {
            const Rational& alpha = coeff.basis.at(r, i);
            if (sgn(alpha) == 0) continue;
            for (std::size_t j = 0; j < a.ambient; ++j) {
                const Rational& x = a.basis.at(i, j);
                if (sgn(x) != 0) span.at(r, j) += alpha * x;
            }
        }
    return Subspace::span_of(span);
}

/// Exact inverse; nullopt when singular.
inline std::optional<RatMatrix> inverse(const RatMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("inverse: non-square matrix");
    std::size_t n = m.rows;
    std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) rows[i][j] = m.at(i, j);
        rows[i][n + i] = 1;
    }
    auto pivots = detail::rref_rows(rows, 2 * n);
    if (pivots.size() < n || pivots[n - 1] >= n) return std::nullopt;
    RatMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.at(i, j) = rows[i][n + j];
    return out;
}

inline Rational determinant(const RatMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("determinant: non-square matrix");
    auto rows = detail::to_rows(m);
    std::size_t n = m.rows;
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && sgn(rows[p][c]) == 0) ++p;
        if (p == n) return Rational(0);
        if (p != c) {
            std::swap(rows[p], rows[c]);
            det = -det;
        }
        det *= rows[c][c];
        Rational inv = Rational(1) / rows[c][c];
        for (std::size_t k = c + 1; k < n; ++k) {
            if (sgn(rows[k][c]) == 0) continue;
            Rational f = rows[k][c] * inv;
            for (std::size_t j = c; j < n; ++j)
                if (sgn(rows[c][j]) != 0) rows[k][j] -= f * rows[c][j];
        }
    }
    return det;
}

/// Basis rows of V restricted to the kernel of a linear map given as a
/// callable on coordinate vectors: returns {v in V : apply(v) = 0} with a
/// canonical basis. The map may land in any fixed-dimension target space.
template <class Apply>
Subspace restrict_to_kernel(const Subspace& v, Apply&& apply) {
    if (v.dim() == 0) return v;
    std::vector<std::vector<Rational>> images;
    images.reserve(v.dim());
    std::size_t out_dim = 0;
    for (std::size_t r = 0; r < v.dim(); ++r) {
        std::vector<Rational> x(v.ambient);
        for (std::size_t j = 0; j < v.ambient; ++j) x[j] = v.basis.at(r, j);
        images.push_back(apply(x));
        if (r == 0) out_dim = images[0].size();
        if (images[r].size() != out_dim)
            throw std::invalid_argument("restrict_to_kernel: inconsistent image size");
    }
    // Constraint rows indexed by output coordinates; drop all-zero rows.
    std::vector<std::vector<Rational>> sys;
    for (std::size_t t = 0; t < out_dim; ++t) {
        bool nonzero = false;
        for (std::size_t r = 0; r < v.dim(); ++r)
            if (sgn(images[r][t]) != 0) {
                nonzero = true;
                break;
            }
        if (!nonzero) continue;
        std::vector<Rational> row(v.dim());
        for (std::size_t r = 0; r < v.dim(); ++r) row[r] = images[r][t];
        sys.push_back(std::move(row));
    }
    if (sys.empty()) return v;
    RatMatrix sys_m(sys.size(), v.dim());
    for (std::size_t i = 0; i < sys.size(); ++i)
        for (std::size_t j = 0; j < v.dim(); ++j) sys_m.at(i, j) = sys[i][j];
    Subspace coeff = kernel(sys_m);
    RatMatrix span(coeff.dim(), v.ambient);
    for (std::size_t r = 0; r < coeff.dim(); ++r)
        for (std::size_t i = 0; i < v.dim(); ++i) {
            const Rational& c = coeff.basis.at(r, i);
            if (sgn(c) == 0) continue;
            for (std::size_t j = 0; j < v.ambient; ++j) {
                const Rational& x = v.basis.at(i, j);
                if (sgn(x) != 0) span.at(r, j) += c * x;
            }
        }
    return Subspace::span_of(span);
}

}  // namespace etk
