#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "etk/rational.hpp"

namespace etk {

/// Dense matrix of exact rationals, row-major storage.
struct RatMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Rational> data;

    RatMatrix() = default;
    RatMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

    Rational& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    const Rational& at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    static RatMatrix identity(std::size_t n) {
        RatMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    /// Elementary matrix with a single 1 at (r, c).
    static RatMatrix unit(std::size_t n, std::size_t r, std::size_t c) {
        RatMatrix m(n, n);
        m.at(r, c) = 1;
        return m;
    }

    bool is_zero() const {
        for (const auto& x : data)
            if (sgn(x) != 0) return false;
        return true;
    }

    bool is_square() const { return rows == cols; }

    friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
        return a.rows == b.rows && a.cols == b.cols && a.data == b.data;
    }
};

inline RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw std::invalid_argument("matrix add: shape mismatch");
    RatMatrix out(a.rows, a.cols);
    for (std::size_t i = 0; i < a.data.size(); ++i) out.data[i] = a.data[i] + b.data[i];
    return out;
}

inline RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw std::invalid_argument("matrix sub: shape mismatch");
    RatMatrix out(a.rows, a.cols);
    for (std::size_t i = 0; i < a.data.size(); ++i) out.data[i] = a.data[i] - b.data[i];
    return out;
}

inline RatMatrix operator-(const RatMatrix& a) {
    RatMatrix out(a.rows, a.cols);
    for (std::size_t i = 0; i < a.data.size(); ++i) out.data[i] = -a.data[i];
    return out;
}

inline RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("matrix mul: shape mismatch");
    RatMatrix out(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            const Rational& f = a.at(i, k);
            if (sgn(f) == 0) continue;
            for (std::size_t j = 0; j < b.cols; ++j) {
                const Rational& g = b.at(k, j);
                if (sgn(g) != 0) out.at(i, j) += f * g;
            }
        }
    return out;
}

inline RatMatrix operator*(const Rational& c, const RatMatrix& a) {
    RatMatrix out(a.rows, a.cols);
    for (std::size_t i = 0; i < a.data.size(); ++i) out.data[i] = c * a.data[i];
    return out;
}

inline RatMatrix transpose(const RatMatrix& a) {
    RatMatrix out(a.cols, a.rows);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) out.at(j, i) = a.at(i, j);
    return out;
}

inline Rational trace(const RatMatrix& a) {
    if (!a.is_square()) throw std::invalid_argument("trace: non-square matrix");
    Rational t = 0;
    for (std::size_t i = 0; i < a.rows; ++i) t += a.at(i, i);
    return t;
}

inline RatMatrix commutator(const RatMatrix& a, const RatMatrix& b) { return a * b - b * a; }

/// Row-major flattening of a matrix into a coordinate vector.
inline std::vector<Rational> vectorize(const RatMatrix& a) { return a.data; }

inline RatMatrix matrix_from_vector(std::size_t rows, std::size_t cols,
                                    const std::vector<Rational>& v) {
    if (v.size() != rows * cols) throw std::invalid_argument("matrix_from_vector: size mismatch");
    RatMatrix m(rows, cols);
    m.data = v;
    return m;
}

inline std::vector<Rational> mat_vec(const RatMatrix& a, const std::vector<Rational>& v) {
    if (a.cols != v.size()) throw std::invalid_argument("mat_vec: shape mismatch");
    std::vector<Rational> out(a.rows);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) {
            const Rational& f = a.at(i, j);
            if (sgn(f) != 0) out[i] += f * v[j];
        }
    return out;
}

inline bool is_zero_vector(const std::vector<Rational>& v) {
    for (const auto& x : v)
        if (sgn(x) != 0) return false;
    return true;
}

inline std::vector<Rational> vec_sub(const std::vector<Rational>& a,
                                     const std::vector<Rational>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vec_sub: size mismatch");
    std::vector<Rational> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

inline std::vector<Rational> vec_add(const std::vector<Rational>& a,
                                     const std::vector<Rational>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vec_add: size mismatch");
    std::vector<Rational> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

inline std::vector<Rational> vec_scale(const Rational& c, const std::vector<Rational>& a) {
    std::vector<Rational> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = c * a[i];
    return out;
}

}  // namespace etk
