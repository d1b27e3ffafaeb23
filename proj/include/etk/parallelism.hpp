#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "etk/matrix.hpp"
#include "etk/tensor.hpp"

namespace etk {

/// Constant-coefficient model of a manifold with an absolute parallelism:
/// structure constants of the frame Lie algebra plus constant Christoffel
/// symbols. Index convention: entry (i, j, k) at flat position (i*n + j)*n + k
/// holds the coefficient of the k-th frame vector.
struct ParallelismData {
    std::size_t n = 0;
    std::vector<Rational> lambda;  ///< structure constants, skew in (i, j)
    std::vector<Rational> gamma;   ///< Christoffel constants

    ParallelismData(std::size_t n_, std::vector<Rational> l, std::vector<Rational> g)
        : n(n_), lambda(std::move(l)), gamma(std::move(g)) {
        if (n == 0) throw std::invalid_argument("ParallelismData: n must be positive");
        if (lambda.size() != n * n * n || gamma.size() != n * n * n)
            throw std::invalid_argument("ParallelismData: expected n^3 coefficients");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j <= i; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    if (lambda[(i * n + j) * n + k] + lambda[(j * n + i) * n + k] != 0)
                        throw std::invalid_argument(
                            "ParallelismData: structure constants must be skew in the first "
                            "two indices");
    }

    const Rational& l(std::size_t i, std::size_t j, std::size_t k) const {
        return lambda[(i * n + j) * n + k];
    }
    const Rational& g(std::size_t i, std::size_t j, std::size_t k) const {
        return gamma[(i * n + j) * n + k];
    }
};

/// First quadruple (i, j, k, l) whose cyclic Jacobi sum is nonzero, if any.
inline std::optional<std::array<std::size_t, 4>> first_jacobi_violation(
    const ParallelismData& d) {
    const std::size_t n = d.n;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l) {
                    Rational sum;
                    for (std::size_t m = 0; m < n; ++m)
                        sum += d.l(i, j, m) * d.l(m, k, l) + d.l(j, k, m) * d.l(m, i, l) +
                               d.l(k, i, m) * d.l(m, j, l);
                    if (sum != 0) return std::array<std::size_t, 4>{i, j, k, l};
                }
    return std::nullopt;
}

/// True iff the structure constants satisfy the Jacobi identity.
inline bool jacobi_check(const ParallelismData& d) { return !first_jacobi_violation(d); }

namespace detail {

inline void require_jacobi(const ParallelismData& d, const char* what) {
    if (auto v = first_jacobi_violation(d))
        throw std::invalid_argument(std::string(what) +
                                    ": structure constants violate the Jacobi identity at (" +
                                    std::to_string((*v)[0] + 1) + "," + std::to_string((*v)[1] + 1) +
                                    "," + std::to_string((*v)[2] + 1) + ")");
}

/// Matrix of the connection in direction e_i: row k, column j holds Gamma_ij^k.
inline RatMatrix gamma_matrix(const ParallelismData& d, std::size_t i) {
    RatMatrix m(d.n, d.n);
    for (std::size_t j = 0; j < d.n; ++j)
        for (std::size_t k = 0; k < d.n; ++k) m.at(k, j) = d.g(i, j, k);
    return m;
}

}  // namespace detail

/// T_ij^k = Gamma_ij^k - Gamma_ji^k - lambda_ij^k.
inline TensorElement torsion_constants(const ParallelismData& d) {
    detail::require_jacobi(d, "torsion_constants");
    const std::size_t n = d.n;
    std::vector<Rational> coords(n * n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                coords[(i * n + j) * n + k] = d.g(i, j, k) - d.g(j, i, k) - d.l(i, j, k);
    return TensorElement(torsion_spec(n), std::move(coords));
}

/// R(e_i, e_j) = Gamma_i Gamma_j - Gamma_j Gamma_i - sum_k lambda_ij^k Gamma_k.
inline TensorElement curvature_constants(const ParallelismData& d) {
    detail::require_jacobi(d, "curvature_constants");
    const std::size_t n = d.n;
    std::vector<RatMatrix> gm;
    gm.reserve(n);
    for (std::size_t i = 0; i < n; ++i) gm.push_back(detail::gamma_matrix(d, i));
    std::vector<Rational> coords(n * n * n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            RatMatrix m = commutator(gm[i], gm[j]);
            for (std::size_t k = 0; k < n; ++k) {
                const Rational& c = d.l(i, j, k);
                if (c != 0) m = m + (-c) * gm[k];
            }
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l) {
                    coords[((i * n + j) * n + k) * n + l] = m.at(l, k);
                    coords[((j * n + i) * n + k) * n + l] = -m.at(l, k);
                }
        }
    return TensorElement(TensorSpec(n, Valence::map31, true), std::move(coords));
}

}  // namespace etk
