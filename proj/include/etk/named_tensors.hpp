#pragma once

#include <stdexcept>

#include "etk/tensor.hpp"

namespace etk {

/// Quadrilinear constant-sectional-curvature form on R^n:
/// K(u1,u2,u3,u4) = <u2,u3><u1,u4> - <u1,u3><u2,u4>.
inline TensorElement tensor_k(std::size_t n) {
    TensorSpec spec(n, Valence::quad40, true, true, true);
    std::vector<Rational> coords(spec.dim());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            coords[((i * n + j) * n + j) * n + i] += 1;  // delta_jk delta_il at k=j, l=i
            coords[((i * n + j) * n + i) * n + j] -= 1;  // delta_ik delta_jl at k=i, l=j
        }
    return {spec, std::move(coords)};
}

/// (3,1) version of K: K0(u,v)w = <v,w>u - <u,w>v. Coordinate-identical to K
/// under the index-lowering convention.
inline TensorElement tensor_k0(std::size_t n) {
    TensorElement k = tensor_k(n);
    TensorSpec spec(n, Valence::map31, true, false, true);
    return {spec, std::move(k.coords)};
}

/// Vector cross product on R^3 as a (2,1) tensor: T[i,j,k] = epsilon_ijk.
inline TensorElement tensor_cross() {
    TensorSpec spec(3, Valence::map21, true);
    std::vector<Rational> coords(spec.dim());
    auto set = [&](std::size_t i, std::size_t j, std::size_t k, int v) {
        coords[(i * 3 + j) * 3 + k] = v;
    };
    set(0, 1, 2, 1);
    set(1, 2, 0, 1);
    set(2, 0, 1, 1);
    set(1, 0, 2, -1);
    set(2, 1, 0, -1);
    set(0, 2, 1, -1);
    return {spec, std::move(coords)};
}

/// Standard complex structure on R^{2n}: J = [[0, -I], [I, 0]] in block form,
/// i.e. J e_j = e_{n+j} and J e_{n+j} = -e_j.
inline RatMatrix complex_structure(std::size_t n) {
    RatMatrix j(2 * n, 2 * n);
    for (std::size_t t = 0; t < n; ++t) {
        j.at(t, n + t) = -1;
        j.at(n + t, t) = 1;
    }
    return j;
}

/// Constant-holomorphic-curvature form on C^n = R^{2n} (i u := J u):
/// boldK(u1,u2,u3,u4) = 1/4 (  <u1,u3><u2,u4> - <u1,u4><u2,u3>
///                           + <u1,iu3><u2,iu4> - <u1,iu4><u2,iu3>
///                           + 2 <u1,iu2><u3,iu4> ).
inline TensorElement tensor_bold_k(std::size_t n_complex) {
    const std::size_t n = 2 * n_complex;
    RatMatrix j = complex_structure(n_complex);
    TensorSpec spec(n, Valence::quad40, true, true, true);
    std::vector<Rational> coords(spec.dim());
    const Rational quarter = frac(1, 4);
    std::size_t f = 0;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                for (std::size_t d = 0; d < n; ++d, ++f) {
                    Rational v = 0;
                    if (a == c && b == d) v += 1;
                    if (a == d && b == c) v -= 1;
                    v += j.at(a, c) * j.at(b, d);
                    v -= j.at(a, d) * j.at(b, c);
                    v += 2 * j.at(a, b) * j.at(c, d);
                    if (sgn(v) != 0) coords[f] = quarter * v;
                }
    return {spec, std::move(coords)};
}

/// K restricted to one factor of R^{n1} x R^{n2} and extended by zero:
/// the value is the K-formula when all four arguments lie in the chosen
/// factor, and 0 as soon as any argument leaves it.
inline TensorElement tensor_k_factor(std::size_t n1, std::size_t n2, int which) {
    if (which != 1 && which != 2) throw std::invalid_argument("tensor_k_factor: which must be 1 or 2");
    const std::size_t n = n1 + n2;
    const std::size_t lo = (which == 1) ? 0 : n1;
    const std::size_t hi = (which == 1) ? n1 : n;
    TensorSpec spec(n, Valence::quad40, true, true, true);
    std::vector<Rational> coords(spec.dim());
    for (std::size_t i = lo; i < hi; ++i)
        for (std::size_t j = lo; j < hi; ++j) {
            if (i == j) continue;
            coords[((i * n + j) * n + j) * n + i] += 1;
            coords[((i * n + j) * n + i) * n + j] -= 1;
        }
    return {spec, std::move(coords)};
}

}  // namespace etk
