#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "etk/linalg.hpp"

namespace etk {

/// Tensor shapes handled by the library, all over R^n:
///   map21          T : R^n x R^n -> R^n            (torsion-like)
///   map31          R : R^n x R^n x R^n -> R^n      (curvature-like)
///   quad40         R : (R^n)^4 -> R                (quadrilinear form)
///   inner_torsion  lambda : R^n -> gl(R^n)
enum class Valence { map21, map31, quad40, inner_torsion };

inline std::string to_string(Valence v) {
    switch (v) {
        case Valence::map21: return "(2,1)";
        case Valence::map31: return "(3,1)";
        case Valence::quad40: return "(4,0)";
        case Valence::inner_torsion: return "inner-torsion-map";
    }
    throw std::logic_error("to_string(Valence): bad enum");
}

inline Valence valence_from_string(const std::string& s) {
    if (s == "(2,1)") return Valence::map21;
    if (s == "(3,1)") return Valence::map31;
    if (s == "(4,0)") return Valence::quad40;
    if (s == "inner-torsion-map") return Valence::inner_torsion;
    throw std::invalid_argument("valence_from_string: unknown valence '" + s + "'");
}

inline std::size_t ipow(std::size_t base, std::size_t exp) {
    std::size_t r = 1;
    while (exp--) r *= base;
    return r;
}

/// Shape + linear symmetry constraints of a tensor space.
///
/// Coordinates are flat, row-major, last index fastest. The map valences are
/// stored output-slot-last: a (3,1) tensor has coords R[i,j,k,l] meaning the
/// e_l-coefficient of R(e_i,e_j)e_k, so index lowering against the standard
/// inner product — R(u,v,w,z) := <R(u,v)w, z> — is the identity on
/// coordinates. An inner torsion map has coords lambda[i,r,c] meaning entry
/// (r,c) of the matrix lambda(e_i).
struct TensorSpec {
    std::size_t n = 0;
    Valence valence = Valence::map21;
    bool skew12 = false;   // skew in arguments 1,2
    bool skew34 = false;   // skew in arguments 3,4 (quadrilinear forms only)
    bool bianchi = false;  // first Bianchi identity (see bianchi_sum)

    TensorSpec() = default;
    TensorSpec(std::size_t n_, Valence v, bool s12 = false, bool s34 = false, bool b = false)
        : n(n_), valence(v), skew12(s12), skew34(s34), bianchi(b) {
        if (n == 0) throw std::invalid_argument("TensorSpec: n must be positive");
        if (valence == Valence::inner_torsion && (skew12 || skew34 || bianchi))
            throw std::invalid_argument("TensorSpec: inner torsion maps carry no slot symmetry");
        if (skew34 && valence != Valence::quad40)
            throw std::invalid_argument("TensorSpec: skew-3-4 applies to (4,0) only");
        if (bianchi && valence != Valence::map31 && valence != Valence::quad40)
            throw std::invalid_argument("TensorSpec: Bianchi applies to (3,1) or (4,0) only");
        if (skew12 && valence == Valence::inner_torsion)
            throw std::invalid_argument("TensorSpec: skew-1-2 applies to slot-based valences");
    }

    /// Number of index slots (each running over 0..n-1).
    std::size_t arity() const {
        return (valence == Valence::map31 || valence == Valence::quad40) ? 4 : 3;
    }

    /// Flat coordinate dimension n^arity.
    std::size_t dim() const { return ipow(n, arity()); }

    friend bool operator==(const TensorSpec&, const TensorSpec&) = default;
};

inline TensorSpec torsion_spec(std::size_t n) { return {n, Valence::map21, true}; }
inline TensorSpec curvature_spec(std::size_t n) {
    return {n, Valence::map31, true, false, true};
}
inline TensorSpec inner_torsion_spec(std::size_t n) { return {n, Valence::inner_torsion}; }

inline std::size_t flat_index(const TensorSpec& spec, const std::vector<std::size_t>& idx) {
    if (idx.size() != spec.arity()) throw std::invalid_argument("flat_index: wrong arity");
    std::size_t f = 0;
    for (std::size_t s = 0; s < idx.size(); ++s) {
        if (idx[s] >= spec.n) throw std::invalid_argument("flat_index: index out of range");
        f = f * spec.n + idx[s];
    }
    return f;
}

inline std::vector<std::size_t> multi_index(const TensorSpec& spec, std::size_t flat) {
    std::vector<std::size_t> idx(spec.arity());
    for (std::size_t s = spec.arity(); s-- > 0;) {
        idx[s] = flat % spec.n;
        flat /= spec.n;
    }
    return idx;
}

/// A concrete tensor: a spec plus its flat coordinates.
struct TensorElement {
    TensorSpec spec;
    std::vector<Rational> coords;

    TensorElement() = default;
    TensorElement(TensorSpec s, std::vector<Rational> c) : spec(s), coords(std::move(c)) {
        if (coords.size() != spec.dim())
            throw std::invalid_argument("TensorElement: coordinate count mismatch");
    }

    friend bool operator==(const TensorElement&, const TensorElement&) = default;
};

/// Applies a matrix to one index slot:
/// out[..., t, ...] = sum_s A[t,s] * in[..., s, ...] (slot counted from 0).
inline std::vector<Rational> apply_to_slot(const std::vector<Rational>& in, std::size_t arity,
                                           std::size_t n, std::size_t slot, const RatMatrix& a) {
    if (a.rows != n || a.cols != n) throw std::invalid_argument("apply_to_slot: shape mismatch");
    if (slot >= arity) throw std::invalid_argument("apply_to_slot: bad slot");
    const std::size_t stride = ipow(n, arity - 1 - slot);
    std::vector<Rational> out(in.size());
    for (std::size_t f = 0; f < in.size(); ++f) {
        const std::size_t t = (f / stride) % n;
        const std::size_t base = f - t * stride;
        Rational acc = 0;
        for (std::size_t s = 0; s < n; ++s) {
            const Rational& c = a.at(t, s);
            if (sgn(c) == 0) continue;
            const Rational& x = in[base + s * stride];
            if (sgn(x) != 0) acc += c * x;
        }
        out[f] = std::move(acc);
    }
    return out;
}

/// First Bianchi cyclic sum in the quadrilinear convention: holds the first
/// slot fixed and cycles the remaining three,
/// C(R)[i,j,k,l] = R[i,j,k,l] + R[i,k,l,j] + R[i,l,j,k].
/// Valid for the 4-slot valences; on (3,1) coordinates it acts through the
/// coordinate-identity index lowering.
inline std::vector<Rational> bianchi_sum(const TensorSpec& spec,
                                         const std::vector<Rational>& coords) {
    if (spec.arity() != 4) throw std::invalid_argument("bianchi_sum: needs a 4-slot valence");
    const std::size_t n = spec.n;
    std::vector<Rational> out(coords.size());
    std::size_t f = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l, ++f) {
                    out[f] = coords[f] + coords[((i * n + k) * n + l) * n + j] +
                             coords[((i * n + l) * n + j) * n + k];
                }
    return out;
}

/// Residual of skewness in slots 1,2: out = coords + coords with slots 0,1 swapped.
inline std::vector<Rational> skew12_residual(const TensorSpec& spec,
                                             const std::vector<Rational>& coords) {
    const std::size_t n = spec.n;
    const std::size_t tail = ipow(n, spec.arity() - 2);
    std::vector<Rational> out(coords.size());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t r = 0; r < tail; ++r)
                out[(i * n + j) * tail + r] =
                    coords[(i * n + j) * tail + r] + coords[(j * n + i) * tail + r];
    return out;
}

/// Residual of skewness in slots 3,4 (quadrilinear forms).
inline std::vector<Rational> skew34_residual(const TensorSpec& spec,
                                             const std::vector<Rational>& coords) {
    if (spec.valence != Valence::quad40)
        throw std::invalid_argument("skew34_residual: (4,0) only");
    const std::size_t n = spec.n;
    std::vector<Rational> out(coords.size());
    std::size_t f = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l, ++f)
                    out[f] = coords[f] + coords[((i * n + j) * n + l) * n + k];
    return out;
}

/// Canonical basis of the subspace cut out by the symmetry flags of `spec`.
inline Subspace symmetry_subspace(const TensorSpec& spec) {
    const std::size_t d = spec.dim();
    Subspace space = Subspace::full(d);
    if (spec.skew12) {
        // Direct canonical basis: e_(i,j,rest) - e_(j,i,rest) for i < j. Rows
        // sorted by pivot column are already in RREF.
        const std::size_t n = spec.n;
        const std::size_t tail = ipow(n, spec.arity() - 2);
        RatMatrix basis(n * (n - 1) / 2 * tail, d);
        std::vector<std::size_t> pivots;
        std::size_t row = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                for (std::size_t r = 0; r < tail; ++r) {
                    basis.at(row, (i * n + j) * tail + r) = 1;
                    basis.at(row, (j * n + i) * tail + r) = -1;
                    pivots.push_back((i * n + j) * tail + r);
                    ++row;
                }
        space = Subspace::from_rref(std::move(basis), std::move(pivots));
    }
    if (spec.skew34)
        space = restrict_to_kernel(
            space, [&](const std::vector<Rational>& v) { return skew34_residual(spec, v); });
    if (spec.bianchi)
        space = restrict_to_kernel(
            space, [&](const std::vector<Rational>& v) { return bianchi_sum(spec, v); });
    return space;
}

/// Index lowering R(u,v,w,z) = <R(u,v)w, z>: the output slot becomes the
/// fourth argument. With the coordinate layout above this is the identity on
/// coordinates; only the valence changes. Constraint flags carry over.
inline TensorElement lower_index(const TensorElement& t) {
    if (t.spec.valence != Valence::map31)
        throw std::invalid_argument("lower_index: expects a (3,1) tensor");
    TensorSpec out(t.spec.n, Valence::quad40, t.spec.skew12, false, t.spec.bianchi);
    return {out, t.coords};
}

/// Inverse of lower_index. The (3,1) vocabulary has no slot-3-4 skewness, so
/// that flag does not survive a raise; coordinates are untouched.
inline TensorElement raise_index(const TensorElement& t) {
    if (t.spec.valence != Valence::quad40)
        throw std::invalid_argument("raise_index: expects a (4,0) tensor");
    TensorSpec out(t.spec.n, Valence::map31, t.spec.skew12, false, t.spec.bianchi);
    return {out, t.coords};
}

namespace detail {

inline std::vector<Rational> contract_first_slot(const std::vector<Rational>& in, std::size_t n,
                                                 const std::vector<Rational>& u) {
    if (u.size() != n) throw std::invalid_argument("evaluate: argument size mismatch");
    const std::size_t stride = in.size() / n;
    std::vector<Rational> out(stride);
    for (std::size_t i = 0; i < n; ++i) {
        if (sgn(u[i]) == 0) continue;
        for (std::size_t r = 0; r < stride; ++r) {
            const Rational& x = in[i * stride + r];
            if (sgn(x) != 0) out[r] += u[i] * x;
        }
    }
    return out;
}

}  // namespace detail

/// T(u,v) for a (2,1) tensor.
inline std::vector<Rational> evaluate(const TensorElement& t, const std::vector<Rational>& u,
                                      const std::vector<Rational>& v) {
    if (t.spec.valence != Valence::map21)
        throw std::invalid_argument("evaluate(u,v): expects a (2,1) tensor");
    auto a = detail::contract_first_slot(t.coords, t.spec.n, u);
    return detail::contract_first_slot(a, t.spec.n, v);
}

/// R(u,v)w for a (3,1) tensor.
inline std::vector<Rational> evaluate(const TensorElement& t, const std::vector<Rational>& u,
                                      const std::vector<Rational>& v,
                                      const std::vector<Rational>& w) {
    if (t.spec.valence != Valence::map31)
        throw std::invalid_argument("evaluate(u,v,w): expects a (3,1) tensor");
    auto a = detail::contract_first_slot(t.coords, t.spec.n, u);
    auto b = detail::contract_first_slot(a, t.spec.n, v);
    return detail::contract_first_slot(b, t.spec.n, w);
}

/// R(u,v,w,z) for a (4,0) form.
inline Rational evaluate(const TensorElement& t, const std::vector<Rational>& u,
                         const std::vector<Rational>& v, const std::vector<Rational>& w,
                         const std::vector<Rational>& z) {
    if (t.spec.valence != Valence::quad40)
        throw std::invalid_argument("evaluate(u,v,w,z): expects a (4,0) tensor");
    auto a = detail::contract_first_slot(t.coords, t.spec.n, u);
    auto b = detail::contract_first_slot(a, t.spec.n, v);
    auto c = detail::contract_first_slot(b, t.spec.n, w);
    Rational out = 0;
    for (std::size_t i = 0; i < t.spec.n; ++i)
        if (sgn(z[i]) != 0) out += z[i] * c[i];
    return out;
}

/// lambda(u) as an n x n matrix, for an inner torsion map.
inline RatMatrix evaluate_endomorphism(const TensorElement& t, const std::vector<Rational>& u) {
    if (t.spec.valence != Valence::inner_torsion)
        throw std::invalid_argument("evaluate_endomorphism: expects an inner torsion map");
    auto flat = detail::contract_first_slot(t.coords, t.spec.n, u);
    return matrix_from_vector(t.spec.n, t.spec.n, flat);
}

}  // namespace etk
