#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "etk/groups.hpp"
#include "etk/linalg.hpp"
#include "etk/tensor.hpp"

namespace etk {

/// Canonical basis of the tensors fixed by a group action, with provenance.
struct InvariantSpaceResult {
    TensorSpec spec;
    Subspace space;
    std::string group;
    std::vector<std::string> filters;
};

/// Solutions lambda : R^n -> gl(R^n) of the inner-torsion conditions, presented
/// modulo the maps valued in the algebra itself.
struct InnerTorsionSolution {
    std::vector<TensorElement> lambda_basis;  ///< coset-canonical quotient basis
    Subspace modulo;                          ///< vectorized Hom(R^n, algebra)
    std::size_t quotient_dim = 0;
};

namespace detail {

inline void check_operator_shape(const TensorSpec& spec, const RatMatrix& m, const char* what) {
    if (!m.is_square() || m.rows != spec.n)
        throw std::invalid_argument(std::string(what) + ": expected a " + std::to_string(spec.n) +
                                    "x" + std::to_string(spec.n) + " matrix");
}

inline void acc_sub(std::vector<Rational>& acc, const std::vector<Rational>& v) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] -= v[i];
}

}  // namespace detail

/// Derivation action of L on tensor coordinates: output slots act by L,
/// input slots subtract the precomposition with L.
inline std::vector<Rational> apply_infinitesimal(const TensorSpec& spec, const RatMatrix& L,
                                                 const std::vector<Rational>& coords) {
    detail::check_operator_shape(spec, L, "apply_infinitesimal");
    if (coords.size() != spec.dim()) throw std::invalid_argument("apply_infinitesimal: coordinate size");
    const std::size_t n = spec.n;
    const std::size_t a = spec.arity();
    const RatMatrix lt = transpose(L);
    std::vector<Rational> out;
    switch (spec.valence) {
        case Valence::map21:
            out = apply_to_slot(coords, a, n, 2, L);
            detail::acc_sub(out, apply_to_slot(coords, a, n, 0, lt));
            detail::acc_sub(out, apply_to_slot(coords, a, n, 1, lt));
            break;
        case Valence::map31:
            out = apply_to_slot(coords, a, n, 3, L);
            detail::acc_sub(out, apply_to_slot(coords, a, n, 0, lt));
            detail::acc_sub(out, apply_to_slot(coords, a, n, 1, lt));
            detail::acc_sub(out, apply_to_slot(coords, a, n, 2, lt));
            break;
        case Valence::quad40:
            out.assign(coords.size(), Rational(0));
            for (std::size_t s = 0; s < 4; ++s) detail::acc_sub(out, apply_to_slot(coords, a, n, s, lt));
            break;
        case Valence::inner_torsion:
            // [L, lambda(e_i)] - lambda(L e_i): slot 1 is the matrix row,
            // slot 2 the column, slot 0 the argument vector.
            out = apply_to_slot(coords, a, n, 1, L);
            detail::acc_sub(out, apply_to_slot(coords, a, n, 2, lt));
            detail::acc_sub(out, apply_to_slot(coords, a, n, 0, lt));
            break;
    }
    return out;
}

namespace detail {

/// rho(g) with the inverse already supplied; ginv_t = transpose of g^{-1}.
inline std::vector<Rational> apply_finite_pre(const TensorSpec& spec, const RatMatrix& g,
                                              const RatMatrix& ginv_t,
                                              const std::vector<Rational>& coords) {
    const std::size_t n = spec.n;
    const std::size_t a = spec.arity();
    std::vector<Rational> out = coords;
    switch (spec.valence) {
        case Valence::map21:
            out = apply_to_slot(out, a, n, 0, ginv_t);
            out = apply_to_slot(out, a, n, 1, ginv_t);
            out = apply_to_slot(out, a, n, 2, g);
            break;
        case Valence::map31:
            out = apply_to_slot(out, a, n, 0, ginv_t);
            out = apply_to_slot(out, a, n, 1, ginv_t);
            out = apply_to_slot(out, a, n, 2, ginv_t);
            out = apply_to_slot(out, a, n, 3, g);
            break;
        case Valence::quad40:
            for (std::size_t s = 0; s < 4; ++s) out = apply_to_slot(out, a, n, s, ginv_t);
            break;
        case Valence::inner_torsion:
            // g lambda(g^{-1} e_i) g^{-1}
            out = apply_to_slot(out, a, n, 0, ginv_t);
            out = apply_to_slot(out, a, n, 1, g);
            out = apply_to_slot(out, a, n, 2, ginv_t);
            break;
    }
    return out;
}

inline RatMatrix require_inverse(const RatMatrix& g, const char* what) {
    auto inv = inverse(g);
    if (!inv) throw std::invalid_argument(std::string(what) + ": singular matrix");
    return *inv;
}

}  // namespace detail

/// Natural action rho(g) on tensor coordinates (inputs via g^{-1}, outputs via g).
inline std::vector<Rational> apply_finite(const TensorSpec& spec, const RatMatrix& g,
                                          const std::vector<Rational>& coords) {
    detail::check_operator_shape(spec, g, "apply_finite");
    if (coords.size() != spec.dim()) throw std::invalid_argument("apply_finite: coordinate size");
    return detail::apply_finite_pre(spec, g, transpose(detail::require_inverse(g, "apply_finite")),
                                    coords);
}

/// Matrix of the derivation operator D_L on the full coordinate space.
inline RatMatrix infinitesimal_constraint(const TensorSpec& spec, const RatMatrix& L) {
    detail::check_operator_shape(spec, L, "infinitesimal_constraint");
    const std::size_t d = spec.dim();
    RatMatrix m(d, d);
    std::vector<Rational> e(d, Rational(0));
    for (std::size_t c = 0; c < d; ++c) {
        e[c] = 1;
        std::vector<Rational> col = apply_infinitesimal(spec, L, e);
        for (std::size_t r = 0; r < d; ++r)
            if (col[r] != 0) m.at(r, c) = col[r];
        e[c] = 0;
    }
    return m;
}

/// Matrix of rho(g) - Id on the full coordinate space; its kernel is the
/// g-fixed tensors.
inline RatMatrix finite_constraint(const TensorSpec& spec, const RatMatrix& g) {
    detail::check_operator_shape(spec, g, "finite_constraint");
    const RatMatrix ginv_t = transpose(detail::require_inverse(g, "finite_constraint"));
    const std::size_t d = spec.dim();
    RatMatrix m(d, d);
    std::vector<Rational> e(d, Rational(0));
    for (std::size_t c = 0; c < d; ++c) {
        e[c] = 1;
        std::vector<Rational> col = detail::apply_finite_pre(spec, g, ginv_t, e);
        col[c] -= 1;
        for (std::size_t r = 0; r < d; ++r)
            if (col[r] != 0) m.at(r, c) = col[r];
        e[c] = 0;
    }
    return m;
}

namespace detail {

inline void require_valid(const GroupSpec& group) {
    auto problems = validate(group);
    if (problems.empty()) return;
    std::string msg = "invalid group '" + group.name + "':";
    for (const auto& p : problems) msg += " " + p + ";";
    throw std::invalid_argument(msg);
}

}  // namespace detail

/// All tensors of the given shape fixed by the whole group: symmetry subspace
/// cut down by every algebra generator and every component representative.
inline InvariantSpaceResult invariant_tensors(const GroupSpec& group, const TensorSpec& spec) {
    detail::require_valid(group);
    if (group.n != spec.n)
        throw std::invalid_argument("invariant_tensors: group and tensor dimensions differ");
    Subspace space = symmetry_subspace(spec);
    for (const auto& L : group.algebra) {
        space = restrict_to_kernel(
            space, [&](const std::vector<Rational>& v) { return apply_infinitesimal(spec, L, v); });
    }
    for (const auto& g : group.reps) {
        const RatMatrix ginv_t = transpose(detail::require_inverse(g, "invariant_tensors"));
        space = restrict_to_kernel(space, [&](const std::vector<Rational>& v) {
            std::vector<Rational> out = detail::apply_finite_pre(spec, g, ginv_t, v);
            for (std::size_t i = 0; i < out.size(); ++i) out[i] -= v[i];
            return out;
        });
    }
    return InvariantSpaceResult{spec, std::move(space), group.name, {}};
}

/// Solves the inner-torsion conditions modulo the algebra: for every generator
/// L and basis vector e_i, [L, lambda(e_i)] - lambda(L e_i) must lie in the
/// algebra span, and for every component rep g so must
/// g lambda(e_i) g^{-1} - lambda(g e_i).  Returns the solution space reduced
/// modulo the algebra-valued maps, coset-canonical per slot.
inline InnerTorsionSolution inner_torsion_space(const GroupSpec& group) {
    detail::require_valid(group);
    const std::size_t n = group.n;
    const std::size_t nn = n * n;
    const TensorSpec spec = inner_torsion_spec(n);
    const Subspace gspan = group.algebra_span();

    // Reduce each n x n output block to its canonical coset mod the algebra.
    auto reduce_slots = [&](std::vector<Rational> v) {
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<Rational> block(v.begin() + i * nn, v.begin() + (i + 1) * nn);
            block = gspan.coset_reduce(block);
            std::copy(block.begin(), block.end(), v.begin() + i * nn);
        }
        return v;
    };

    Subspace solutions = Subspace::full(spec.dim());
    for (const auto& L : group.algebra) {
        solutions = restrict_to_kernel(solutions, [&](const std::vector<Rational>& v) {
            return reduce_slots(apply_infinitesimal(spec, L, v));
        });
    }
    for (const auto& g : group.reps) {
        const RatMatrix ginv_t = transpose(detail::require_inverse(g, "inner_torsion_space"));
        const RatMatrix gt = transpose(g);
        solutions = restrict_to_kernel(solutions, [&](const std::vector<Rational>& v) {
            // g lambda(e_i) g^{-1}  minus  lambda(g e_i)
            std::vector<Rational> ad = apply_to_slot(v, 3, n, 1, g);
            ad = apply_to_slot(ad, 3, n, 2, ginv_t);
            detail::acc_sub(ad, apply_to_slot(v, 3, n, 0, gt));
            return reduce_slots(std::move(ad));
        });
    }

    // Hom(R^n, algebra), vectorized: one algebra block per slot.
    RatMatrix hom_rows(n * group.algebra.size(), spec.dim());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t b = 0; b < group.algebra.size(); ++b) {
            std::vector<Rational> vb = vectorize(group.algebra[b]);
            for (std::size_t t = 0; t < nn; ++t)
                hom_rows.at(i * group.algebra.size() + b, i * nn + t) = vb[t];
        }
    Subspace modulo = Subspace::span_of(hom_rows);

    RatMatrix reduced(solutions.dim(), spec.dim());
    for (std::size_t r = 0; r < solutions.dim(); ++r) {
        std::vector<Rational> row(spec.dim());
        for (std::size_t j = 0; j < spec.dim(); ++j) row[j] = solutions.basis.at(r, j);
        row = reduce_slots(std::move(row));
        for (std::size_t j = 0; j < spec.dim(); ++j) reduced.at(r, j) = row[j];
    }
    Subspace quotient = Subspace::span_of(reduced);

    InnerTorsionSolution sol;
    sol.modulo = std::move(modulo);
    sol.quotient_dim = quotient.dim();
    for (std::size_t r = 0; r < sol.quotient_dim; ++r) {
        std::vector<Rational> row(spec.dim());
        for (std::size_t j = 0; j < spec.dim(); ++j) row[j] = quotient.basis.at(r, j);
        sol.lambda_basis.emplace_back(spec, std::move(row));
    }
    return sol;
}

/// Keeps only the tensors whose endomorphisms R(e_i, e_j) take values in the
/// algebra span.  Defined for (3,1)-valence results.
inline InvariantSpaceResult g_valued_filter(const InvariantSpaceResult& result,
                                            const GroupSpec& group) {
    if (result.spec.valence != Valence::map31)
        throw std::invalid_argument("g_valued_filter: expected a (3,1)-valence result");
    if (result.spec.n != group.n)
        throw std::invalid_argument("g_valued_filter: group and tensor dimensions differ");
    const std::size_t n = group.n;
    const Subspace gspan = group.algebra_span();
    auto apply = [&](const std::vector<Rational>& v) {
        std::vector<Rational> out;
        out.reserve(n * n * n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                RatMatrix m(n, n);
                for (std::size_t k = 0; k < n; ++k)
                    for (std::size_t l = 0; l < n; ++l) m.at(l, k) = v[((i * n + j) * n + k) * n + l];
                std::vector<Rational> red = gspan.coset_reduce(vectorize(m));
                out.insert(out.end(), red.begin(), red.end());
            }
        return out;
    };
    InvariantSpaceResult filtered = result;
    filtered.space = restrict_to_kernel(result.space, apply);
    filtered.filters.push_back("g-valued");
    return filtered;
}

}  // namespace etk
