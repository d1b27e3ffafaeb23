#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "etk/linalg.hpp"

namespace etk {

/// A matrix structure group, described by exact rational data: a basis of its
/// Lie algebra inside gl(n,R) plus finitely many component representatives
/// (invertible matrices witnessing connected components beyond the identity
/// component).
struct GroupSpec {
    std::string name;    // display name, e.g. "so(3)"
    std::string family;  // builtin family id, or "custom"
    std::size_t n = 0;   // ambient dimension
    std::vector<RatMatrix> algebra;
    std::vector<RatMatrix> reps;

    Subspace algebra_span() const {
        RatMatrix stack(algebra.size(), n * n);
        for (std::size_t i = 0; i < algebra.size(); ++i) {
            auto v = vectorize(algebra[i]);
            for (std::size_t j = 0; j < v.size(); ++j) stack.at(i, j) = v[j];
        }
        return Subspace::span_of(stack);
    }
};

// --- builtin families ------------------------------------------------------

namespace detail {
inline void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}
inline RatMatrix sign_flip(std::size_t n, std::size_t pos) {
    RatMatrix m = RatMatrix::identity(n);
    m.at(pos, pos) = -1;
    return m;
}
}  // namespace detail

/// The trivial group {1}.
inline GroupSpec group_trivial(std::size_t n) {
    detail::require(n >= 1, "trivial: n must be >= 1");
    return {"trivial(" + std::to_string(n) + ")", "trivial", n, {}, {}};
}

/// Full general linear group GL(n,R); algebra basis: all elementary matrices.
inline GroupSpec group_gl(std::size_t n) {
    detail::require(n >= 1, "gl: n must be >= 1");
    GroupSpec g{"gl(" + std::to_string(n) + ")", "gl", n, {}, {}};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g.algebra.push_back(RatMatrix::unit(n, i, j));
    return g;
}

/// Special linear group SL(n,R); traceless basis.
inline GroupSpec group_sl(std::size_t n) {
    detail::require(n >= 2, "sl: n must be >= 2");
    GroupSpec g{"sl(" + std::to_string(n) + ")", "sl", n, {}, {}};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) g.algebra.push_back(RatMatrix::unit(n, i, j));
    for (std::size_t i = 0; i + 1 < n; ++i)
        g.algebra.push_back(RatMatrix::unit(n, i, i) - RatMatrix::unit(n, i + 1, i + 1));
    return g;
}

/// Rotation group SO(n); basis E_ij - E_ji for i < j.
inline GroupSpec group_so(std::size_t n) {
    detail::require(n >= 1, "so: n must be >= 1");
    GroupSpec g{"so(" + std::to_string(n) + ")", "so", n, {}, {}};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            g.algebra.push_back(RatMatrix::unit(n, i, j) - RatMatrix::unit(n, j, i));
    return g;
}

/// Full orthogonal group O(n): so(n) plus the reflection diag(-1,1,...,1).
inline GroupSpec group_o(std::size_t n) {
    GroupSpec g = group_so(n);
    g.name = "o(" + std::to_string(n) + ")";
    g.family = "o";
    g.reps.push_back(detail::sign_flip(n, 0));
    return g;
}

/// Unitary group U(n) acting on C^n = R^{2n}. Real algebra basis: matrices
/// commuting with J with A^T = -A, via Z = X + iY |-> [[X, -Y], [Y, X]].
inline GroupSpec group_u(std::size_t n) {
    detail::require(n >= 1, "u: n must be >= 1");
    const std::size_t m = 2 * n;
    GroupSpec g{"u(" + std::to_string(n) + ")", "u", m, {}, {}};
    auto embed = [&](const RatMatrix& x, const RatMatrix& y) {
        RatMatrix a(m, m);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) {
                a.at(r, c) = x.at(r, c);
                a.at(n + r, n + c) = x.at(r, c);
                a.at(r, n + c) = -y.at(r, c);
                a.at(n + r, c) = y.at(r, c);
            }
        return a;
    };
    RatMatrix zero(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k)
            g.algebra.push_back(embed(RatMatrix::unit(n, j, k) - RatMatrix::unit(n, k, j), zero));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k)
            g.algebra.push_back(embed(zero, RatMatrix::unit(n, j, k) + RatMatrix::unit(n, k, j)));
    for (std::size_t j = 0; j < n; ++j) g.algebra.push_back(embed(zero, RatMatrix::unit(n, j, j)));
    return g;
}

/// Invertible diagonal matrices; algebra E_ii, reps all single sign flips.
inline GroupSpec group_diagonal(std::size_t n) {
    detail::require(n >= 1, "diagonal: n must be >= 1");
    GroupSpec g{"diagonal(" + std::to_string(n) + ")", "diagonal", n, {}, {}};
    for (std::size_t i = 0; i < n; ++i) g.algebra.push_back(RatMatrix::unit(n, i, i));
    for (std::size_t i = 0; i < n; ++i) g.reps.push_back(detail::sign_flip(n, i));
    return g;
}

/// Linear automorphisms of R^n preserving the subspace R^s x {0}: block
/// upper-triangular pattern. Sign reps cover the four components.
inline GroupSpec group_block(std::size_t n, std::size_t s) {
    detail::require(n >= 2 && s >= 1 && s < n, "block: need n >= 2 and 1 <= s < n");
    GroupSpec g{"block(" + std::to_string(n) + "," + std::to_string(s) + ")", "block", n, {}, {}};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!(i >= s && j < s)) g.algebra.push_back(RatMatrix::unit(n, i, j));
    g.reps.push_back(detail::sign_flip(n, 0));
    g.reps.push_back(detail::sign_flip(n, n - 1));
    return g;
}

/// O(n1) x O(n2) block-diagonal in R^{n1+n2}: so(n1) + so(n2) with one
/// reflection per factor.
inline GroupSpec group_product_oo(std::size_t n1, std::size_t n2) {
    detail::require(n1 >= 1 && n2 >= 1, "product_oo: factors must be >= 1");
    const std::size_t n = n1 + n2;
    GroupSpec g{"product_oo(" + std::to_string(n1) + "," + std::to_string(n2) + ")",
                "product_oo", n, {}, {}};
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = i + 1; j < n1; ++j)
            g.algebra.push_back(RatMatrix::unit(n, i, j) - RatMatrix::unit(n, j, i));
    for (std::size_t i = n1; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            g.algebra.push_back(RatMatrix::unit(n, i, j) - RatMatrix::unit(n, j, i));
    g.reps.push_back(detail::sign_flip(n, 0));
    g.reps.push_back(detail::sign_flip(n, n1));
    return g;
}

/// The two-element group {I, -I}.
inline GroupSpec group_signs(std::size_t n) {
    detail::require(n >= 1, "signs: n must be >= 1");
    GroupSpec g{"signs(" + std::to_string(n) + ")", "signs", n, {}, {}};
    g.reps.push_back(Rational(-1) * RatMatrix::identity(n));
    return g;
}

/// Finite group given by generator matrices; empty Lie algebra.
inline GroupSpec group_finite(std::size_t n, std::vector<RatMatrix> generators) {
    detail::require(n >= 1, "finite: n must be >= 1");
    GroupSpec g{"finite(n=" + std::to_string(n) + "," + std::to_string(generators.size()) +
                    " gens)",
                "finite", n, {}, std::move(generators)};
    return g;
}

/// Parameters accepted by builtin families (CLI surface).
struct BuiltinParams {
    std::optional<std::size_t> n, n1, n2, s;
};

inline GroupSpec builtin_group(const std::string& family, const BuiltinParams& p) {
    auto need = [&](const std::optional<std::size_t>& v, const char* what) {
        if (!v) throw std::invalid_argument("group family '" + family + "' requires --" + what);
        return *v;
    };
    if (family == "trivial") return group_trivial(need(p.n, "n"));
    if (family == "gl") return group_gl(need(p.n, "n"));
    if (family == "sl") return group_sl(need(p.n, "n"));
    if (family == "so") return group_so(need(p.n, "n"));
    if (family == "o") return group_o(need(p.n, "n"));
    if (family == "u") return group_u(need(p.n, "n"));
    if (family == "diagonal") return group_diagonal(need(p.n, "n"));
    if (family == "block") return group_block(need(p.n, "n"), need(p.s, "s"));
    if (family == "product_oo") return group_product_oo(need(p.n1, "n1"), need(p.n2, "n2"));
    if (family == "signs") return group_signs(need(p.n, "n"));
    throw std::invalid_argument("unknown group family '" + family + "'");
}

// --- validation -------------------------------------------------------------

/// Structural checks on a GroupSpec. Returns human-readable violations;
/// an empty list means the data is usable.
inline std::vector<std::string> validate(const GroupSpec& g) {
    std::vector<std::string> out;
    if (g.n == 0) {
        out.push_back("ambient dimension must be positive");
        return out;
    }
    for (std::size_t i = 0; i < g.algebra.size(); ++i)
        if (g.algebra[i].rows != g.n || g.algebra[i].cols != g.n) {
            out.push_back("algebra element " + std::to_string(i) + " is not " +
                          std::to_string(g.n) + "x" + std::to_string(g.n));
            return out;
        }
    for (std::size_t i = 0; i < g.reps.size(); ++i)
        if (g.reps[i].rows != g.n || g.reps[i].cols != g.n) {
            out.push_back("component rep " + std::to_string(i) + " is not " +
                          std::to_string(g.n) + "x" + std::to_string(g.n));
            return out;
        }

    Subspace span = g.algebra_span();
    if (span.dim() != g.algebra.size())
        out.push_back("algebra basis is linearly dependent (rank " + std::to_string(span.dim()) +
                      " of " + std::to_string(g.algebra.size()) + ")");
    for (std::size_t i = 0; i < g.algebra.size(); ++i)
        for (std::size_t j = i + 1; j < g.algebra.size(); ++j)
            if (!span.contains(vectorize(commutator(g.algebra[i], g.algebra[j]))))
                out.push_back("bracket closure fails for basis pair (" + std::to_string(i) + "," +
                              std::to_string(j) + ")");

    std::vector<std::optional<RatMatrix>> inverses;
    for (std::size_t i = 0; i < g.reps.size(); ++i) {
        inverses.push_back(inverse(g.reps[i]));
        if (!inverses.back())
            out.push_back("component rep " + std::to_string(i) + " is singular");
    }
    for (std::size_t i = 0; i < g.reps.size(); ++i) {
        if (!inverses[i]) continue;
        for (std::size_t b = 0; b < g.algebra.size(); ++b)
            if (!span.contains(vectorize(g.reps[i] * g.algebra[b] * *inverses[i])))
                out.push_back("Ad-invariance fails: rep " + std::to_string(i) +
                              " does not normalize algebra element " + std::to_string(b));
    }
    return out;
}

// --- exact rational rotations ------------------------------------------------

/// Cayley transform (I - s)^{-1} (I + s); for skew-symmetric s this is a
/// special orthogonal matrix. Throws when I - s is singular.
inline RatMatrix cayley_orthogonal(const RatMatrix& s) {
    if (!s.is_square()) throw std::invalid_argument("cayley_orthogonal: non-square input");
    RatMatrix id = RatMatrix::identity(s.rows);
    auto inv = inverse(id - s);
    if (!inv) throw std::invalid_argument("cayley_orthogonal: I - s is singular");
    return *inv * (id + s);
}

/// Deterministic pseudo-random group elements: Cayley transforms of small
/// integer combinations of the algebra basis. Useful for groups whose algebra
/// is closed under the Cayley construction (orthogonal/unitary style blocks).
inline std::vector<RatMatrix> seeded_cayley_elements(const GroupSpec& g, std::size_t count,
                                                     unsigned seed) {
    std::vector<RatMatrix> out;
    if (g.algebra.empty()) return out;
    std::mt19937 gen(seed);
    std::size_t attempts = 0;
    while (out.size() < count && attempts < 100 * count + 100) {
        ++attempts;
        RatMatrix s(g.n, g.n);
        bool nonzero = false;
        for (const auto& b : g.algebra) {
            long c = static_cast<long>(gen() % 5) - 2;
            if (c == 0) continue;
            nonzero = true;
            s = s + frac(c) * b;
        }
        if (!nonzero) continue;
        RatMatrix id = RatMatrix::identity(g.n);
        auto inv = inverse(id - s);
        if (!inv) continue;
        out.push_back(*inv * (id + s));
    }
    return out;
}

// --- scalar matrix census ----------------------------------------------------

/// What is rationally known about scalar matrices c*I inside the group.
/// Consistency data only; the classification itself never consumes it.
struct ScalarCensus {
    bool infinite_scalars = false;          // identity lies in the algebra span
    std::size_t known_scalar_count = 1;     // distinct scalars witnessed by words (incl. I)
    bool contains_minus_identity = false;   // -I witnessed exactly
    bool minus_identity_from_reps = false;  // ... by words in component reps alone
    bool minus_identity_on_one_param = false;  // ... as exp(pi b) = I + 2 b^2, b in basis
};

namespace detail {

inline std::string matrix_key(const RatMatrix& m) {
    std::string k;
    for (const auto& x : m.data) {
        k += x.get_str();
        k += ',';
    }
    return k;
}

inline std::optional<Rational> as_scalar(const RatMatrix& m) {
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j)
            if (i != j && sgn(m.at(i, j)) != 0) return std::nullopt;
    for (std::size_t i = 1; i < m.rows; ++i)
        if (m.at(i, i) != m.at(0, 0)) return std::nullopt;
    return m.at(0, 0);
}

/// All products of at most max_len alphabet letters (deduplicated, identity included).
inline std::vector<RatMatrix> bounded_words(std::size_t n, const std::vector<RatMatrix>& alphabet,
                                            std::size_t max_len) {
    std::vector<RatMatrix> seen = {RatMatrix::identity(n)};
    std::map<std::string, bool> keys;
    keys[matrix_key(seen[0])] = true;
    std::vector<RatMatrix> frontier = seen;
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<RatMatrix> next;
        for (const auto& w : frontier)
            for (const auto& a : alphabet) {
                RatMatrix p = a * w;
                auto key = matrix_key(p);
                if (keys.contains(key)) continue;
                keys[key] = true;
                seen.push_back(p);
                next.push_back(std::move(p));
            }
        frontier = std::move(next);
        if (frontier.empty()) break;
    }
    return seen;
}

}  // namespace detail

/// Exact, terminating census of scalar matrices known to lie in the group:
/// (i) identity in the algebra span witnesses a full ray of scalars;
/// (ii) a bounded word search (length <= 4) over the component reps plus the
/// exact one-parameter witnesses exp(pi b) = I + 2 b^2 for every algebra
/// basis element b with b^3 = -b (a rational point of the one-parameter
/// subgroup through b, by the Rodrigues identity).
inline ScalarCensus scalar_matrix_census(const GroupSpec& g) {
    ScalarCensus census;
    const RatMatrix id = RatMatrix::identity(g.n);
    const RatMatrix minus_id = Rational(-1) * id;

    if (!g.algebra.empty()) census.infinite_scalars = g.algebra_span().contains(vectorize(id));

    std::vector<RatMatrix> alphabet = g.reps;
    for (const auto& b : g.algebra) {
        RatMatrix b2 = b * b;
        if (b2 * b == Rational(-1) * b && !b2.is_zero()) {
            RatMatrix half_turn = id + frac(2) * b2;
            if (half_turn == minus_id) census.minus_identity_on_one_param = true;
            alphabet.push_back(std::move(half_turn));
        }
    }

    std::map<std::string, bool> scalars;
    for (const auto& w : detail::bounded_words(g.n, alphabet, 4)) {
        if (auto c = detail::as_scalar(w)) scalars[c->get_str()] = true;
        if (w == minus_id) census.contains_minus_identity = true;
    }
    census.known_scalar_count = scalars.size();

    if (!g.reps.empty())
        for (const auto& w : detail::bounded_words(g.n, g.reps, 4))
            if (w == minus_id) census.minus_identity_from_reps = true;

    return census;
}

}  // namespace etk
