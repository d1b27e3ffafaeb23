#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "etk/named_tensors.hpp"
#include "etk/tensor.hpp"
#include "oracle.hpp"

using namespace etk;

namespace {

std::vector<Rational> basis_vec(std::size_t n, std::size_t i) {
    std::vector<Rational> v(n);
    v[i] = 1;
    return v;
}

std::vector<Rational> random_vec(std::mt19937& gen, std::size_t n) {
    std::vector<Rational> v(n);
    for (auto& x : v) x = frac(static_cast<long>(gen() % 9) - 4, static_cast<long>(gen() % 3) + 1);
    return v;
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// oracle-side constraint stack for a spec
std::size_t oracle_symmetry_dim(const TensorSpec& spec) {
    std::vector<oracle::Row> rows;
    if (spec.skew12) oracle::append_rows(rows, oracle::skew12_rows(spec.n, spec.arity()));
    if (spec.skew34) oracle::append_rows(rows, oracle::skew34_rows(spec.n));
    if (spec.bianchi) oracle::append_rows(rows, oracle::bianchi_rows(spec.n));
    if (rows.empty()) return spec.dim();
    return oracle::nullity(rows, spec.dim());
}

// random element of a subspace with small integer coefficients
std::vector<Rational> random_member(std::mt19937& gen, const Subspace& s) {
    std::vector<Rational> v(s.ambient);
    for (std::size_t r = 0; r < s.dim(); ++r) {
        Rational c = frac(static_cast<long>(gen() % 7) - 3);
        if (sgn(c) == 0) continue;
        for (std::size_t j = 0; j < s.ambient; ++j) v[j] += c * s.basis.at(r, j);
    }
    return v;
}

}  // namespace

TEST_CASE("flat index layout") {
    TensorSpec spec(3, Valence::map21, true);
    CHECK(flat_index(spec, {1, 2, 0}) == 15);
    CHECK(flat_index(spec, {0, 0, 0}) == 0);
    CHECK(flat_index(spec, {2, 2, 2}) == 26);
    CHECK(multi_index(spec, 15) == std::vector<std::size_t>{1, 2, 0});
    CHECK_THROWS_AS(flat_index(spec, {0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(flat_index(spec, {0, 0, 3}), std::invalid_argument);

    std::mt19937 gen(7);
    TensorSpec q(4, Valence::quad40);
    for (int t = 0; t < 20; ++t) {
        std::size_t f = gen() % q.dim();
        CHECK(flat_index(q, multi_index(q, f)) == f);
    }
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(TensorSpec(3, Valence::map31, true, true, false), std::invalid_argument);
    CHECK_THROWS_AS(TensorSpec(3, Valence::map21, true, false, true), std::invalid_argument);
    CHECK_THROWS_AS(TensorSpec(3, Valence::inner_torsion, true), std::invalid_argument);
    CHECK_THROWS_AS(TensorSpec(0, Valence::map21), std::invalid_argument);
    CHECK(TensorSpec(3, Valence::map21, true).dim() == 27);
    CHECK(TensorSpec(3, Valence::map31).dim() == 81);
    CHECK(TensorSpec(2, Valence::quad40).dim() == 16);
    CHECK(TensorSpec(3, Valence::inner_torsion).dim() == 27);
    CHECK(valence_from_string(to_string(Valence::inner_torsion)) == Valence::inner_torsion);
}

TEST_CASE("symmetry subspace dimensions match the oracle") {
    for (std::size_t n = 2; n <= 3; ++n) {
        std::vector<TensorSpec> specs = {
            TensorSpec(n, Valence::map21, true),
            TensorSpec(n, Valence::map31, true),
            TensorSpec(n, Valence::map31, true, false, true),
            TensorSpec(n, Valence::quad40, true),
            TensorSpec(n, Valence::quad40, true, true),
            TensorSpec(n, Valence::quad40, true, true, true),
            TensorSpec(n, Valence::quad40, false, false, true),  // no-skew12 fallback path
            TensorSpec(n, Valence::quad40, false, true, false),
        };
        for (const auto& spec : specs) {
            INFO("n=" << n << " valence=" << to_string(spec.valence) << " s12=" << spec.skew12
                      << " s34=" << spec.skew34 << " b=" << spec.bianchi);
            CHECK(symmetry_subspace(spec).dim() == oracle_symmetry_dim(spec));
        }
    }
}

TEST_CASE("symmetry subspace known dimensions") {
    // skew12-only spaces: n^2 * C(n,2) coordinates for 4-slot, n * C(n,2) for 3-slot
    CHECK(symmetry_subspace(TensorSpec(3, Valence::map21, true)).dim() == 9);
    CHECK(symmetry_subspace(TensorSpec(2, Valence::map21, true)).dim() == 2);
    CHECK(symmetry_subspace(TensorSpec(3, Valence::map31, true)).dim() == 27);
    // full curvature symmetries at n=2 cut down to a single class
    CHECK(symmetry_subspace(TensorSpec(2, Valence::quad40, true, true, true)).dim() == 1);
    // the Bianchi sum is already decisive at n=2 without skewness in slots 3,4
    CHECK(symmetry_subspace(TensorSpec(2, Valence::map31, true, false, true)).dim() == 1);
    // unconstrained and inner torsion spaces are full
    CHECK(symmetry_subspace(TensorSpec(2, Valence::quad40)).dim() == 16);
    CHECK(symmetry_subspace(inner_torsion_spec(3)).dim() == 27);
}

TEST_CASE("bianchi projector annihilates constrained subspaces") {
    std::mt19937 gen(31);
    for (std::size_t n = 2; n <= 3; ++n) {
        for (auto valence : {Valence::map31, Valence::quad40}) {
            TensorSpec spec(n, valence, true, false, true);
            Subspace s = symmetry_subspace(spec);
            for (int t = 0; t < 5; ++t) {
                auto v = random_member(gen, s);
                CHECK(is_zero_vector(bianchi_sum(spec, v)));
                CHECK(is_zero_vector(skew12_residual(spec, v)));
            }
        }
    }
}

TEST_CASE("index lowering sends K0 to K") {
    for (std::size_t n = 2; n <= 4; ++n) {
        TensorElement k0 = tensor_k0(n);
        TensorElement lowered = lower_index(k0);
        CHECK(lowered.spec.valence == Valence::quad40);
        CHECK(lowered.coords == tensor_k(n).coords);
        // and back
        TensorElement roundtrip = raise_index(lowered);
        CHECK(roundtrip == k0);
    }
}

TEST_CASE("lowering mirrors symmetry subspaces") {
    for (std::size_t n = 2; n <= 3; ++n) {
        Subspace a = symmetry_subspace(TensorSpec(n, Valence::map31, true, false, true));
        Subspace b = symmetry_subspace(TensorSpec(n, Valence::quad40, true, false, true));
        CHECK(a.basis == b.basis);  // coordinate-identical bases
    }
    std::mt19937 gen(41);
    TensorSpec spec31(3, Valence::map31, true, false, true);
    Subspace s = symmetry_subspace(spec31);
    for (int t = 0; t < 5; ++t) {
        TensorElement e(spec31, random_member(gen, s));
        CHECK(raise_index(lower_index(e)) == e);
        CHECK(lower_index(e).coords == e.coords);
    }
}

TEST_CASE("named tensors satisfy their declared symmetries") {
    auto check_membership = [](const TensorElement& t) {
        Subspace s = symmetry_subspace(t.spec);
        CHECK(s.contains(t.coords));
    };
    for (std::size_t n = 2; n <= 4; ++n) {
        check_membership(tensor_k(n));
        check_membership(tensor_k0(n));
    }
    check_membership(tensor_cross());
    check_membership(tensor_bold_k(1));
    check_membership(tensor_bold_k(2));
    check_membership(tensor_k_factor(2, 2, 1));
    check_membership(tensor_k_factor(2, 3, 2));
}

TEST_CASE("K0 evaluation identity") {
    std::mt19937 gen(55);
    for (std::size_t n = 2; n <= 4; ++n) {
        TensorElement k0 = tensor_k0(n);
        auto u = random_vec(gen, n), v = random_vec(gen, n), w = random_vec(gen, n);
        auto got = evaluate(k0, u, v, w);
        // <v,w> u - <u,w> v
        auto want = vec_sub(vec_scale(dot(v, w), u), vec_scale(dot(u, w), v));
        CHECK(got == want);
    }
    TensorElement k0 = tensor_k0(3);
    CHECK(evaluate(k0, basis_vec(3, 0), basis_vec(3, 1), basis_vec(3, 1)) == basis_vec(3, 0));
    auto minus_e2 = vec_scale(Rational(-1), basis_vec(3, 1));
    CHECK(evaluate(k0, basis_vec(3, 0), basis_vec(3, 1), basis_vec(3, 0)) == minus_e2);
}

TEST_CASE("K quadrilinear evaluation identity") {
    std::mt19937 gen(56);
    for (std::size_t n = 2; n <= 4; ++n) {
        TensorElement k = tensor_k(n);
        auto u1 = random_vec(gen, n), u2 = random_vec(gen, n);
        auto u3 = random_vec(gen, n), u4 = random_vec(gen, n);
        CHECK(evaluate(k, u1, u2, u3, u4) == dot(u2, u3) * dot(u1, u4) - dot(u1, u3) * dot(u2, u4));
    }
}

TEST_CASE("cross product tensor") {
    TensorElement c = tensor_cross();
    CHECK(evaluate(c, basis_vec(3, 0), basis_vec(3, 1)) == basis_vec(3, 2));
    CHECK(evaluate(c, basis_vec(3, 1), basis_vec(3, 2)) == basis_vec(3, 0));
    CHECK(evaluate(c, basis_vec(3, 2), basis_vec(3, 0)) == basis_vec(3, 1));

    std::mt19937 gen(57);
    for (int t = 0; t < 10; ++t) {
        auto u = random_vec(gen, 3), v = random_vec(gen, 3);
        auto w = evaluate(c, u, v);
        CHECK(sgn(dot(w, u)) == 0);
        CHECK(sgn(dot(w, v)) == 0);
        CHECK(evaluate(c, v, u) == vec_scale(Rational(-1), w));
    }
}

TEST_CASE("boldK values") {
    for (std::size_t nc = 1; nc <= 2; ++nc) {
        TensorElement bk = tensor_bold_k(nc);
        RatMatrix j = complex_structure(nc);
        auto e1 = basis_vec(2 * nc, 0);
        auto ie1 = mat_vec(j, e1);
        CHECK(evaluate(bk, e1, ie1, e1, ie1) == Rational(1));

        // full 5-term formula on random vectors
        std::mt19937 gen(58 + static_cast<unsigned>(nc));
        for (int t = 0; t < 5; ++t) {
            auto u1 = random_vec(gen, 2 * nc), u2 = random_vec(gen, 2 * nc);
            auto u3 = random_vec(gen, 2 * nc), u4 = random_vec(gen, 2 * nc);
            auto ju2 = mat_vec(j, u2), ju3 = mat_vec(j, u3), ju4 = mat_vec(j, u4);
            Rational want = dot(u1, u3) * dot(u2, u4) - dot(u1, u4) * dot(u2, u3) +
                            dot(u1, ju3) * dot(u2, ju4) - dot(u1, ju4) * dot(u2, ju3) +
                            2 * dot(u1, ju2) * dot(u3, ju4);
            want /= 4;
            CHECK(evaluate(bk, u1, u2, u3, u4) == want);
        }
    }
    // sectional curvature of a holomorphic plane: boldK(e1, ie1, ie1, e1) = -1
    TensorElement bk = tensor_bold_k(2);
    RatMatrix j = complex_structure(2);
    auto e1 = basis_vec(4, 0);
    auto ie1 = mat_vec(j, e1);
    CHECK(evaluate(bk, e1, ie1, ie1, e1) == Rational(-1));
}

TEST_CASE("factor restrictions of K") {
    TensorElement k1 = tensor_k_factor(2, 2, 1);
    TensorElement k2 = tensor_k_factor(2, 2, 2);
    auto e = [&](std::size_t i) { return basis_vec(4, i); };
    // inside factor 1 the K identity holds
    CHECK(evaluate(k1, e(0), e(1), e(1), e(0)) == Rational(1));
    // any argument outside the factor kills the value
    CHECK(evaluate(k1, e(0), e(2), e(2), e(0)) == Rational(0));
    CHECK(evaluate(k1, e(2), e(3), e(3), e(2)) == Rational(0));
    CHECK(evaluate(k2, e(2), e(3), e(3), e(2)) == Rational(1));
    CHECK(evaluate(k2, e(0), e(1), e(1), e(0)) == Rational(0));
    // K restricted to the factors differs from K by the mixed-block part
    TensorElement k = tensor_k(4);
    CHECK(evaluate(k, e(0), e(2), e(2), e(0)) == Rational(1));
    auto sum = vec_add(k1.coords, k2.coords);
    CHECK(sum != k.coords);
}

TEST_CASE("evaluate is multilinear") {
    std::mt19937 gen(60);
    TensorElement k0 = tensor_k0(3);
    auto u = random_vec(gen, 3), u2 = random_vec(gen, 3);
    auto v = random_vec(gen, 3), w = random_vec(gen, 3);
    Rational a = frac(3, 2);
    auto lhs = evaluate(k0, vec_add(u, vec_scale(a, u2)), v, w);
    auto rhs = vec_add(evaluate(k0, u, v, w), vec_scale(a, evaluate(k0, u2, v, w)));
    CHECK(lhs == rhs);
    auto lhs2 = evaluate(k0, u, vec_add(v, vec_scale(a, u2)), w);
    auto rhs2 = vec_add(evaluate(k0, u, v, w), vec_scale(a, evaluate(k0, u, u2, w)));
    CHECK(lhs2 == rhs2);
}

TEST_CASE("apply_to_slot basics") {
    std::mt19937 gen(61);
    TensorSpec spec(3, Valence::map21, true);
    Subspace s = symmetry_subspace(spec);
    auto v = random_member(gen, s);
    CHECK(apply_to_slot(v, 3, 3, 0, RatMatrix::identity(3)) == v);
    CHECK(apply_to_slot(v, 3, 3, 2, RatMatrix::identity(3)) == v);

    // contracting the coords of an endomorphism-style 2-slot array agrees
    // with matrix multiplication: out[r,c] = sum_s A[r,s] m[s,c]
    RatMatrix m(3, 3), a(3, 3);
    for (auto& x : m.data) x = frac(static_cast<long>(gen() % 7) - 3);
    for (auto& x : a.data) x = frac(static_cast<long>(gen() % 7) - 3);
    auto got = apply_to_slot(vectorize(m), 2, 3, 0, a);
    CHECK(got == vectorize(a * m));
    auto got2 = apply_to_slot(vectorize(m), 2, 3, 1, a);
    CHECK(got2 == vectorize(m * transpose(a)));
}

TEST_CASE("evaluate_endomorphism") {
    TensorSpec spec = inner_torsion_spec(2);
    std::vector<Rational> coords(spec.dim());
    // lambda(e0) = [[1,2],[3,4]], lambda(e1) = identity
    coords[0] = 1; coords[1] = 2; coords[2] = 3; coords[3] = 4;
    coords[4] = 1; coords[7] = 1;
    TensorElement lam(spec, coords);
    RatMatrix m0 = evaluate_endomorphism(lam, basis_vec(2, 0));
    CHECK(m0.at(0, 0) == Rational(1));
    CHECK(m0.at(0, 1) == Rational(2));
    CHECK(m0.at(1, 0) == Rational(3));
    CHECK(m0.at(1, 1) == Rational(4));
    CHECK(evaluate_endomorphism(lam, basis_vec(2, 1)) == RatMatrix::identity(2));
    std::vector<Rational> u = {frac(2), frac(-1)};
    RatMatrix mu = evaluate_endomorphism(lam, u);
    CHECK(mu.at(0, 0) == Rational(1));  // 2*1 - 1*1
    CHECK(mu.at(0, 1) == Rational(4));
}
