#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "etk/parallelism.hpp"

using namespace etk;

namespace {

struct Entry {
    std::size_t i, j, k;  // 1-based, matching the classical subscript notation
    Rational v;
};

/// Builds model data from sparse 1-based entries; lambda skewness is completed
/// automatically.
ParallelismData make_data(std::size_t n, const std::vector<Entry>& lam,
                          const std::vector<Entry>& gam) {
    std::vector<Rational> l(n * n * n), g(n * n * n);
    for (const auto& e : lam) {
        l[((e.i - 1) * n + (e.j - 1)) * n + (e.k - 1)] += e.v;
        l[((e.j - 1) * n + (e.i - 1)) * n + (e.k - 1)] -= e.v;
    }
    for (const auto& e : gam) g[((e.i - 1) * n + (e.j - 1)) * n + (e.k - 1)] += e.v;
    return ParallelismData(n, std::move(l), std::move(g));
}

const std::vector<Entry> so3_lambda = {{1, 2, 3, 1}, {2, 3, 1, 1}, {3, 1, 2, 1}};
// a rotation-boost algebra: also satisfies Jacobi, with one sign flipped
const std::vector<Entry> so21_lambda = {{1, 2, 3, 1}, {2, 3, 1, 1}, {3, 1, 2, -1}};
// genuinely inconsistent constants: the (1,2,3) cyclic sum is -X1 - X2 - X3
const std::vector<Entry> broken_lambda = {{1, 2, 1, 1}, {2, 3, 2, 1}, {3, 1, 3, 1}};

std::vector<Entry> half_ad(const std::vector<Entry>& lam) {
    std::vector<Entry> g;
    for (const auto& e : lam) {
        g.push_back({e.i, e.j, e.k, e.v / 2});
        g.push_back({e.j, e.i, e.k, -e.v / 2});
    }
    return g;
}

Rational lam_at(const ParallelismData& d, std::size_t i, std::size_t j, std::size_t k) {
    return d.lambda[(i * d.n + j) * d.n + k];
}

}  // namespace

TEST_CASE("model data validation") {
    CHECK_THROWS_AS(ParallelismData(2, std::vector<Rational>(7), std::vector<Rational>(8)),
                    std::invalid_argument);
    std::vector<Rational> bad(8);
    bad[(0 * 2 + 1) * 2 + 0] = 1;  // lambda_12^1 = 1 without the skew partner
    CHECK_THROWS_AS(ParallelismData(2, bad, std::vector<Rational>(8)), std::invalid_argument);
    std::vector<Rational> diag(8);
    diag[(0 * 2 + 0) * 2 + 1] = 1;  // lambda_11^2 must vanish by skewness
    CHECK_THROWS_AS(ParallelismData(2, diag, std::vector<Rational>(8)), std::invalid_argument);
}

TEST_CASE("jacobi check") {
    SECTION("abelian") {
        ParallelismData d(3, std::vector<Rational>(27), std::vector<Rational>(27));
        CHECK(jacobi_check(d));
        CHECK(!first_jacobi_violation(d));
    }
    SECTION("rotation algebra constants") {
        CHECK(jacobi_check(make_data(3, so3_lambda, {})));
    }
    SECTION("sign-flipped variant is still a Lie algebra") {
        // every double bracket in its (1,2,3) cyclic sum is of the form [X,X]
        CHECK(jacobi_check(make_data(3, so21_lambda, {})));
    }
    SECTION("inconsistent constants are detected") {
        auto d = make_data(3, broken_lambda, {});
        CHECK(!jacobi_check(d));
        auto v = first_jacobi_violation(d);
        REQUIRE(v.has_value());
        CHECK((*v)[0] == 0);
        CHECK((*v)[1] == 1);
        CHECK((*v)[2] == 2);
    }
}

TEST_CASE("torsion constants") {
    SECTION("flat abelian model") {
        ParallelismData d(2, std::vector<Rational>(8), std::vector<Rational>(8));
        TensorElement t = torsion_constants(d);
        CHECK(t.spec == torsion_spec(2));
        CHECK(is_zero_vector(t.coords));
    }
    SECTION("half-adjoint connection is torsion free") {
        for (const auto& lam : {so3_lambda, so21_lambda}) {
            auto d = make_data(3, lam, half_ad(lam));
            CHECK(is_zero_vector(torsion_constants(d).coords));
        }
    }
    SECTION("zero connection: torsion is minus the structure constants") {
        auto d = make_data(3, so3_lambda, {});
        TensorElement t = torsion_constants(d);
        for (std::size_t f = 0; f < 27; ++f) CHECK(t.coords[f] == -d.lambda[f]);
    }
    SECTION("output is skew for arbitrary connections") {
        std::mt19937 gen(5);
        std::vector<Rational> g(27);
        for (auto& x : g) x = Rational(long(gen() % 7) - 3);
        ParallelismData d(3, std::vector<Rational>(27), g);
        CHECK(is_zero_vector(skew12_residual(torsion_spec(3), torsion_constants(d).coords)));
    }
    SECTION("jacobi failure is an error") {
        auto d = make_data(3, broken_lambda, {});
        CHECK_THROWS_AS(torsion_constants(d), std::invalid_argument);
        CHECK_THROWS_AS(curvature_constants(d), std::invalid_argument);
    }
}

TEST_CASE("curvature constants") {
    SECTION("zero connection is flat") {
        auto d = make_data(3, so3_lambda, {});
        CHECK(is_zero_vector(curvature_constants(d).coords));
    }
    SECTION("commuting abelian connection is flat") {
        std::vector<Entry> g = {{1, 1, 1, 2}, {2, 2, 2, 5}, {1, 2, 2, 1}};  // diagonal blocks
        auto d = make_data(2, {}, g);
        // Gamma_1 = diag(2, 1), Gamma_2 = diag(0, 5): commuting
        CHECK(is_zero_vector(curvature_constants(d).coords));
    }
    SECTION("half-adjoint connection: R(u,v) = -1/4 ad([u,v])") {
        for (const auto& lam : {so3_lambda, so21_lambda}) {
            auto d = make_data(3, lam, half_ad(lam));
            TensorElement r = curvature_constants(d);
            CHECK(r.spec == TensorSpec(3, Valence::map31, true));
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = 0; j < 3; ++j)
                    for (std::size_t k = 0; k < 3; ++k)
                        for (std::size_t l = 0; l < 3; ++l) {
                            Rational expected;
                            for (std::size_t m = 0; m < 3; ++m)
                                expected -= lam_at(d, i, j, m) * lam_at(d, m, k, l) / 4;
                            CHECK(r.coords[((i * 3 + j) * 3 + k) * 3 + l] == expected);
                        }
        }
    }
    SECTION("rotation example, explicitly") {
        auto d = make_data(3, so3_lambda, half_ad(so3_lambda));
        TensorElement r = curvature_constants(d);
        // R(e1, e2) = -1/4 ad(e3): e1 -> -1/4 e2, e2 -> 1/4 e1, e3 -> 0
        CHECK(r.coords[((0 * 3 + 1) * 3 + 0) * 3 + 1] == frac(-1, 4));
        CHECK(r.coords[((0 * 3 + 1) * 3 + 1) * 3 + 0] == frac(1, 4));
        CHECK(r.coords[((0 * 3 + 1) * 3 + 0) * 3 + 0] == 0);
        CHECK(r.coords[((0 * 3 + 1) * 3 + 2) * 3 + 0] == 0);
        CHECK(r.coords[((0 * 3 + 1) * 3 + 2) * 3 + 1] == 0);
        CHECK(r.coords[((0 * 3 + 1) * 3 + 2) * 3 + 2] == 0);
    }
}

namespace {

/// Classical first Bianchi sum, cyclic in the three input slots.
std::vector<Rational> input_cyclic_sum(const TensorElement& r) {
    const std::size_t n = r.spec.n;
    std::vector<Rational> out(r.coords.size());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l)
                    out[((i * n + j) * n + k) * n + l] =
                        r.coords[((i * n + j) * n + k) * n + l] +
                        r.coords[((j * n + k) * n + i) * n + l] +
                        r.coords[((k * n + i) * n + j) * n + l];
    return out;
}

}  // namespace

TEST_CASE("torsion-free models satisfy the classical first Bianchi identity") {
    SECTION("half-adjoint connections") {
        for (const auto& lam : {so3_lambda, so21_lambda}) {
            auto d = make_data(3, lam, half_ad(lam));
            REQUIRE(is_zero_vector(torsion_constants(d).coords));
            CHECK(is_zero_vector(input_cyclic_sum(curvature_constants(d))));
        }
    }
    SECTION("abelian frame with a symmetric connection") {
        std::mt19937 gen(9);
        std::vector<Rational> g(27);
        ParallelismData d(3, std::vector<Rational>(27), g);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i; j < 3; ++j)
                for (std::size_t k = 0; k < 3; ++k) {
                    Rational v = frac(long(gen() % 9) - 4, long(gen() % 2) + 1);
                    d.gamma[(i * 3 + j) * 3 + k] = v;
                    d.gamma[(j * 3 + i) * 3 + k] = v;
                }
        REQUIRE(is_zero_vector(torsion_constants(d).coords));
        TensorElement r = curvature_constants(d);
        CHECK(is_zero_vector(skew12_residual(r.spec, r.coords)));
        CHECK(is_zero_vector(input_cyclic_sum(r)));
    }
}
