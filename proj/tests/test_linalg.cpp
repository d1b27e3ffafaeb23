#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "etk/linalg.hpp"

using namespace etk;

namespace {

RatMatrix from_ints(std::vector<std::vector<long>> rows) {
    RatMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = Rational(rows[i][j]);
    return m;
}

std::vector<Rational> vec_of(std::vector<long> xs) {
    std::vector<Rational> v(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) v[i] = Rational(xs[i]);
    return v;
}

// Deterministic small-rational matrix for property tests.
RatMatrix random_matrix(std::mt19937& gen, std::size_t rows, std::size_t cols) {
    RatMatrix m(rows, cols);
    for (auto& x : m.data) {
        long num = static_cast<long>(gen() % 9) - 4;
        long den = static_cast<long>(gen() % 3) + 1;
        x = frac(num, den);
    }
    return m;
}

}  // namespace

TEST_CASE("rational canonical form") {
    CHECK(to_string(frac(6, -4)) == "-3/2");
    CHECK(to_string(frac(0, 7)) == "0");
    CHECK(to_string(frac(10, 5)) == "2");
    CHECK(parse_rational("-3/2") == frac(-3, 2));
    CHECK(parse_rational("4/6") == frac(2, 3));
    CHECK(parse_rational("12") == Rational(12));
    CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
    CHECK_THROWS_AS(frac(1, 0), std::invalid_argument);
    CHECK(is_integer(frac(4, 2)));
    CHECK(!is_integer(frac(1, 2)));
}

TEST_CASE("rref examples") {
    SECTION("already reduced") {
        auto rr = rref(RatMatrix::identity(3));
        CHECK(rr.mat == RatMatrix::identity(3));
        CHECK(rr.pivots == std::vector<std::size_t>{0, 1, 2});
    }
    SECTION("swap and scale") {
        auto rr = rref(from_ints({{0, 2}, {3, 0}}));
        CHECK(rr.mat == RatMatrix::identity(2));
        CHECK(rr.pivots == std::vector<std::size_t>{0, 1});
    }
    SECTION("proportional rows collapse") {
        auto rr = rref(from_ints({{2, 4}, {1, 2}}));
        CHECK(rr.mat == from_ints({{1, 2}, {0, 0}}));
        CHECK(rr.rank() == 1);
    }
    SECTION("zero matrix") {
        auto rr = rref(RatMatrix(2, 3));
        CHECK(rr.rank() == 0);
        CHECK(rr.mat == RatMatrix(2, 3));
    }
}

TEST_CASE("rref properties") {
    std::mt19937 gen(12345);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t rows = 1 + gen() % 5;
        std::size_t cols = 1 + gen() % 5;
        RatMatrix m = random_matrix(gen, rows, cols);
        auto rr = rref(m);
        SECTION("idempotent, trial " + std::to_string(trial)) {}
        auto rr2 = rref(rr.mat);
        CHECK(rr2.mat == rr.mat);
        CHECK(rr2.pivots == rr.pivots);
        // rank-nullity
        CHECK(rr.rank() + kernel(m).dim() == cols);
        // pivot structure: pivot entries are 1 and alone in their column
        for (std::size_t t = 0; t < rr.rank(); ++t) {
            CHECK(rr.mat.at(t, rr.pivots[t]) == Rational(1));
            for (std::size_t i = 0; i < rows; ++i)
                if (i != t) CHECK(sgn(rr.mat.at(i, rr.pivots[t])) == 0);
        }
    }
}

TEST_CASE("kernel examples") {
    SECTION("one relation") {
        Subspace k = kernel(from_ints({{1, 1}}));
        REQUIRE(k.dim() == 1);
        CHECK(k.basis == from_ints({{1, -1}}));
    }
    SECTION("invertible matrix has trivial kernel") {
        CHECK(kernel(from_ints({{2, 1}, {1, 1}})).dim() == 0);
    }
    SECTION("zero map has full kernel") {
        Subspace k = kernel(RatMatrix(2, 3));
        CHECK(k.dim() == 3);
        CHECK(k.basis == RatMatrix::identity(3));
    }
    SECTION("members are annihilated") {
        RatMatrix m = from_ints({{1, 2, 3}, {4, 5, 6}});
        Subspace k = kernel(m);
        REQUIRE(k.dim() == 1);
        std::vector<Rational> v(k.basis.data.begin(), k.basis.data.end());
        CHECK(is_zero_vector(mat_vec(m, v)));
    }
}

TEST_CASE("span canonicalization") {
    // Same row space presented differently yields the identical Subspace.
    Subspace a = Subspace::span_of(from_ints({{1, 2, 0}, {0, 0, 3}}));
    Subspace b = Subspace::span_of(from_ints({{2, 4, 3}, {1, 2, 3}, {3, 6, 6}}));
    CHECK(a == b);
    CHECK(a.dim() == 2);
}

TEST_CASE("intersection") {
    SECTION("plane meets line") {
        Subspace plane = Subspace::span_of(from_ints({{1, 0, 0}, {0, 1, 0}}));
        Subspace diag = Subspace::span_of(from_ints({{1, 1, 0}, {0, 0, 1}}));
        Subspace got = intersect(plane, diag);
        REQUIRE(got.dim() == 1);
        CHECK(got.basis == from_ints({{1, 1, 0}}));
    }
    SECTION("disjoint lines") {
        Subspace a = Subspace::span_of(from_ints({{1, 0}}));
        Subspace b = Subspace::span_of(from_ints({{0, 1}}));
        CHECK(intersect(a, b).dim() == 0);
    }
    SECTION("intersection with full space is identity") {
        std::mt19937 gen(77);
        RatMatrix m = random_matrix(gen, 3, 5);
        Subspace s = Subspace::span_of(m);
        CHECK(intersect(s, Subspace::full(5)) == s);
        CHECK(intersect(Subspace::full(5), s) == s);
    }
}

TEST_CASE("contains and coset_reduce") {
    Subspace s = Subspace::span_of(from_ints({{1, 1, 0}, {0, 0, 1}}));
    CHECK(s.contains(vec_of({2, 2, 5})));
    CHECK(!s.contains(vec_of({1, 0, 0})));

    SECTION("pivot coordinates are zeroed") {
        auto r = s.coset_reduce(vec_of({2, 3, 5}));
        CHECK(sgn(r[0]) == 0);
        CHECK(sgn(r[2]) == 0);
        CHECK(r[1] == Rational(1));
    }
    SECTION("representative depends only on the coset") {
        std::mt19937 gen(99);
        for (int trial = 0; trial < 20; ++trial) {
            RatMatrix m = random_matrix(gen, 2, 4);
            Subspace sp = Subspace::span_of(m);
            std::vector<Rational> v;
            for (int j = 0; j < 4; ++j) v.push_back(frac(static_cast<long>(gen() % 7) - 3));
            // w = random element of sp
            std::vector<Rational> w(4);
            for (std::size_t r2 = 0; r2 < sp.dim(); ++r2) {
                Rational c = frac(static_cast<long>(gen() % 5) - 2);
                for (std::size_t j = 0; j < 4; ++j) w[j] += c * sp.basis.at(r2, j);
            }
            CHECK(sp.coset_reduce(vec_add(v, w)) == sp.coset_reduce(v));
            CHECK(sp.contains(sp.coset_reduce(v)) == sp.contains(v));
        }
    }
}

TEST_CASE("inverse and determinant") {
    RatMatrix m = from_ints({{2, 1}, {1, 1}});
    auto inv = inverse(m);
    REQUIRE(inv.has_value());
    CHECK(m * *inv == RatMatrix::identity(2));
    CHECK(determinant(m) == Rational(1));
    CHECK(!inverse(from_ints({{1, 2}, {2, 4}})).has_value());
    CHECK(determinant(from_ints({{1, 2}, {2, 4}})) == Rational(0));

    std::mt19937 gen(2024);
    for (int trial = 0; trial < 15; ++trial) {
        RatMatrix a = random_matrix(gen, 3, 3);
        RatMatrix b = random_matrix(gen, 3, 3);
        CHECK(determinant(a * b) == determinant(a) * determinant(b));
        if (sgn(determinant(a)) != 0) {
            auto ai = inverse(a);
            REQUIRE(ai.has_value());
            CHECK(a * *ai == RatMatrix::identity(3));
            CHECK(*ai * a == RatMatrix::identity(3));
        }
    }
}

TEST_CASE("restrict_to_kernel agrees with intersect(kernel)") {
    std::mt19937 gen(5150);
    for (int trial = 0; trial < 20; ++trial) {
        RatMatrix span = random_matrix(gen, 3, 5);
        RatMatrix op = random_matrix(gen, 2, 5);
        Subspace v = Subspace::span_of(span);
        Subspace got = restrict_to_kernel(v, [&](const std::vector<Rational>& x) {
            return mat_vec(op, x);
        });
        Subspace want = intersect(v, kernel(op));
        CHECK(got == want);
    }
}
