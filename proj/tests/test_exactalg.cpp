#include <random>

#include "doctest.h"
#include "logwt/exactalg.hpp"

using namespace logwt;

namespace {

Mat random_mat(const Field& f, std::mt19937_64& rng, std::size_t r, std::size_t c, int spread = 3) {
    std::uniform_int_distribution<int> dist(-spread, spread);
    Mat m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, f.from_int(dist(rng)));
    return m;
}

}  // namespace

TEST_CASE("rref examples") {
    Field Q = Field::rationals();
    auto r = rref(Mat::from_ints(Q, {{1, 2}, {2, 4}}));
    CHECK(r.pivots == std::vector<std::size_t>{0});
    CHECK(rank(Mat::from_ints(Q, {{1, 2}, {2, 4}})) == 1);

    auto id = Mat::identity(Q, 3);
    auto ri = rref(id);
    CHECK(ri.reduced == id);
    CHECK(ri.pivots == std::vector<std::size_t>{0, 1, 2});

    Field F5 = Field::prime(5);
    auto r5 = rref(Mat::from_ints(F5, {{1, 1}, {1, 2}}));
    CHECK(r5.reduced == Mat::identity(F5, 2));
    CHECK(r5.pivots == std::vector<std::size_t>{0, 1});
}

TEST_CASE("rref is idempotent and canonical") {
    std::mt19937_64 rng(7);
    for (auto f : {Field::rationals(), Field::prime(3)}) {
        for (int t = 0; t < 40; ++t) {
            Mat m = random_mat(f, rng, 1 + rng() % 6, 1 + rng() % 6);
            auto a = rref(m);
            CHECK(rref(a.reduced).reduced == a.reduced);
            // Left-multiplying by an invertible matrix keeps the row space.
            Mat g = random_mat(f, rng, m.rows(), m.rows());
            if (rank(g) == m.rows()) CHECK(rref(g * m).reduced == a.reduced);
        }
    }
}

TEST_CASE("kernel examples") {
    Field Q = Field::rationals();
    CHECK(kernel_basis(Mat::zero(Q, 2, 2)).is_full());
    CHECK(kernel_basis(Mat::identity(Q, 3)).is_zero());
    Subspace k = kernel_basis(Mat::from_ints(Q, {{1, 2}, {2, 4}}));
    CHECK(k.dim() == 1);
    CHECK(k.contains(Vec{-2, 1}));
}

TEST_CASE("rank-nullity and Grassmann identity") {
    std::mt19937_64 rng(11);
    for (auto f : {Field::rationals(), Field::prime(2), Field::prime(5)}) {
        for (int t = 0; t < 60; ++t) {
            std::size_t n = 1 + rng() % 8;
            Mat m = random_mat(f, rng, 1 + rng() % 8, n);
            CHECK(kernel_basis(m).dim() + rank(m) == n);

            Subspace u = Subspace::span(random_mat(f, rng, rng() % (n + 1), n));
            Subspace v = Subspace::span(random_mat(f, rng, rng() % (n + 1), n));
            CHECK(sum(u, v).dim() + intersection(u, v).dim() == u.dim() + v.dim());
            CHECK(u.contains(intersection(u, v)));
            CHECK(sum(u, v).contains(v));

            Mat a = random_mat(f, rng, n, 1 + rng() % 6);
            Subspace pre = preimage(a, u);
            CHECK(u.contains(image(a, pre)));
            CHECK(preimage(a, Subspace::zero(f, n)) == kernel_basis(a));
        }
    }
}

TEST_CASE("subspace operations, trivial cases") {
    Field Q = Field::rationals();
    Subspace u = Subspace::span(Q, 3, {Vec{1, 2, 3}, Vec{0, 1, 1}});
    CHECK(intersection(u, u) == u);
    CHECK(quotient_basis(u, u).empty());
    Subspace l1 = Subspace::span(Q, 2, {Vec{1, 1}});
    Subspace l2 = Subspace::span(Q, 2, {Vec{1, -1}});
    CHECK(sum(l1, l2).is_full());
    CHECK(intersection(l1, l2).is_zero());
    CHECK_THROWS_AS(sum(l1, u), DimensionError);
    CHECK_THROWS(quotient_basis(l1, l2));
}

TEST_CASE("quotient coordinates") {
    std::mt19937_64 rng(3);
    for (auto f : {Field::rationals(), Field::prime(3)}) {
        for (int t = 0; t < 30; ++t) {
            std::size_t n = 1 + rng() % 6;
            Subspace v = Subspace::span(random_mat(f, rng, rng() % (n + 1), n));
            Subspace u = intersection(v, Subspace::span(random_mat(f, rng, rng() % (n + 1), n)));
            QuotientCoords q(v, u);
            CHECK(q.dim() == v.dim() - u.dim());
            for (std::size_t i = 0; i < u.dim(); ++i) CHECK(is_zero(q.project(u.vector(i))));
            for (std::size_t i = 0; i < q.dim(); ++i) {
                Vec e = q.project(q.complement()[i]);
                for (std::size_t j = 0; j < e.size(); ++j) CHECK(e[j] == (i == j ? 1 : 0));
            }
        }
    }
}

TEST_CASE("solve examples") {
    Field Q = Field::rationals();
    Vec b{3, -1, 2};
    CHECK(*solve(Mat::identity(Q, 3), b) == b);
    CHECK(!solve(Mat::zero(Q, 2, 2), Vec{1, 0}).has_value());
    auto x = solve(Mat::from_ints(Q, {{1, 2}, {2, 4}}), Vec{1, 2});
    REQUIRE(x.has_value());
    CHECK(*x == Vec{1, 0});
    CHECK_THROWS_AS(solve(Mat::identity(Q, 2), Vec{1}), DimensionError);
}

TEST_CASE("field parsing and formatting") {
    CHECK(Field::parse("Q") == Field::rationals());
    CHECK(Field::parse("F5") == Field::prime(5));
    CHECK_THROWS(Field::parse("F4"));
    CHECK_THROWS(Field::parse("R"));
    Field Q = Field::rationals();
    CHECK(Q.format(Q.parse_scalar("-6/4")) == "-3/2");
    Field F5 = Field::prime(5);
    CHECK(F5.format(F5.from_int(-1)) == "4");
    CHECK(F5.mul(F5.inv(F5.from_int(2)), F5.from_int(2)) == 1);
    CHECK_THROWS(F5.parse_scalar("7"));
}
