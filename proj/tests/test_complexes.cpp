#include <random>

#include "doctest.h"
#include "logwt/complexes.hpp"
#include "logwt/random.hpp"

using namespace logwt;

namespace {

Field Q = Field::rationals();

// k -> k in degrees 0, 1 with the given scalar.
Complex two_term(const Field& f, int s) { return Complex(f, 0, {1, 1}, {Mat::from_ints(f, {{s}})}); }

// Sum of H-pieces and contractible pairs, conjugated by random invertibles.
Complex random_complex(const Field& f, std::mt19937_64& rng, int lo, int hi) {
    std::vector<std::size_t> h(hi - lo + 1), pairs(hi - lo + 1);
    for (auto& x : h) x = rng() % 2;
    for (std::size_t i = 0; i + 1 < pairs.size(); ++i) pairs[i] = rng() % 2;
    std::vector<std::size_t> dims(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) dims[i] = h[i] + pairs[i] + (i > 0 ? pairs[i - 1] : 0);
    std::vector<Mat> ds;
    std::vector<Mat> g;
    std::uniform_int_distribution<int> dist(-2, 2);
    for (std::size_t i = 0; i < dims.size(); ++i) {
        Mat m(f, dims[i], dims[i]);
        do {
            for (std::size_t a = 0; a < dims[i]; ++a)
                for (std::size_t b = 0; b < dims[i]; ++b) m.set(a, b, f.from_int(dist(rng)));
        } while (rank(m) != dims[i]);
        g.push_back(m);
    }
    for (std::size_t i = 0; i + 1 < dims.size(); ++i) {
        // Layout of degree i: [H | incoming pair | outgoing pair].
        Mat d(f, dims[i + 1], dims[i]);
        std::size_t in_next = h[i + 1];
        std::size_t out_here = h[i] + (i > 0 ? pairs[i - 1] : 0);
        for (std::size_t t = 0; t < pairs[i]; ++t) d.set(in_next + t, out_here + t, 1);
        // Conjugate: g_{i+1} d g_i^{-1}; any invertible works, use solve per column.
        Mat gi_inv(f, dims[i], dims[i]);
        for (std::size_t c = 0; c < dims[i]; ++c) {
            Vec e(dims[i]);
            e[c] = 1;
            auto x = solve(g[i], e);
            for (std::size_t r = 0; r < dims[i]; ++r) gi_inv.set(r, c, (*x)[r]);
        }
        ds.push_back(g[i + 1] * d * gi_inv);
    }
    return Complex(f, lo, dims, ds);
}

}  // namespace

TEST_CASE("construction rejects d o d != 0") {
    CHECK_THROWS(Complex(Q, 0, {1, 1, 1}, {Mat::from_ints(Q, {{1}}), Mat::from_ints(Q, {{1}})}));
    CHECK_THROWS_AS(Complex(Q, 0, {1, 2}, {Mat::from_ints(Q, {{1}})}), DimensionError);
}

TEST_CASE("cohomology examples") {
    CHECK(cohomology_dims(Complex(Q)).empty());
    CHECK(is_acyclic(two_term(Q, 1)));
    auto h = cohomology_dims(two_term(Q, 0));
    CHECK(h == std::map<int, std::size_t>{{0, 1}, {1, 1}});
    auto c = cohomology(two_term(Q, 0), 1);
    CHECK(c.dim == 1);
    CHECK(c.representatives.size() == 1);
}

TEST_CASE("cone examples") {
    Complex c(Q, -1, {2, 1}, {Mat::from_ints(Q, {{1, 0}})});
    CHECK(is_acyclic(cone(ChainMap::identity(c))));
    CHECK(cone(ChainMap::zero(c, Complex(Q))) == shift(c, 1));

    for (auto [f, qi] : {std::pair{Field::rationals(), true}, std::pair{Field::prime(2), false}}) {
        Complex k = Complex::concentrated(f, 0, 1);
        ChainMap two(k, k, {{0, Mat::from_ints(f, {{2}})}});
        CHECK(is_quasi_iso(two) == qi);
    }
}

TEST_CASE("shift, dual and tensor") {
    std::mt19937_64 rng(5);
    for (auto f : {Field::rationals(), Field::prime(3)}) {
        for (int t = 0; t < 30; ++t) {
            int lo = static_cast<int>(rng() % 5) - 2;
            Complex c = random_complex(f, rng, lo, lo + static_cast<int>(rng() % 4));
            CHECK(shift(c, 3) == shift(shift(c, 1), 2));
            // The double dual has differential -d; (-1)^n is the canonical iso.
            std::map<int, Mat> eps;
            for (int n = c.lo(); n <= c.hi(); ++n)
                eps.emplace(n, Mat::identity(f, c.dim(n)).scaled(n % 2 == 0 ? 1 : -1));
            CHECK(is_quasi_iso(ChainMap(c, dual(dual(c)), eps)));
            auto h = cohomology_dims(c);
            auto hd = cohomology_dims(dual(c));
            std::map<int, std::size_t> mirrored;
            for (auto [n, d] : h) mirrored[-n] = d;
            CHECK(hd == mirrored);
            std::map<int, std::size_t> shifted;
            for (auto [n, d] : h) shifted[n - 2] = d;
            CHECK(cohomology_dims(shift(c, 2)) == shifted);

            long chi = 0;
            for (auto [n, d] : h) chi += (n % 2 == 0 ? 1 : -1) * static_cast<long>(d);
            CHECK(chi == c.euler_characteristic());
        }
    }
    // (k in 0 + k in 1) tensor itself: H-dims (1, 2, 1).
    Complex a(Q, 0, {1, 1}, {Mat::zero(Q, 1, 1)});
    CHECK(cohomology_dims(tensor(a, a)) == std::map<int, std::size_t>{{0, 1}, {1, 2}, {2, 1}});
}

TEST_CASE("Kunneth on random complexes") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 20; ++t) {
        Complex a = random_complex(Q, rng, -1, 1);
        Complex b = random_complex(Q, rng, 0, 2);
        std::map<int, std::size_t> expect;
        for (auto [i, x] : cohomology_dims(a))
            for (auto [j, y] : cohomology_dims(b)) expect[i + j] += x * y;
        CHECK(cohomology_dims(tensor(a, b)) == expect);
    }
}

TEST_CASE("smart truncation") {
    Complex c = two_term(Q, 0);
    CHECK(smart_truncate(c, 5) == Subcomplex::whole(c));
    CHECK(smart_truncate(c, -3) == Subcomplex::zero());
    Subcomplex t0 = smart_truncate(c, 0);
    CHECK(t0.at(c, 0).dim() == 1);
    CHECK(t0.at(c, 1).dim() == 0);

    std::mt19937_64 rng(2);
    for (int t = 0; t < 30; ++t) {
        Complex x = random_complex(Q, rng, -1, 2);
        for (int n = -2; n <= 3; ++n) {
            Subcomplex s = smart_truncate(x, n);
            CHECK(s.is_closed_in(x));
            auto h = cohomology_dims(realize(x, s));
            std::map<int, std::size_t> expect;
            for (auto [k, d] : cohomology_dims(x))
                if (k <= n) expect[k] = d;
            CHECK(h == expect);
        }
    }
}

TEST_CASE("hom complex") {
    Complex k = Complex::concentrated(Q, 0, 1);
    CHECK(cohomology_dims(hom_complex(k, k).complex) == std::map<int, std::size_t>{{0, 1}});
    CHECK(hom_complex(k, Complex(Q)).complex.total_dim() == 0);
    CHECK(cohomology_dims(hom_complex(two_term(Q, 1), k).complex).empty());

    // Brute force: H^0 of Hom counts chain maps modulo null-homotopic ones.
    std::mt19937_64 rng(9);
    for (int t = 0; t < 20; ++t) {
        Complex a = random_complex(Q, rng, 0, 2);
        Complex b = random_complex(Q, rng, 0, 2);
        std::size_t expect = 0;
        for (auto [i, x] : cohomology_dims(a)) {
            auto hb = cohomology_dims(b);
            if (hb.count(i)) expect += x * hb[i];
        }
        auto h = cohomology_dims(hom_complex(a, b).complex);
        CHECK((h.count(0) ? h[0] : 0) == expect);
    }
}

TEST_CASE("quasi-iso test agrees with degreewise cohomology") {
    Rng rng(23);
    int agree = 0, positives = 0;
    for (int t = 0; t < 100; ++t) {
        Field f = t % 2 ? Field::rationals() : Field::prime(2);
        RandomMapCase c = random_chain_map(f, rng, -1, 1, 4);
        const ChainMap& m = c.map;
        // Induced map on H^n: images of representatives, modulo boundaries.
        bool degreewise = true;
        for (int n = -1; n <= 1; ++n) {
            Cohomology hx = cohomology(m.source(), n);
            Subspace zy = kernel_basis(m.target().d(n));
            Subspace by = image(m.target().d(n - 1));
            std::vector<Vec> imgs;
            for (const auto& v : hx.representatives) imgs.push_back(m.at(n).apply(v));
            Subspace span = sum(Subspace::span(f, m.target().dim(n), imgs), by);
            if (span.dim() - by.dim() != hx.dim || span != zy) degreewise = false;
        }
        CHECK(degreewise == c.quasi_iso);
        if (is_quasi_iso(m) == degreewise) ++agree;
        if (degreewise) ++positives;
    }
    CHECK(agree == 100);
    CHECK(positives > 5);
    CHECK(positives < 95);
}

TEST_CASE("subcomplex quotient") {
    Complex c = two_term(Q, 1);
    Subcomplex top;
    top.spaces.emplace(1, Subspace::full(Q, 1));
    CHECK(top.is_closed_in(c));
    Complex q = quotient(c, Subcomplex::whole(c), top);
    CHECK(cohomology_dims(q) == std::map<int, std::size_t>{{0, 1}});
    CHECK(cohomology_dims(realize(c, top)) == std::map<int, std::size_t>{{1, 1}});
}
