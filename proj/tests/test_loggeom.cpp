#include "doctest.h"
#include "logwt/loggeom.hpp"

using namespace logwt;

namespace {

Field Q = Field::rationals();

// h^0 and h^1 of O(m) on the projective line.
std::size_t h0(int m) { return m >= 0 ? static_cast<std::size_t>(m + 1) : 0; }
std::size_t h1(int m) { return m <= -2 ? static_cast<std::size_t>(-m - 1) : 0; }

// Hypercohomology of A -> B with A = O(a), B = O(b), assuming the Hodge to
// de Rham sequence degenerates (it does for these two-term complexes on the line).
std::map<int, std::size_t> two_term_oracle(int a, int b) {
    std::map<int, std::size_t> out;
    std::size_t d0 = h0(a), d1 = h1(a) + h0(b), d2 = h1(b);
    if (d0) out[0] = d0;
    if (d1) out[1] = d1;
    if (d2) out[2] = d2;
    return out;
}

P1Arrangement line(const Field& f, const std::vector<std::string>& pts) {
    std::vector<LinePoint> v;
    for (const auto& s : pts) v.push_back(parse_line_point(f, s));
    return P1Arrangement(f, v);
}

std::vector<std::string> first_points(std::size_t k) {
    std::vector<std::string> all{"0", "1", "inf", "2", "4", "3"};
    return {all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k)};
}

}  // namespace

TEST_CASE("repeated points are rejected") {
    CHECK_THROWS(line(Q, {"1", "1"}));
    CHECK_THROWS(line(Field::prime(3), {"1", "4"}));
    CHECK_NOTHROW(line(Q, {"inf", "0"}));
}

TEST_CASE("log de Rham cohomology of the line with points") {
    for (const Field& f : {Q, Field::prime(5)}) {
        for (std::size_t k = 0; k <= 5; ++k) {
            auto lh = p1_log_hodge_complexes(line(f, first_points(k)));
            int kk = static_cast<int>(k);
            CHECK(cohomology_dims(lh.de_rham.ambient()) == two_term_oracle(0, kk - 2));
            auto gr = graded_pieces(lh.de_rham);
            CHECK(cohomology_dims(gr.at(0)) == two_term_oracle(0, -2));
            std::map<int, std::size_t> res;
            if (k) res[1] = k;
            CHECK(cohomology_dims(gr.at(1)) == res);
        }
    }
    CHECK(cohomology_dims(p1_log_hodge_complexes(line(Q, {"1", "2", "3"})).de_rham.ambient()) ==
          std::map<int, std::size_t>{{0, 1}, {1, 2}});
}

TEST_CASE("compactly supported complex") {
    for (std::size_t k = 0; k <= 4; ++k) {
        int kk = static_cast<int>(k);
        CompactSide c = p1_compactly_supported(line(Q, first_points(k)));
        CHECK(cohomology_dims(c.complex) == two_term_oracle(-kk, -2));
        CHECK(c.localization.size() == k);
    }
    CHECK(cohomology_dims(p1_compactly_supported(line(Q, {"5"})).complex) == std::map<int, std::size_t>{{2, 1}});
}

TEST_CASE("residue and localization sequences") {
    for (const Field& f : {Q, Field::prime(2), Field::prime(3), Field::prime(5)}) {
        std::size_t kmax = f.is_prime() ? std::min<std::size_t>(5, static_cast<std::size_t>(f.characteristic()) + 1) : 5;
        for (std::size_t k = 1; k <= kmax; ++k) {
            std::vector<std::string> pts;
            if (f.is_prime()) {
                pts.push_back("inf");
                for (std::size_t t = 0; pts.size() < k; ++t) pts.push_back(std::to_string(t));
            } else {
                pts = first_points(k);
            }
            P1Arrangement arr = line(f, pts);
            for (std::size_t i = 0; i < k; ++i) {
                SequenceVerdict v = residue_sequence(arr, i);
                CHECK(v.exact);
                CHECK(v.gr_split);
                CHECK(localization_sequence(arr, i));
            }
        }
    }
}

TEST_CASE("chain sections") {
    Complex k = Complex::concentrated(Q, 0, 1);
    Complex pair(Q, 0, {1, 1}, {Mat::from_ints(Q, {{1}})});
    // The projection of k -> k onto its degree-0 copy has no chain section.
    CHECK_FALSE(chain_section(ChainMap(pair, k, {{0, Mat::from_ints(Q, {{1}})}})).has_value());
    auto s = chain_section(ChainMap(direct_sum(k, k), k, {{0, Mat::from_ints(Q, {{1, 2}})}}));
    REQUIRE(s.has_value());
    CHECK(s->at(0)(0, 0) + 2 * s->at(0)(1, 0) == 1);
}

TEST_CASE("wedge and trace pairing") {
    for (std::size_t k = 0; k <= 3; ++k) {
        PairingVerdict v = poincare_pairing_check(line(Q, first_points(k)));
        CHECK(v.chain);
        CHECK(v.natural);
        CHECK(v.perfect);
        CHECK(v.poset_size == (std::size_t{1} << k));
    }
    // Full rank 2 between the two H^1 for three points.
    PosetPairing q = p1_pairing(line(Q, {"0", "1", "inf"}));
    std::size_t all = q.size - 1;
    auto phi = pairing_to_dual_transformation(q);
    Cohomology a = cohomology(q.f[all], 1);
    CHECK(a.dim == 2);
    Mat b = q.forms.at({all, all}).at(1);
    Cohomology c = cohomology(q.g[all], 1);
    CHECK(c.dim == 2);
    Mat m(Q, 2, 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            Vec bj = b.apply(c.representatives[j]);
            Scalar s = 0;
            for (std::size_t t = 0; t < bj.size(); ++t) s += a.representatives[i][t] * bj[t];
            m.set(i, j, s);
        }
    CHECK(rank(m) == 2);
}

namespace {

// X = plane, D1 = smooth conic, D2 = line, meeting in one point whose
// residue field has degree 2 over F5.
SncdScenario f5_conic_line() {
    Field f = Field::prime(5);
    SncdScenario s;
    s.field = f;
    s.n = 2;
    s.r = 2;
    s.strata[0].components = {projective_space_table(2)};
    s.strata[1].components = {projective_space_table(1)};
    s.strata[2].components = {projective_space_table(1)};
    s.strata[3].components = {HodgeTable{{{0, 0}, 2}}};
    s.pullbacks.emplace(std::make_tuple(0u, 1u, 0, 0), Mat::from_ints(f, {{1}}));
    s.pullbacks.emplace(std::make_tuple(0u, 2u, 0, 0), Mat::from_ints(f, {{1}}));
    s.pullbacks.emplace(std::make_tuple(0u, 1u, 1, 1), Mat::from_ints(f, {{2}}));
    s.pullbacks.emplace(std::make_tuple(0u, 2u, 1, 1), Mat::from_ints(f, {{1}}));
    s.pullbacks.emplace(std::make_tuple(1u, 3u, 0, 0), Mat::from_ints(f, {{1}, {0}}));
    s.pullbacks.emplace(std::make_tuple(2u, 3u, 0, 0), Mat::from_ints(f, {{1}, {0}}));
    return s;
}

SncdScenario triangle() {
    SncdScenario s;
    s.field = Q;
    s.n = 2;
    s.r = 3;
    s.strata[0].components = {projective_space_table(2)};
    for (Mask i : {1u, 2u, 4u}) {
        s.strata[i].components = {projective_space_table(1)};
        s.pullbacks.emplace(std::make_tuple(0u, i, 0, 0), Mat::from_ints(Q, {{1}}));
        s.pullbacks.emplace(std::make_tuple(0u, i, 1, 1), Mat::from_ints(Q, {{1}}));
    }
    for (Mask i : {3u, 5u, 6u}) {
        s.strata[i].components = {HodgeTable{{{0, 0}, 1}}};
        for (Mask j : {1u, 2u, 4u})
            if ((i & j) == j) s.pullbacks.emplace(std::make_tuple(j, i, 0, 0), Mat::from_ints(Q, {{1}}));
    }
    return s;
}

std::vector<Track> tracks() { return {Track::DeRham, Track::HodgeGraded, Track::HodgeFiltered}; }

}  // namespace

TEST_CASE("weight side on pure X is the Whitehead tower") {
    SncdScenario s;
    s.field = Q;
    s.n = 1;
    s.strata[0].components = {projective_space_table(1)};
    CHECK(weight_side(s, Track::DeRham).pieces.at(0).graded == Table{{{0, 0}, 1}, {{2, 2}, 1}});
    auto h = weight_side(s, Track::HodgeGraded);
    CHECK(h.pieces.at(0).graded == Table{{{0, 0}, 1}});
    CHECK(h.pieces.at(1).graded == Table{{{2, 2}, 1}});
}

TEST_CASE("the line minus three points") {
    P1Arrangement arr = line(Q, {"0", "1", "inf"});
    Table expect{{{0, 0}, 1}, {{2, 1}, 2}};
    CHECK(weight_side(scenario_from_line(arr), Track::DeRham).pieces.at(0).graded == expect);
    CHECK(pole_order_side(arr, Track::DeRham).pieces.at(0).graded == expect);
    CHECK(pole_order_side(line(Q, {}), Track::DeRham).pieces.at(0).graded == Table{{{0, 0}, 1}, {{2, 2}, 1}});
    CHECK(pole_order_side(line(Q, {"inf"}), Track::DeRham).pieces.at(0).graded == Table{{{0, 0}, 1}});
}

TEST_CASE("pole-order and weight sides agree on the line") {
    for (const Field& f : {Q, Field::prime(2), Field::prime(3), Field::prime(5)}) {
        std::size_t kmax = f.is_prime() ? std::min<std::size_t>(5, static_cast<std::size_t>(f.characteristic()) + 1) : 5;
        for (std::size_t k = 0; k <= kmax; ++k) {
            std::vector<std::string> pts;
            for (std::size_t t = 0; pts.size() < k; ++t) pts.push_back(t == 0 ? "inf" : std::to_string(t - 1));
            P1Arrangement arr = line(f, pts);
            SncdScenario s = scenario_from_line(arr);
            for (Track t : tracks()) {
                TrackResult a = pole_order_side(arr, t), b = weight_side(s, t);
                REQUIRE(a.pieces.size() == b.pieces.size());
                for (std::size_t i = 0; i < a.pieces.size(); ++i) {
                    CHECK(a.pieces[i].graded == b.pieces[i].graded);
                    CHECK(a.pieces[i].e1 == b.pieces[i].e1);
                }
            }
        }
    }
}

TEST_CASE("weight zero and the dual complex") {
    SncdScenario f5 = f5_conic_line();
    CHECK_NOTHROW(validate(f5));
    CHECK(cohomology_dims(grw0_compactly_supported(f5)) == std::map<int, std::size_t>{{2, 1}});
    CHECK(reduced_cohomology(dual_complex(f5), f5.field).empty());

    SncdScenario tri = triangle();
    CHECK(cohomology_dims(grw0_compactly_supported(tri)) == std::map<int, std::size_t>{{2, 1}});
    auto red = reduced_cohomology(dual_complex(tri), Q);
    CHECK(red == std::map<int, std::size_t>{{1, 1}});
    for (const auto& [s, d] : red) CHECK(cohomology_dims(grw0_compactly_supported(tri)).at(s + kDualComplexOffset) == d);

    SncdScenario one;
    one.field = Q;
    one.n = 1;
    one.r = 1;
    one.strata[0].components = {projective_space_table(1)};
    one.strata[1].components = {HodgeTable{{{0, 0}, 1}}};
    one.pullbacks.emplace(std::make_tuple(0u, 1u, 0, 0), Mat::from_ints(Q, {{1}}));
    CHECK(reduced_cohomology(dual_complex(one), Q).empty());
    SncdScenario empty;
    empty.field = Q;
    empty.strata[0].components = {HodgeTable{{{0, 0}, 1}}};
    CHECK(cohomology_dims(grw0_compactly_supported(empty)) == std::map<int, std::size_t>{{0, 1}});
}

TEST_CASE("non-functorial pullbacks are rejected with a field path") {
    SncdScenario s = triangle();
    s.pullbacks[std::make_tuple(1u, 3u, 0, 0)] = Mat::from_ints(Q, {{2}});
    s.pullback_index[std::make_tuple(1u, 3u, 0, 0)] = 7;
    try {
        validate(s);
        FAIL("accepted");
    } catch (const ScenarioError& e) {
        CHECK(e.path.find("pullbacks") == 0);
    }
    SncdScenario t = triangle();
    t.pullbacks[std::make_tuple(0u, 1u, 0, 0)] = Mat::from_ints(Q, {{1, 0}});
    CHECK_THROWS_AS(validate(t), ScenarioError);
}

TEST_CASE("projective cones") {
    CHECK(cone_weights(projective_space_table(1), Q) == Table{{{0, 0}, 1}, {{1, 1}, 1}, {{2, 2}, 1}});
    CHECK(cone_weights(projective_space_table(2), Q) == Table{{{0, 0}, 1}, {{1, 1}, 1}, {{2, 2}, 1}, {{3, 3}, 1}});
    for (int n = 1; n <= 3; ++n) CHECK(cone_weights(projective_space_table(n), Q) == cone_closed_form(projective_space_table(n)));
    HodgeTable curve{{{0, 0}, 1}, {{1, 0}, 2}, {{0, 1}, 2}, {{1, 1}, 1}};
    CHECK(cone_weights(curve, Field::prime(3)) == cone_closed_form(curve));
    CHECK_THROWS(cone_weights(projective_space_table(0), Q));
    CHECK_THROWS(cone_weights(HodgeTable{{{0, 0}, 2}, {{1, 1}, 2}}, Q));
}
