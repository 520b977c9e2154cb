#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pg3/quadric.hpp"

using pg3::Field;
using pg3::Geometry;
using pg3::LineClass;
using pg3::Mat4;
using pg3::Quadric;

TEST_CASE("standard quadric sizes") {
    struct Row {
        int q, points, generators, secants;
    };
    for (const Row r : {Row{3, 16, 8, 72}, Row{5, 36, 12, 450}, Row{7, 64, 16, 1568}}) {
        const Field f(r.q, 1);
        const Geometry g(f);
        const Quadric quad = Quadric::standard(g);
        CAPTURE(r.q);
        CHECK(quad.point_set().count() == static_cast<std::size_t>(r.points));
        CHECK(quad.generator_ids().size() == static_cast<std::size_t>(r.generators));
        const auto census = quad.census();
        CHECK(census.secant == r.secants);
        CHECK(census.generator == r.generators);
        // all four classes partition the line set
        CHECK(census.external + census.tangent + census.secant + census.generator ==
              g.num_lines());
        // external = q^2(q-1)^2/2, tangent = the rest
        CHECK(census.external == static_cast<long long>(r.q) * r.q * (r.q - 1) * (r.q - 1) / 2);
    }
}

TEST_CASE("point membership of the standard quadric") {
    const Field f(3, 1);
    const Geometry g(f);
    const Quadric quad = Quadric::standard(g);
    CHECK(quad.contains(g.point_id({1, 0, 0, 0})));
    CHECK(!quad.contains(g.point_id({1, 0, 0, 1}))); // x0*x3 - x1*x2 = 1
}

TEST_CASE("identity gram at q=3 is hyperbolic, by brute-force point count") {
    const Field f(3, 1);
    const Geometry g(f);
    // independent count of projective zeros of x0^2+x1^2+x2^2+x3^2
    int zeros = 0;
    for (int p = 0; p < g.num_points(); ++p) {
        const auto& x = g.point(p);
        int s = 0;
        for (int i = 0; i < 4; ++i) s = f.add(s, f.mul(x[i], x[i]));
        zeros += s == 0;
    }
    CHECK(zeros == 16); // (q+1)^2: the identity form has square discriminant here
    const Quadric quad(g, pg3::mat4_identity());
    CHECK(quad.point_set().count() == 16);
}

TEST_CASE("degenerate and elliptic grams are rejected") {
    const Field f(3, 1);
    const Geometry g(f);

    Mat4 singular{}; // rank 1
    singular[0] = 1;
    CHECK_THROWS_AS(Quadric(g, singular), pg3::DegenerateForm);

    // x0*x1 + x2^2 + x3^2 has q^2+1 = 10 points over GF(3): elliptic
    Mat4 elliptic{};
    elliptic[0 * 4 + 1] = 2; // 2*2 = 4 = 1: cross term x0*x1
    elliptic[1 * 4 + 0] = 2;
    elliptic[2 * 4 + 2] = 1;
    elliptic[3 * 4 + 3] = 1;
    CHECK_THROWS_AS(Quadric(g, elliptic), pg3::NotHyperbolic);

    Mat4 asym{};
    asym[1] = 1; // not symmetric
    asym[15] = 1;
    asym[0] = 1;
    asym[5] = 1;
    asym[10] = 1;
    CHECK_THROWS_AS(Quadric(g, asym), pg3::Error);
}

TEST_CASE("projective invariance of the census") {
    const Field f(3, 1);
    const Geometry g(f);
    const Quadric quad = Quadric::standard(g);
    const auto base = quad.census();
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Mat4 m = pg3::random_invertible_matrix(f, seed);
        const Quadric moved(g, pg3::conjugate_gram(f, quad.gram(), m));
        const auto census = moved.census();
        CHECK(census.external == base.external);
        CHECK(census.tangent == base.tangent);
        CHECK(census.secant == base.secant);
        CHECK(census.generator == base.generator);
    }
}

TEST_CASE("generators classify as Generator") {
    const Field f(5, 1);
    const Geometry g(f);
    const Quadric quad = Quadric::standard(g);
    for (const int l : quad.generator_ids()) CHECK(quad.classify_line(l) == LineClass::Generator);
}

TEST_CASE("secant family distributions") {
    const Field f(3, 1);
    const Geometry g(f);
    const Quadric quad = Quadric::standard(g);
    const auto table = quad.distribution_table();

    const int q = g.q();
    for (int p = 0; p < g.num_points(); ++p)
        CHECK(table.point_secants[p] == (quad.contains(p) ? q * q : q * (q + 1) / 2));

    int planes9 = 0, planes6 = 0;
    for (int pl = 0; pl < g.num_planes(); ++pl) {
        if (table.plane_secants[pl] == 9) {
            ++planes9;
            for (const int c : table.pencil_secants[pl]) CHECK((c == 0 || c == 3));
        } else {
            REQUIRE(table.plane_secants[pl] == 6);
            ++planes6;
            for (const int c : table.pencil_secants[pl]) CHECK((c == 1 || c == 2 || c == 3));
        }
    }
    CHECK(planes9 == 16); // one tangent plane per quadric point
    CHECK(planes6 == 24);
}

TEST_CASE("pairs of generators through a quadric point span a tangent plane") {
    const Field f(3, 1);
    const Geometry g(f);
    const Quadric quad = Quadric::standard(g);
    const std::size_t first = quad.point_set().find_first();
    REQUIRE(first < quad.point_set().size());
    std::vector<int> through;
    for (const int l : quad.generator_ids()) {
        const auto pts = g.points_of_line(l);
        if (std::binary_search(pts.begin(), pts.end(), static_cast<std::int32_t>(first)))
            through.push_back(l);
    }
    REQUIRE(through.size() == 2);
    // the plane containing both generators meets the quadric exactly in them
    int common_plane = -1;
    for (const int pl : g.planes_of_line(through[0]))
        if (g.line_bitset_of_plane(pl).test(through[1])) common_plane = pl;
    REQUIRE(common_plane >= 0);
    std::size_t on_quadric = pg3::Bitset::and_count(quad.point_set(),
                                                    g.point_bitset_of_plane(common_plane));
    CHECK(on_quadric == 2 * g.q() + 1); // two generators sharing one point
}
