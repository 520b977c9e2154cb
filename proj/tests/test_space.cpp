#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "pg3/space.hpp"

using pg3::Coords4;
using pg3::Field;
using pg3::Geometry;

TEST_CASE("counts match the closed forms") {
    struct Row {
        int p, e, points, lines;
    };
    for (const Row r : {Row{3, 1, 40, 130}, Row{5, 1, 156, 806}, Row{3, 2, 820, 7462}}) {
        const Field f(r.p, r.e);
        const Geometry g(f);
        CAPTURE(g.q());
        CHECK(g.num_points() == r.points);
        CHECK(g.num_planes() == r.points);
        CHECK(g.num_lines() == r.lines);
    }
}

TEST_CASE("build rejects bad fields") {
    // even q never reaches geometry (Field already rejects it); the cap does
    CHECK_THROWS_AS(Geometry(Field(17, 1)), pg3::FieldTooLarge);
}

TEST_CASE("line through two basis points at q=3") {
    const Field f(3, 1);
    const Geometry g(f);
    const int a = g.point_id({1, 0, 0, 0});
    const int b = g.point_id({0, 1, 0, 0});
    const int l = g.line_through(a, b);
    CHECK(g.line_through(b, a) == l);

    std::set<int> expect;
    for (const Coords4 c : {Coords4{1, 0, 0, 0}, {0, 1, 0, 0}, {1, 1, 0, 0}, {1, 2, 0, 0}})
        expect.insert(g.point_id(c));
    const auto pts = g.points_of_line(l);
    CHECK(std::set<int>(pts.begin(), pts.end()) == expect);

    CHECK_THROWS_AS(g.line_through(a, a), pg3::IdenticalPoints);
}

TEST_CASE("pluecker relation holds for every line at q=3") {
    const Field f(3, 1);
    const Geometry g(f);
    for (int l = 0; l < g.num_lines(); ++l) {
        const auto p = g.pluecker(l);
        // p01*p23 - p02*p13 + p03*p12 = 0
        const int t = f.add(f.sub(f.mul(p[0], p[5]), f.mul(p[1], p[4])), f.mul(p[2], p[3]));
        CAPTURE(l);
        CHECK(t == 0);
    }
}

TEST_CASE("incidence degrees and the double count, per q") {
    for (const int qv : {3, 5}) {
        const Field f(qv, 1);
        const Geometry g(f);
        const int q = g.q();
        CAPTURE(q);
        for (int p = 0; p < g.num_points(); ++p) {
            CHECK(g.lines_of_point(p).size() == static_cast<std::size_t>(q * q + q + 1));
            CHECK(g.planes_of_point(p).size() == static_cast<std::size_t>(q * q + q + 1));
        }
        long long by_points = 0;
        for (int p = 0; p < g.num_points(); ++p) by_points += g.lines_of_point(p).size();
        CHECK(by_points == static_cast<long long>(g.num_lines()) * (q + 1));
        for (int l = 0; l < g.num_lines(); ++l) {
            CHECK(g.points_of_line(l).size() == static_cast<std::size_t>(q + 1));
            CHECK(g.planes_of_line(l).size() == static_cast<std::size_t>(q + 1));
        }
        // containment spot-checked line by line at q=3, strided above it
        for (int l = 0; l < g.num_lines(); l += (q == 3 ? 1 : 17))
            for (const int pl : g.planes_of_line(l))
                for (const int pt : g.points_of_line(l)) CHECK(g.point_on_plane(pt, pl));
    }
}

TEST_CASE("pencils") {
    const Field f(3, 1);
    const Geometry g(f);
    const int pl = 0;
    const auto pts = g.points_of_plane(pl);
    REQUIRE(!pts.empty());
    const int x = pts[0];
    const auto pen = g.pencil(x, pl);
    CHECK(pen.size() == 4);
    std::set<int> covered;
    for (const int l : pen) {
        CHECK(g.line_bitset_of_plane(pl).test(l));
        const auto lp = g.points_of_line(l);
        CHECK(std::binary_search(lp.begin(), lp.end(), x));
        covered.insert(lp.begin(), lp.end());
    }
    CHECK(covered.size() == 13); // lines through x cover the plane

    // a point off the plane
    int outside = -1;
    for (int p = 0; p < g.num_points() && outside < 0; ++p)
        if (!g.point_bitset_of_plane(pl).test(p)) outside = p;
    REQUIRE(outside >= 0);
    CHECK_THROWS_AS(g.pencil(outside, pl), pg3::PointNotOnPlane);
}

TEST_CASE("any two points span one line, any two planes meet in one line") {
    const Field f(3, 1);
    const Geometry g(f);
    for (int a = 0; a < g.num_points(); ++a)
        for (int b = a + 1; b < g.num_points(); ++b) {
            const int l = g.line_through(a, b);
            const auto lp = g.points_of_line(l);
            CHECK(std::binary_search(lp.begin(), lp.end(), a));
            CHECK(std::binary_search(lp.begin(), lp.end(), b));
        }
    for (int a = 0; a < g.num_planes(); ++a)
        for (int b = a + 1; b < g.num_planes(); ++b) {
            const std::size_t common =
                pg3::Bitset::and_count(g.line_bitset_of_plane(a), g.line_bitset_of_plane(b));
            CHECK(common == 1);
        }
}

TEST_CASE("sampled span/meet invariants at q=5") {
    const Field f(5, 1);
    const Geometry g(f);
    // deterministic stride sample over pairs
    for (int a = 0; a < g.num_points(); a += 13)
        for (int b = a + 1; b < g.num_points(); b += 7) {
            const int l = g.line_through(a, b);
            const auto lp = g.points_of_line(l);
            CHECK(std::binary_search(lp.begin(), lp.end(), a));
            CHECK(std::binary_search(lp.begin(), lp.end(), b));
        }
    for (int a = 0; a < g.num_planes(); a += 13)
        for (int b = a + 1; b < g.num_planes(); b += 7)
            CHECK(pg3::Bitset::and_count(g.line_bitset_of_plane(a), g.line_bitset_of_plane(b)) ==
                  1);
    for (int l = 0; l < g.num_lines(); l += 31) CHECK(g.planes_of_line(l).size() == 6);
}

TEST_CASE("duality: plane ids enumerate the same canonical tuples") {
    const Field f(5, 1);
    const Geometry g(f);
    for (int i = 0; i < g.num_planes(); ++i) {
        CHECK(g.plane(i) == g.point(i));
        CHECK(g.plane_id(g.plane(i)) == i);
    }
}

TEST_CASE("deterministic rebuild") {
    const Field f(3, 1);
    const Geometry a(f);
    const Geometry b(f);
    CHECK(a.table_digest() == b.table_digest());
}

TEST_CASE("point cache round trip and rejection") {
    const Field f(3, 1);
    const Geometry g(f);
    std::stringstream ss;
    g.write_point_cache(ss);
    ss.seekg(0);
    CHECK_NOTHROW(g.verify_point_cache(ss));

    // ids are pinned by the committed fixture
    std::ifstream fixture(std::string(PG3_TEST_DATA_DIR) + "/pg3_geom_q3.txt");
    REQUIRE(fixture.good());
    CHECK_NOTHROW(g.verify_point_cache(fixture));

    std::stringstream bad("pg3-geom v1 p=5 e=1 poly=\n");
    CHECK_THROWS_AS(g.verify_point_cache(bad), pg3::FormatError);

    std::stringstream truncated("pg3-geom v1 p=3 e=1 poly=\n0 0 0 1\n");
    CHECK_THROWS_AS(g.verify_point_cache(truncated), pg3::FormatError);
}

TEST_CASE("normalization fixes the first nonzero coordinate") {
    const Field f(5, 1);
    const Geometry g(f);
    // (0,2,3,1) ~ (0,1,4,3) since inv(2)=3 in GF(5)
    CHECK(g.normalize({0, 2, 3, 1}) == Coords4{0, 1, 4, 3});
    for (int p = 0; p < g.num_points(); ++p) CHECK(g.point_id(g.point(p)) == p);
}
