#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "pg3/charax.hpp"
#include "pg3/quadric.hpp"

using namespace pg3;

namespace {

LineFamily standard_family(const Geometry& g) {
    return LineFamily(g, Quadric::standard(g).secant_line_set());
}

} // namespace

TEST_CASE("P1 on the standard family at q=3") {
    const Field f(3, 1);
    const Geometry g(f);
    const Quadric quad = Quadric::standard(g);
    const LineFamily fam(g, quad.secant_line_set());

    const auto r = check_p1(fam);
    REQUIRE(ok(r));
    const auto& pp = std::get<PointProfile>(r);
    for (int p = 0; p < g.num_points(); ++p)
        CHECK(pp.counts[p] == (quad.contains(p) ? 9 : 6));
    CHECK(pp.black == quad.point_set());
}

TEST_CASE("P1 violations") {
    const Field f(3, 1);
    const Geometry g(f);

    const LineFamily empty(g);
    const auto r1 = check_p1(empty);
    REQUIRE(!ok(r1));
    const auto& v1 = std::get<Violation>(r1);
    CHECK(v1.kind == "P1-count");
    CHECK(v1.witness == std::vector<long long>{0, 0}); // point 0 with count 0

    // remove the lowest member line: by the test's own recount, the first
    // offending point is the smallest point of that line, at count 8
    LineFamily chipped = standard_family(g);
    const int removed = static_cast<int>(chipped.members.find_first());
    chipped.members.reset(removed);
    int expect_point = -1, expect_count = -1;
    for (int p = 0; p < g.num_points() && expect_point < 0; ++p) {
        int c = 0;
        for (const int l : g.lines_of_point(p)) c += chipped.contains(l);
        if (c != 6 && c != 9) {
            expect_point = p;
            expect_count = c;
        }
    }
    REQUIRE(expect_point >= 0);
    CHECK((expect_count == 5 || expect_count == 8));
    const auto r2 = check_p1(chipped);
    REQUIRE(!ok(r2));
    const auto& v2 = std::get<Violation>(r2);
    CHECK(v2.kind == "P1-count");
    CHECK(v2.witness == std::vector<long long>{expect_point, expect_count});
}

TEST_CASE("P1 attainment: the non-tangent lines of an elliptic quadric") {
    // every point lies on exactly q^2 of these lines, so the count clause
    // holds everywhere but no point attains q(q+1)/2
    const Field f(3, 1);
    const Geometry g(f);
    Bitset elliptic(g.num_points());
    for (int p = 0; p < g.num_points(); ++p) {
        const auto& x = g.point(p);
        const int v = f.add(f.mul(x[0], x[1]), f.add(f.mul(x[2], x[2]), f.mul(x[3], x[3])));
        if (v == 0) elliptic.set(p);
    }
    REQUIRE(elliptic.count() == 10); // q^2+1

    LineFamily fam(g);
    for (int l = 0; l < g.num_lines(); ++l) {
        int on = 0;
        for (const int pt : g.points_of_line(l)) on += elliptic.test(pt);
        if (on != 1) fam.members.set(l);
    }
    REQUIRE(fam.size() == 90);

    const auto r = check_p1(fam);
    REQUIRE(!ok(r));
    const auto& v = std::get<Violation>(r);
    CHECK(v.kind == "P1-attainment");
    CHECK(v.witness == std::vector<long long>{6}); // q(q+1)/2 never attained
}

TEST_CASE("P2 on the standard family and on the full line set") {
    const Field f(3, 1);
    const Geometry g(f);
    const LineFamily fam = standard_family(g);

    const auto r = check_p2(fam);
    REQUIRE(ok(r));
    const auto& prof = std::get<PlaneProfile>(r);
    for (int pl = 0; pl < g.num_planes(); ++pl) {
        const bool tangent = prof.types[pl] == PlaneType::Tangent;
        CHECK(prof.totals[pl] == (tangent ? 9 : 6));
        for (const int c : prof.pencil_counts[pl]) {
            if (tangent)
                CHECK((c == 0 || c == 3));
            else
                CHECK((c == 1 || c == 2 || c == 3));
        }
    }

    LineFamily all(g);
    for (int l = 0; l < g.num_lines(); ++l) all.members.set(l);
    const auto r2 = check_p2(all);
    REQUIRE(!ok(r2));
    const auto& v = std::get<Violation>(r2);
    CHECK(v.kind == "P2-total");
    CHECK(v.witness == std::vector<long long>{0, 13});
}

TEST_CASE("P2 at q=5") {
    const Field f(5, 1);
    const Geometry g(f);
    const auto r = check_p2(standard_family(g));
    REQUIRE(ok(r));
    const auto& prof = std::get<PlaneProfile>(r);
    for (int pl = 0; pl < g.num_planes(); ++pl) {
        CHECK((prof.totals[pl] == 15 || prof.totals[pl] == 25));
        for (const int c : prof.pencil_counts[pl]) {
            if (prof.types[pl] == PlaneType::Tangent)
                CHECK((c == 0 || c == 5));
            else
                CHECK((c == 2 || c == 3 || c == 5));
        }
    }
}

TEST_CASE("tangent plane analysis finds the pole") {
    const Field f(3, 1);
    const Geometry g(f);
    const Quadric quad = Quadric::standard(g);
    const LineFamily fam(g, quad.secant_line_set());
    const auto p2 = check_p2(fam);
    const auto& prof = std::get<PlaneProfile>(p2);

    int tangent_plane = -1, secant_plane = -1;
    for (int pl = 0; pl < g.num_planes(); ++pl) {
        if (prof.types[pl] == PlaneType::Tangent && tangent_plane < 0) tangent_plane = pl;
        if (prof.types[pl] == PlaneType::Secant && secant_plane < 0) secant_plane = pl;
    }
    REQUIRE(tangent_plane >= 0);
    REQUIRE(secant_plane >= 0);

    const int pole = analyze_tangent_plane(fam, prof, tangent_plane);
    // the pole of a tangent plane of the secant family is its touch point
    CHECK(quad.contains(pole));
    CHECK(g.point_on_plane(pole, tangent_plane));

    // 12 points on 3 in-plane member lines each
    int threes = 0;
    for (const int c : prof.pencil_counts[tangent_plane]) threes += c == 3;
    CHECK(threes == 12);

    // the 4 non-member lines all pass through the pole
    int non_members = 0;
    for (const int l : g.lines_of_plane(tangent_plane)) {
        if (fam.contains(l)) continue;
        ++non_members;
        const auto lp = g.points_of_line(l);
        CHECK(std::binary_search(lp.begin(), lp.end(), pole));
    }
    CHECK(non_members == 4);

    CHECK_THROWS_AS(analyze_tangent_plane(fam, prof, secant_plane), pg3::Error);
    CHECK_THROWS_AS(analyze_secant_plane(fam, prof, tangent_plane), pg3::Error);
}

TEST_CASE("secant plane analysis: oval and class sizes") {
    const Field f(3, 1);
    const Geometry g(f);
    const LineFamily fam = standard_family(g);
    const auto p2 = check_p2(fam);
    const auto& prof = std::get<PlaneProfile>(p2);

    for (int pl = 0; pl < g.num_planes(); ++pl) {
        if (prof.types[pl] != PlaneType::Secant) continue;
        const auto cls = analyze_secant_plane(fam, prof, pl);
        CHECK(cls.gamma.count() == 4);
        CHECK(cls.alpha.count() == 6);
        CHECK(cls.beta.count() == 3);

        // member line triples are (1,1,2) or (0,3,1); non-members (2,2,0) or (3,0,1)
        for (const int l : g.lines_of_plane(pl)) {
            int na = 0, nb = 0, nc = 0;
            for (const int pt : g.points_of_line(l)) {
                na += cls.alpha.test(pt);
                nb += cls.beta.test(pt);
                nc += cls.gamma.test(pt);
            }
            const auto triple = std::array{na, nb, nc};
            if (fam.contains(l))
                CHECK((triple == std::array{1, 1, 2} || triple == std::array{0, 3, 1}));
            else
                CHECK((triple == std::array{2, 2, 0} || triple == std::array{3, 0, 1}));
        }
    }
}

TEST_CASE("black structure constants at q=3") {
    const Field f(3, 1);
    const Geometry g(f);
    const Quadric quad = Quadric::standard(g);
    const LineFamily fam(g, quad.secant_line_set());
    const auto p1 = check_p1(fam);
    const auto p2 = check_p2(fam);
    const auto& pp = std::get<PointProfile>(p1);
    const auto& prof = std::get<PlaneProfile>(p2);
    const auto ana = analyze_planes(fam, prof);
    const auto& an = std::get<PlaneAnalyses>(ana);

    const auto r = black_structure(fam, pp, prof, an);
    REQUIRE(ok(r));
    const auto& bs = std::get<BlackStructure>(r);
    CHECK(bs.lambda == 4);
    CHECK(bs.mu == 7);
    CHECK(bs.h.count() == 16);
    // black lines are exactly the generators
    std::vector<std::int32_t> gens = quad.generator_ids();
    CHECK(bs.black_lines == gens);
    // equation (4) at q=3, lambda=4: 4*3 + 60 = 72
    CHECK(bs.lambda * 3 + 60 == static_cast<long long>(fam.size()));
}

TEST_CASE("a synthetic 3-black-point line is rejected") {
    const Field f(3, 1);
    const Geometry g(f);
    const LineFamily fam = standard_family(g);
    const auto p1 = check_p1(fam);
    const auto p2 = check_p2(fam);
    const auto& pp_real = std::get<PointProfile>(p1);
    const auto& prof = std::get<PlaneProfile>(p2);
    const auto ana = analyze_planes(fam, prof);
    const auto& an = std::get<PlaneAnalyses>(ana);

    // hand the checker a black set containing exactly 3 points of line 0
    PointProfile doctored = pp_real;
    doctored.black = Bitset(g.num_points());
    const auto lp = g.points_of_line(0);
    for (int i = 0; i < 3; ++i) doctored.black.set(lp[i]);

    const auto r = black_structure(fam, doctored, prof, an);
    REQUIRE(!ok(r));
    CHECK(std::get<Violation>(r).kind == "0-1-2-q+1");
    CHECK(std::get<Violation>(r).witness[0] == 0);
}

TEST_CASE("hypothetical branch consistency checks on synthetic input") {
    const Field f(3, 1);
    const Geometry g(f);
    const int line = 0;
    Bitset h(g.num_points());
    for (const int pt : g.points_of_line(line)) h.set(pt);

    // (q^4+q^3+2q^2)/2 = 63 members, avoiding the black line itself
    LineFamily fam(g);
    int added = 0;
    for (int l = 1; l < g.num_lines() && added < 63; ++l, ++added) fam.members.set(l);
    REQUIRE(fam.size() == 63);

    const auto r = hypothetical_branch(fam, h, {line});
    REQUIRE(ok(r));
    CHECK(std::get<std::int32_t>(r) == line);

    // the black line must not be a member
    LineFamily with_line = fam;
    with_line.members.reset(63);
    with_line.members.set(line);
    const auto r2 = hypothetical_branch(with_line, h, {line});
    REQUIRE(!ok(r2));
    CHECK(std::get<Violation>(r2).kind == "hypothetical-member");

    // wrong family size
    LineFamily small = fam;
    small.members.reset(small.members.find_first());
    const auto r3 = hypothetical_branch(small, h, {line});
    REQUIRE(!ok(r3));
    CHECK(std::get<Violation>(r3).kind == "hypothetical-size");

    // H not a line shape
    const auto r4 = hypothetical_branch(fam, h, {});
    REQUIRE(!ok(r4));
    CHECK(std::get<Violation>(r4).kind == "hypothetical-shape");
}

TEST_CASE("round trip: reconstruct recovers the standard quadric") {
    for (const int q : {3, 5}) {
        const Field f(q, 1);
        const Geometry g(f);
        const Quadric quad = Quadric::standard(g);
        const LineFamily fam(g, quad.secant_line_set());
        const CharaxReport rep = reconstruct(fam);
        CAPTURE(q);
        REQUIRE(rep.verdict == Verdict::SecantFamily);
        CHECK(*rep.quadric_points == quad.point_set());
        CHECK(rep.black_lines == quad.generator_ids());
        CHECK(*rep.lambda == q + 1);
        CHECK(*rep.mu == 2 * q + 1);
        CHECK(*rep.h_size == (q + 1) * (q + 1));
        REQUIRE(rep.recovered_gram.has_value());
        // the canonical solve lands on the standard gram itself
        CHECK(*rep.recovered_gram == quad.gram());
    }
}

TEST_CASE("round trip under projective transforms") {
    const Field f(3, 1);
    const Geometry g(f);
    const Quadric std_quad = Quadric::standard(g);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const Mat4 m = random_invertible_matrix(f, seed);
        const Quadric quad(g, conjugate_gram(f, std_quad.gram(), m));
        const LineFamily fam(g, quad.secant_line_set());
        const CharaxReport rep = reconstruct(fam);
        REQUIRE(rep.verdict == Verdict::SecantFamily);
        CHECK(*rep.quadric_points == quad.point_set());
    }
}

TEST_CASE("first-eligible swap breaks P1 or P2") {
    const Field f(3, 1);
    const Geometry g(f);
    LineFamily fam = standard_family(g);
    const int out = static_cast<int>(fam.members.find_first());
    int in = -1;
    for (int l = 0; l < g.num_lines(); ++l)
        if (!fam.contains(l)) {
            in = l;
            break;
        }
    fam.members.reset(out);
    fam.members.set(in);
    const CharaxReport rep = reconstruct(fam);
    REQUIRE(rep.verdict == Verdict::Violation);
    CHECK(rep.violation->kind.rfind("P1", 0) == 0);
}

TEST_CASE("lem-plane-point as a property of any accepted family") {
    const Field f(3, 1);
    const Geometry g(f);
    const LineFamily fam = standard_family(g);
    const auto p1 = check_p1(fam);
    const auto p2 = check_p2(fam);
    const auto& pp = std::get<PointProfile>(p1);
    const auto& prof = std::get<PlaneProfile>(p2);
    for (int l = 0; l < g.num_lines(); ++l) {
        int tangent = 0;
        for (const int pl : g.planes_of_line(l))
            tangent += prof.types[pl] == PlaneType::Tangent;
        int black = 0;
        for (const int pt : g.points_of_line(l)) black += pp.black.test(pt);
        CHECK(tangent == black);
    }
}

TEST_CASE("reports are deterministic and thread-count independent") {
    const Field f(3, 1);
    const Geometry g(f);
    const LineFamily fam = standard_family(g);
    const std::string a = report_json(reconstruct(fam, 1));
    const std::string b = report_json(reconstruct(fam, 1));
    const std::string c = report_json(reconstruct(fam, 4));
    CHECK(a == b);
    CHECK(a == c);
}

TEST_CASE("json report shape") {
    const Field f(3, 1);
    const Geometry g(f);
    const LineFamily fam = standard_family(g);
    const std::string j = report_json(reconstruct(fam));
    CHECK(j.find("\"verdict\": \"SecantFamily\"") != std::string::npos);
    CHECK(j.find("\"s_size\": 72") != std::string::npos);
    CHECK(j.find("\"lambda\": 4") != std::string::npos);
    CHECK(j.find("\"witness\": null") != std::string::npos);

    const LineFamily empty(g);
    const std::string k = report_json(reconstruct(empty));
    CHECK(k.find("\"verdict\": \"Violation\"") != std::string::npos);
    CHECK(k.find("\"lambda\": null") != std::string::npos);
    CHECK(k.find("\"recovered_gram\": null") != std::string::npos);
}
