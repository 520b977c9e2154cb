#include "pg3/charax.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "pg3/parallel.hpp"
#include "pg3/quadric.hpp"

namespace pg3 {

namespace {

long long white_count(int q) { return static_cast<long long>(q) * (q + 1) / 2; }
long long black_count(int q) { return static_cast<long long>(q) * q; }

std::string ids_string(const std::vector<long long>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    return s + "]";
}

} // namespace

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::SecantFamily: return "SecantFamily";
        case Verdict::HypotheticalFamily: return "HypotheticalFamily";
        case Verdict::Violation: return "Violation";
    }
    return "?";
}

int verdict_exit_code(Verdict v) {
    switch (v) {
        case Verdict::SecantFamily: return 0;
        case Verdict::HypotheticalFamily: return 10;
        case Verdict::Violation: return 20;
    }
    return 20;
}

Checked<PointProfile> check_p1(const LineFamily& fam, int threads) {
    const Geometry& g = *fam.geom;
    const int q = g.q();
    const long long w = white_count(q), b = black_count(q);

    PointProfile pp;
    pp.counts.assign(g.num_points(), 0);
    pp.black = Bitset(g.num_points());

    parallel_for(static_cast<std::size_t>(g.num_points()), threads,
                 [&](std::size_t lo, std::size_t hi) {
                     for (std::size_t p = lo; p < hi; ++p)
                         pp.counts[p] = static_cast<std::int32_t>(
                             Bitset::and_count(fam.members, g.line_bitset_of_point(static_cast<int>(p))));
                 });

    bool saw_white = false, saw_black = false;
    for (int p = 0; p < g.num_points(); ++p) {
        const long long c = pp.counts[p];
        if (c == w)
            saw_white = true;
        else if (c == b) {
            saw_black = true;
            pp.black.set(p);
        } else {
            return Violation{"P1-count",
                             {p, c},
                             "point " + std::to_string(p) + " lies on " + std::to_string(c) +
                                 " member lines; expected " + std::to_string(w) + " or " +
                                 std::to_string(b)};
        }
    }
    if (!saw_white)
        return Violation{"P1-attainment", {w}, "no point lies on " + std::to_string(w) +
                                                   " member lines"};
    if (!saw_black)
        return Violation{"P1-attainment", {b}, "no point lies on " + std::to_string(b) +
                                                   " member lines"};
    return pp;
}

Checked<PlaneProfile> check_p2(const LineFamily& fam, int threads) {
    const Geometry& g = *fam.geom;
    const int q = g.q();
    const long long w = white_count(q), b = black_count(q);

    PlaneProfile prof;
    prof.totals.assign(g.num_planes(), 0);
    prof.types.assign(g.num_planes(), PlaneType::Secant);
    prof.pencil_counts.assign(g.num_planes(), {});

    parallel_for(static_cast<std::size_t>(g.num_planes()), threads,
                 [&](std::size_t lo, std::size_t hi) {
                     for (std::size_t pl = lo; pl < hi; ++pl) {
                         const int pli = static_cast<int>(pl);
                         prof.totals[pl] = static_cast<std::int32_t>(
                             Bitset::and_count(fam.members, g.line_bitset_of_plane(pli)));
                         const auto pts = g.points_of_plane(pli);
                         auto& counts = prof.pencil_counts[pl];
                         counts.resize(pts.size());
                         for (std::size_t i = 0; i < pts.size(); ++i) {
                             int c = 0;
                             for (const int l : g.pencil(pts[i], pli)) c += fam.contains(l);
                             counts[i] = c;
                         }
                     }
                 });

    const long long plo = (q - 1) / 2, phi = (q + 1) / 2;
    for (int pl = 0; pl < g.num_planes(); ++pl) {
        const long long total = prof.totals[pl];
        if (total != w && total != b)
            return Violation{"P2-total",
                             {pl, total},
                             "plane " + std::to_string(pl) + " contains " + std::to_string(total) +
                                 " member lines; expected " + std::to_string(w) + " or " +
                                 std::to_string(b)};
        prof.types[pl] = total == b ? PlaneType::Tangent : PlaneType::Secant;
        const auto pts = g.points_of_plane(pl);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const long long c = prof.pencil_counts[pl][i];
            if (prof.types[pl] == PlaneType::Tangent) {
                if (c != 0 && c != q)
                    return Violation{"P2a-pencil",
                                     {pl, pts[i], c},
                                     "pencil of point " + std::to_string(pts[i]) + " in tangent plane " +
                                         std::to_string(pl) + " has " + std::to_string(c) +
                                         " member lines; expected 0 or " + std::to_string(q)};
            } else {
                if (c != plo && c != phi && c != q)
                    return Violation{"P2b-pencil",
                                     {pl, pts[i], c},
                                     "pencil of point " + std::to_string(pts[i]) + " in secant plane " +
                                         std::to_string(pl) + " has " + std::to_string(c) +
                                         " member lines; expected " + std::to_string(plo) + ", " +
                                         std::to_string(phi) + " or " + std::to_string(q)};
            }
        }
    }
    return prof;
}

int analyze_tangent_plane(const LineFamily& fam, const PlaneProfile& prof, int plane_id) {
    const Geometry& g = *fam.geom;
    const int q = g.q();
    if (prof.types[plane_id] != PlaneType::Tangent)
        throw Error("analyze_tangent_plane called on a non-tangent plane");

    const auto pts = g.points_of_plane(plane_id);
    int pole = -1;
    int zero_count = 0, q_count = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const int c = prof.pencil_counts[plane_id][i];
        if (c == 0) {
            ++zero_count;
            pole = pts[i];
        } else if (c == q) {
            ++q_count;
        } else {
            throw StructureViolation({"size-a_pi",
                                      {plane_id, pts[i], c},
                                      "point " + std::to_string(pts[i]) + " of tangent plane " +
                                          std::to_string(plane_id) + " lies on " + std::to_string(c) +
                                          " in-plane member lines; expected 0 or " +
                                          std::to_string(q)});
        }
    }
    if (zero_count != 1 || q_count != q * q + q)
        throw StructureViolation({"size-a_pi",
                                  {plane_id, zero_count},
                                  "tangent plane " + std::to_string(plane_id) + " has " +
                                      std::to_string(zero_count) +
                                      " points on no in-plane member line; expected exactly 1"});

    // the q+1 non-member lines are the pencil of the pole
    int non_members = 0;
    for (const int l : g.lines_of_plane(plane_id)) {
        if (fam.contains(l)) continue;
        ++non_members;
        const auto lp = g.points_of_line(l);
        if (!std::binary_search(lp.begin(), lp.end(), pole))
            throw StructureViolation({"cor-pole",
                                      {plane_id, l, pole},
                                      "non-member line " + std::to_string(l) + " of tangent plane " +
                                          std::to_string(plane_id) + " misses the pole " +
                                          std::to_string(pole)});
    }
    if (non_members != q + 1)
        throw StructureViolation({"cor-pole",
                                  {plane_id, non_members},
                                  "tangent plane " + std::to_string(plane_id) + " has " +
                                      std::to_string(non_members) +
                                      " non-member lines; expected " + std::to_string(q + 1)});
    return pole;
}

SecantPlaneClasses analyze_secant_plane(const LineFamily& fam, const PlaneProfile& prof,
                                        int plane_id) {
    const Geometry& g = *fam.geom;
    const int q = g.q();
    if (prof.types[plane_id] != PlaneType::Secant)
        throw Error("analyze_secant_plane called on a non-secant plane");

    SecantPlaneClasses cls{Bitset(g.num_points()), Bitset(g.num_points()), Bitset(g.num_points())};
    const auto pts = g.points_of_plane(plane_id);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const int c = prof.pencil_counts[plane_id][i];
        if (c == (q - 1) / 2)
            cls.alpha.set(pts[i]);
        else if (c == (q + 1) / 2)
            cls.beta.set(pts[i]);
        else if (c == q)
            cls.gamma.set(pts[i]);
        else
            throw StructureViolation({"plane-partition",
                                      {plane_id, pts[i], c},
                                      "point " + std::to_string(pts[i]) + " of secant plane " +
                                          std::to_string(plane_id) + " lies on " +
                                          std::to_string(c) + " in-plane member lines"});
    }

    const long long gsz = static_cast<long long>(cls.gamma.count());
    if (gsz != q + 1)
        throw StructureViolation({"lem-oval",
                                  {plane_id, gsz},
                                  "secant plane " + std::to_string(plane_id) + " has |gamma| = " +
                                      std::to_string(gsz) + "; expected " + std::to_string(q + 1)});
    const long long asz = static_cast<long long>(cls.alpha.count());
    const long long bsz = static_cast<long long>(cls.beta.count());
    if (asz != static_cast<long long>(q) * (q + 1) / 2)
        throw StructureViolation({"size-alpha-beta",
                                  {plane_id, asz},
                                  "secant plane " + std::to_string(plane_id) + " has |alpha| = " +
                                      std::to_string(asz) + "; expected " +
                                      std::to_string(static_cast<long long>(q) * (q + 1) / 2)});
    if (bsz != static_cast<long long>(q) * (q - 1) / 2)
        throw StructureViolation({"size-alpha-beta",
                                  {plane_id, bsz},
                                  "secant plane " + std::to_string(plane_id) + " has |beta| = " +
                                      std::to_string(bsz) + "; expected " +
                                      std::to_string(static_cast<long long>(q) * (q - 1) / 2)});

    // gamma is an oval and S_pi is exactly its secant lines
    for (const int l : g.lines_of_plane(plane_id)) {
        int on_gamma = 0;
        for (const int pt : g.points_of_line(l)) on_gamma += cls.gamma.test(pt);
        if (on_gamma > 2)
            throw StructureViolation({"cor-arc",
                                      {plane_id, l, on_gamma},
                                      "line " + std::to_string(l) + " of secant plane " +
                                          std::to_string(plane_id) + " meets gamma in " +
                                          std::to_string(on_gamma) + " >= 3 points"});
        const bool member = fam.contains(l);
        if (member != (on_gamma == 2))
            throw StructureViolation({"lem-oval",
                                      {plane_id, l, on_gamma},
                                      "line " + std::to_string(l) + " of secant plane " +
                                          std::to_string(plane_id) + " meets gamma in " +
                                          std::to_string(on_gamma) + " points but is " +
                                          (member ? "a member" : "not a member")});
    }
    return cls;
}

Checked<PlaneAnalyses> analyze_planes(const LineFamily& fam, const PlaneProfile& prof,
                                      int threads) {
    const Geometry& g = *fam.geom;
    PlaneAnalyses an;
    an.pole.assign(g.num_planes(), -1);
    an.classes.assign(g.num_planes(), SecantPlaneClasses{});
    std::vector<std::optional<Violation>> errs(g.num_planes());

    parallel_for(static_cast<std::size_t>(g.num_planes()), threads,
                 [&](std::size_t lo, std::size_t hi) {
                     for (std::size_t pl = lo; pl < hi; ++pl) {
                         const int pli = static_cast<int>(pl);
                         try {
                             if (prof.types[pl] == PlaneType::Tangent)
                                 an.pole[pl] = analyze_tangent_plane(fam, prof, pli);
                             else
                                 an.classes[pl] = analyze_secant_plane(fam, prof, pli);
                         } catch (const StructureViolation& sv) {
                             errs[pl] = sv.violation;
                         }
                     }
                 });

    for (int pl = 0; pl < g.num_planes(); ++pl)
        if (errs[pl]) return *errs[pl];
    return an;
}

Checked<BlackStructure> black_structure(const LineFamily& fam, const PointProfile& pp,
                                        const PlaneProfile& prof, const PlaneAnalyses& an) {
    const Geometry& g = *fam.geom;
    const int q = g.q();
    const long long s = static_cast<long long>(fam.size());

    BlackStructure bs;
    bs.h = pp.black;
    const long long h_size = static_cast<long long>(bs.h.count());

    bool has_tangent = false, has_secant = false;
    for (const auto t : prof.types) {
        if (t == PlaneType::Tangent) has_tangent = true;
        else has_secant = true;
    }
    if (!has_tangent || !has_secant)
        return Violation{"both-plane-types-exist",
                         {},
                         std::string("family has no ") +
                             (has_tangent ? "secant" : "tangent") + " plane"};

    // per-line black counts
    for (int l = 0; l < g.num_lines(); ++l) {
        int b = 0;
        for (const int pt : g.points_of_line(l)) b += bs.h.test(pt);
        if (b == q + 1) {
            bs.black_lines.push_back(l);
        } else if (b > 2) {
            return Violation{"0-1-2-q+1",
                             {l, b},
                             "line " + std::to_string(l) + " contains " + std::to_string(b) +
                                 " black points; expected 0, 1, 2 or " + std::to_string(q + 1)};
        } else if (b == 2 && !fam.contains(l)) {
            return Violation{"0-1-2-q+1-ii",
                             {l},
                             "line " + std::to_string(l) +
                                 " contains exactly two black points but is not a member"};
        }
    }

    // lambda and mu
    long long lambda = -1, mu = -1;
    for (int pl = 0; pl < g.num_planes(); ++pl) {
        const long long cnt =
            static_cast<long long>(Bitset::and_count(bs.h, g.point_bitset_of_plane(pl)));
        if (prof.types[pl] == PlaneType::Secant) {
            if (lambda < 0) lambda = cnt;
            if (cnt != lambda)
                return Violation{"lem-black-secant",
                                 {pl, cnt, lambda},
                                 "secant plane " + std::to_string(pl) + " contains " +
                                     std::to_string(cnt) + " black points, another contains " +
                                     std::to_string(lambda)};
        } else {
            if (mu < 0) mu = cnt;
            if (cnt != mu)
                return Violation{"lem-black-tangent",
                                 {pl, cnt, mu},
                                 "tangent plane " + std::to_string(pl) + " contains " +
                                     std::to_string(cnt) + " black points, another contains " +
                                     std::to_string(mu)};
        }
    }
    bs.lambda = lambda;
    bs.mu = mu;

    if (lambda > q + 1)
        return Violation{"coro-black",
                         {lambda},
                         "lambda = " + std::to_string(lambda) + " exceeds q+1 = " +
                             std::to_string(q + 1)};
    if (mu != lambda + q)
        return Violation{"eq-6",
                         {lambda, mu},
                         "mu = " + std::to_string(mu) + " differs from lambda + q = " +
                             std::to_string(lambda + q)};
    if (h_size != lambda * (q + 1))
        return Violation{"lem-size-H",
                         {h_size, lambda},
                         "|H| = " + std::to_string(h_size) + " differs from lambda*(q+1) = " +
                             std::to_string(lambda * (q + 1))};
    const long long qq = static_cast<long long>(q);
    const long long eq4 = lambda * (qq * qq - qq) / 2 + (qq * qq * qq * qq + qq * qq * qq + qq * qq + qq) / 2;
    if (eq4 != s)
        return Violation{"eq-4",
                         {lambda, eq4, s},
                         "lambda*(q^2-q)/2 + (q^4+q^3+q^2+q)/2 = " + std::to_string(eq4) +
                             " differs from |S| = " + std::to_string(s)};
    const long long eq5 = mu * (qq * qq - qq) / 2 + (qq * qq * qq * qq + 2 * qq * qq + qq) / 2;
    if (eq5 != s)
        return Violation{"eq-5",
                         {mu, eq5, s},
                         "mu*(q^2-q)/2 + (q^4+2q^2+q)/2 = " + std::to_string(eq5) +
                             " differs from |S| = " + std::to_string(s)};

    // shape of H_pi in every tangent plane: one line (mu = q+1) or two
    // lines crossing at the pole (mu = 2q+1)
    for (int pl = 0; pl < g.num_planes(); ++pl) {
        if (prof.types[pl] != PlaneType::Tangent) continue;
        std::vector<int> in_plane;
        for (const int bl : bs.black_lines)
            if (g.line_bitset_of_plane(pl).test(bl)) in_plane.push_back(bl);
        if (mu == q + 1) {
            if (in_plane.size() != 1)
                return Violation{"to-use",
                                 {pl, static_cast<long long>(in_plane.size())},
                                 "tangent plane " + std::to_string(pl) + " carries " +
                                     std::to_string(in_plane.size()) +
                                     " black lines; expected exactly 1 covering H_pi"};
        } else if (mu == 2 * q + 1) {
            if (in_plane.size() != 2)
                return Violation{"to-use",
                                 {pl, static_cast<long long>(in_plane.size())},
                                 "tangent plane " + std::to_string(pl) + " carries " +
                                     std::to_string(in_plane.size()) +
                                     " black lines; expected exactly 2 covering H_pi"};
            const int x = g.meet_point(in_plane[0], in_plane[1]);
            if (x < 0)
                return Violation{"to-use",
                                 {pl, in_plane[0], in_plane[1]},
                                 "the two black lines of tangent plane " + std::to_string(pl) +
                                     " do not meet"};
            if (an.pole[pl] != x)
                return Violation{"pole-inters",
                                 {pl, an.pole[pl], x},
                                 "pole of tangent plane " + std::to_string(pl) + " is " +
                                     std::to_string(an.pole[pl]) +
                                     " but the black lines cross at " + std::to_string(x)};
        } else {
            return Violation{"to-use",
                             {pl, mu},
                             "tangent plane " + std::to_string(pl) + " contains " +
                                 std::to_string(mu) +
                                 " black points, matching neither a line nor two lines"};
        }
    }
    return bs;
}

Checked<std::int32_t> hypothetical_branch(const LineFamily& fam, const Bitset& h,
                                          const std::vector<std::int32_t>& black_lines) {
    const Geometry& g = *fam.geom;
    const int q = g.q();
    const long long qq = q;

    if (black_lines.size() != 1 || static_cast<long long>(h.count()) != q + 1)
        return Violation{"hypothetical-shape",
                         {static_cast<long long>(black_lines.size()),
                          static_cast<long long>(h.count())},
                         "black points do not form a single line"};
    const std::int32_t line_id = black_lines[0];
    for (const int pt : g.points_of_line(line_id))
        if (!h.test(pt))
            return Violation{"hypothetical-shape",
                             {line_id, pt},
                             "black line misses black point set"};
    if (fam.contains(line_id))
        return Violation{"hypothetical-member",
                         {line_id},
                         "the black-point line " + std::to_string(line_id) +
                             " must not be a member of the family"};
    const long long expect = (qq * qq * qq * qq + qq * qq * qq + 2 * qq * qq) / 2;
    const long long s = static_cast<long long>(fam.size());
    if (s != expect)
        return Violation{"hypothetical-size",
                         {s, expect},
                         "|S| = " + std::to_string(s) + " differs from (q^4+q^3+2q^2)/2 = " +
                             std::to_string(expect)};
    return line_id;
}

std::vector<std::vector<int>> gram_solution_space(const Geometry& geom, const Bitset& points) {
    const Field& f = geom.field();
    const int two = f.add(1, 1);
    std::vector<std::vector<int>> rows;
    rows.reserve(points.count());
    for (std::size_t p = points.find_first(); p < points.size(); p = points.find_next(p)) {
        const Coords4& x = geom.point(static_cast<int>(p));
        std::vector<int> row(10);
        for (int i = 0; i < 4; ++i) row[i] = f.mul(x[i], x[i]);
        int k = 4;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) row[k++] = f.mul(two, f.mul(x[i], x[j]));
        rows.push_back(std::move(row));
    }
    return nullspace(f, std::move(rows), 10);
}

namespace {

Mat4 gram_from_coeffs(const std::vector<int>& v) {
    Mat4 g{};
    g[0 * 4 + 0] = v[0];
    g[1 * 4 + 1] = v[1];
    g[2 * 4 + 2] = v[2];
    g[3 * 4 + 3] = v[3];
    const int off[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    for (int k = 0; k < 6; ++k) {
        g[off[k][0] * 4 + off[k][1]] = v[4 + k];
        g[off[k][1] * 4 + off[k][0]] = v[4 + k];
    }
    return g;
}

} // namespace

CharaxReport reconstruct(const LineFamily& fam, int threads) {
    const Geometry& g = *fam.geom;
    const int q = g.q();
    CharaxReport rep;
    rep.s_size = static_cast<long long>(fam.size());

    auto p1 = check_p1(fam, threads);
    if (!ok(p1)) {
        rep.violation = std::get<Violation>(p1);
        return rep;
    }
    auto p2 = check_p2(fam, threads);
    if (!ok(p2)) {
        rep.violation = std::get<Violation>(p2);
        return rep;
    }
    const auto& pp = std::get<PointProfile>(p1);
    const auto& prof = std::get<PlaneProfile>(p2);

    auto ana = analyze_planes(fam, prof, threads);
    if (!ok(ana)) {
        rep.violation = std::get<Violation>(ana);
        return rep;
    }
    const auto& an = std::get<PlaneAnalyses>(ana);

    auto bsr = black_structure(fam, pp, prof, an);
    if (!ok(bsr)) {
        rep.violation = std::get<Violation>(bsr);
        return rep;
    }
    const auto& bs = std::get<BlackStructure>(bsr);
    rep.lambda = bs.lambda;
    rep.mu = bs.mu;
    rep.h_size = static_cast<long long>(bs.h.count());

    if (bs.mu == q + 1) {
        auto hb = hypothetical_branch(fam, bs.h, bs.black_lines);
        if (!ok(hb)) {
            rep.violation = std::get<Violation>(hb);
            return rep;
        }
        rep.verdict = Verdict::HypotheticalFamily;
        rep.h_line_id = std::get<std::int32_t>(hb);
        rep.black_lines = bs.black_lines;
        return rep;
    }

    // quadric branch
    const long long qq = q;
    const long long expect_s = qq * qq * (qq + 1) * (qq + 1) / 2;
    const long long expect_h = (qq + 1) * (qq + 1);
    if (rep.s_size != expect_s || *rep.h_size != expect_h) {
        rep.violation = Violation{"size-S-H",
                                  {rep.s_size, *rep.h_size},
                                  "|S| = " + std::to_string(rep.s_size) + ", |H| = " +
                                      std::to_string(*rep.h_size) + "; expected " +
                                      std::to_string(expect_s) + " and " +
                                      std::to_string(expect_h)};
        return rep;
    }

    // generalized quadrangle of order (q,1) on (H, black lines)
    const auto& bl = bs.black_lines;
    if (static_cast<long long>(bl.size()) != 2 * (qq + 1)) {
        rep.violation = Violation{"GQ-Q1",
                                  {static_cast<long long>(bl.size())},
                                  "found " + std::to_string(bl.size()) + " black lines; expected " +
                                      std::to_string(2 * (qq + 1))};
        return rep;
    }
    std::vector<std::vector<std::int32_t>> lines_through(g.num_points());
    for (const int l : bl)
        for (const int pt : g.points_of_line(l)) lines_through[pt].push_back(l);
    for (std::size_t p = bs.h.find_first(); p < bs.h.size(); p = bs.h.find_next(p)) {
        if (lines_through[p].size() != 2) {
            rep.violation =
                Violation{"black-line-2",
                          {static_cast<long long>(p), static_cast<long long>(lines_through[p].size())},
                          "black point " + std::to_string(p) + " lies on " +
                              std::to_string(lines_through[p].size()) +
                              " black lines; expected exactly 2"};
            return rep;
        }
    }
    for (std::size_t i = 0; i < bl.size(); ++i)
        for (std::size_t j = i + 1; j < bl.size(); ++j) {
            const auto pa = g.points_of_line(bl[i]);
            const auto pb = g.points_of_line(bl[j]);
            std::size_t ia = 0, ib = 0, common = 0;
            while (ia < pa.size() && ib < pb.size()) {
                if (pa[ia] < pb[ib]) ++ia;
                else if (pb[ib] < pa[ia]) ++ib;
                else { ++common; ++ia; ++ib; }
            }
            if (common > 1) {
                rep.violation = Violation{"GQ-Q2",
                                          {bl[i], bl[j], static_cast<long long>(common)},
                                          "black lines " + std::to_string(bl[i]) + " and " +
                                              std::to_string(bl[j]) + " share " +
                                              std::to_string(common) + " points"};
                return rep;
            }
        }
    // (Q3) for a black point x off a black line l, exactly one black line
    // through x meets l
    for (std::size_t p = bs.h.find_first(); p < bs.h.size(); p = bs.h.find_next(p)) {
        for (const int l : bl) {
            const auto lp = g.points_of_line(l);
            if (std::binary_search(lp.begin(), lp.end(), static_cast<std::int32_t>(p))) continue;
            int hits = 0;
            for (const int m : lines_through[p]) hits += g.lines_meet(m, l);
            if (hits != 1) {
                rep.violation = Violation{"GQ-Q3",
                                          {static_cast<long long>(p), l, hits},
                                          "black point " + std::to_string(p) + " has " +
                                              std::to_string(hits) +
                                              " black lines meeting black line " + std::to_string(l) +
                                              "; expected exactly 1"};
                return rep;
            }
        }
    }

    // two rulings: 2-color the meet graph of the black lines
    {
        const int nb = static_cast<int>(bl.size());
        std::vector<int> color(nb, -1);
        std::vector<int> stack{0};
        color[0] = 0;
        while (!stack.empty()) {
            const int i = stack.back();
            stack.pop_back();
            for (int j = 0; j < nb; ++j) {
                if (j == i || !g.lines_meet(bl[i], bl[j])) continue;
                if (color[j] < 0) {
                    color[j] = 1 - color[i];
                    stack.push_back(j);
                } else if (color[j] == color[i]) {
                    rep.violation = Violation{"two-rulings",
                                              {bl[i], bl[j]},
                                              "black lines " + std::to_string(bl[i]) + " and " +
                                                  std::to_string(bl[j]) +
                                                  " cannot be split into two rulings"};
                    return rep;
                }
            }
        }
        long long n0 = 0;
        for (int i = 0; i < nb; ++i) {
            if (color[i] < 0) {
                rep.violation = Violation{"two-rulings",
                                          {bl[i]},
                                          "black line " + std::to_string(bl[i]) +
                                              " meets no other black line"};
                return rep;
            }
            n0 += color[i] == 0;
        }
        if (n0 != qq + 1) {
            rep.violation = Violation{"two-rulings",
                                      {n0},
                                      "ruling sizes " + std::to_string(n0) + " and " +
                                          std::to_string(nb - n0) + "; expected " +
                                          std::to_string(qq + 1) + " each"};
            return rep;
        }
        for (int i = 0; i < nb; ++i)
            for (int j = i + 1; j < nb; ++j) {
                const bool meet = g.lines_meet(bl[i], bl[j]);
                const bool same = color[i] == color[j];
                if (meet == same) {
                    rep.violation = Violation{"two-rulings",
                                              {bl[i], bl[j]},
                                              "black lines " + std::to_string(bl[i]) + " and " +
                                                  std::to_string(bl[j]) +
                                                  (same ? " meet inside one ruling"
                                                        : " are skew across rulings")};
                    return rep;
                }
            }
    }

    // H must be the zero set of a unique quadratic form
    const auto basis = gram_solution_space(g, bs.h);
    if (basis.size() != 1) {
        rep.violation = Violation{"hyperbolic",
                                  {static_cast<long long>(basis.size())},
                                  "space of quadratic forms vanishing on H has dimension " +
                                      std::to_string(basis.size()) + "; expected 1"};
        return rep;
    }
    const Mat4 gram = gram_from_coeffs(basis[0]);
    std::optional<Quadric> quad;
    try {
        quad.emplace(g, gram);
    } catch (const Error& e) {
        rep.violation = Violation{"hyperbolic", {}, e.what()};
        return rep;
    }
    if (!(quad->point_set() == bs.h)) {
        rep.violation = Violation{"hyperbolic",
                                  {},
                                  "recovered quadric's point set differs from H"};
        return rep;
    }
    const Bitset secants = quad->secant_line_set();
    if (!(secants == fam.members)) {
        long long witness = -1;
        for (int l = 0; l < g.num_lines(); ++l)
            if (secants.test(l) != fam.members.test(l)) {
                witness = l;
                break;
            }
        rep.violation = Violation{"final-lemma",
                                  {witness},
                                  "family differs from the secant lines of the recovered quadric "
                                  "first at line " +
                                      std::to_string(witness)};
        return rep;
    }

    rep.verdict = Verdict::SecantFamily;
    rep.quadric_points = bs.h;
    rep.black_lines = bs.black_lines;
    rep.recovered_gram = gram;
    return rep;
}

std::string report_json(const CharaxReport& rep) {
    nlohmann::json j;
    j["verdict"] = verdict_name(rep.verdict);
    j["lambda"] = rep.lambda ? nlohmann::json(*rep.lambda) : nlohmann::json(nullptr);
    j["mu"] = rep.mu ? nlohmann::json(*rep.mu) : nlohmann::json(nullptr);
    j["h_size"] = rep.h_size ? nlohmann::json(*rep.h_size) : nlohmann::json(nullptr);
    j["s_size"] = rep.s_size;
    if (rep.violation) {
        j["witness"] = {{"kind", rep.violation->kind},
                        {"ids", rep.violation->witness},
                        {"detail", rep.violation->detail}};
    } else {
        j["witness"] = nullptr;
    }
    if (rep.recovered_gram) {
        j["recovered_gram"] = std::vector<int>(rep.recovered_gram->begin(),
                                               rep.recovered_gram->end());
    } else {
        j["recovered_gram"] = nullptr;
    }
    return j.dump(2);
}

std::string report_text(const CharaxReport& rep) {
    std::ostringstream out;
    out << "verdict=" << verdict_name(rep.verdict) << " s_size=" << rep.s_size;
    if (rep.lambda) out << " lambda=" << *rep.lambda;
    if (rep.mu) out << " mu=" << *rep.mu;
    if (rep.h_size) out << " h_size=" << *rep.h_size;
    if (rep.h_line_id) out << " h_line=" << *rep.h_line_id;
    if (rep.violation)
        out << " violation=" << rep.violation->kind << " witness=" << ids_string(rep.violation->witness)
            << " detail=\"" << rep.violation->detail << '"';
    return out.str();
}

} // namespace pg3
