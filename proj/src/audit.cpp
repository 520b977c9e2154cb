#include "pg3/audit.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "pg3/charax.hpp"
#include "pg3/quadric.hpp"

namespace pg3 {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// A typed witness entry so traces can print the object behind an id.
struct Wit {
    char tag; // 'P' point, 'L' line, 'E' plane, 'N' plain number
    long long v;
};

struct CheckOutcome {
    bool pass = true;
    long long cases = 0;
    std::vector<Wit> witness;
    std::string detail;

    void fail(std::vector<Wit> w, std::string d) {
        if (!pass) return; // keep the first (smallest-id) witness
        pass = false;
        witness = std::move(w);
        detail = std::move(d);
    }
};

constexpr int kPlaneTangent = 0;
constexpr int kPlaneSecant = 1;
constexpr int kPlaneOther = 2;

// Everything the checks read, derived from one family without assuming
// the family is valid (so checks stay runnable on perturbed inputs).
struct Artifacts {
    const Geometry* g = nullptr;
    const LineFamily* fam = nullptr;

    std::vector<std::int32_t> point_counts;
    Bitset black;

    std::vector<std::int32_t> plane_totals;
    std::vector<std::int8_t> plane_kind;
    std::vector<std::vector<std::int32_t>> pencil_counts; // per plane, per point pos
    std::vector<std::int32_t> plane_black;                // |H ∩ pi|

    std::vector<std::int32_t> line_black; // black points on each line
    std::vector<std::int32_t> black_lines;
    std::vector<std::vector<std::int32_t>> black_lines_through; // per point

    std::vector<std::int32_t> pole; // unique 0-pencil point of a plane, else -1

    long long lambda_ref = -1; // black count of the first secant plane
    long long mu_ref = -1;     // black count of the first tangent plane

    // ids the quantified loops run over (sampled for q >= 11)
    std::vector<std::int32_t> scope_planes;
    std::vector<std::int32_t> scope_lines;
    bool sampled = false;
};

std::vector<std::int32_t> sample_ids(int n, double fraction, std::uint64_t seed) {
    std::vector<std::int32_t> ids(n);
    std::iota(ids.begin(), ids.end(), 0);
    const int keep = std::max(1, static_cast<int>(n * fraction));
    std::uint64_t state = seed;
    for (int i = 0; i < keep; ++i) {
        const std::size_t j = i + splitmix64(state) % (ids.size() - i);
        std::swap(ids[i], ids[j]);
    }
    ids.resize(keep);
    std::sort(ids.begin(), ids.end());
    return ids;
}

Artifacts build_artifacts(const LineFamily& fam) {
    const Geometry& g = *fam.geom;
    const int q = g.q();
    Artifacts a;
    a.g = &g;
    a.fam = &fam;

    a.point_counts.assign(g.num_points(), 0);
    a.black = Bitset(g.num_points());
    for (int p = 0; p < g.num_points(); ++p) {
        a.point_counts[p] =
            static_cast<std::int32_t>(Bitset::and_count(fam.members, g.line_bitset_of_point(p)));
        if (a.point_counts[p] == q * q) a.black.set(p);
    }

    const long long w = static_cast<long long>(q) * (q + 1) / 2;
    a.plane_totals.assign(g.num_planes(), 0);
    a.plane_kind.assign(g.num_planes(), kPlaneOther);
    a.pencil_counts.assign(g.num_planes(), {});
    a.plane_black.assign(g.num_planes(), 0);
    a.pole.assign(g.num_planes(), -1);
    for (int pl = 0; pl < g.num_planes(); ++pl) {
        a.plane_totals[pl] =
            static_cast<std::int32_t>(Bitset::and_count(fam.members, g.line_bitset_of_plane(pl)));
        if (a.plane_totals[pl] == q * q)
            a.plane_kind[pl] = kPlaneTangent;
        else if (a.plane_totals[pl] == w)
            a.plane_kind[pl] = kPlaneSecant;
        a.plane_black[pl] =
            static_cast<std::int32_t>(Bitset::and_count(a.black, g.point_bitset_of_plane(pl)));
        const auto pts = g.points_of_plane(pl);
        auto& counts = a.pencil_counts[pl];
        counts.resize(pts.size());
        int zero_at = -1, zeros = 0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            int c = 0;
            for (const int l : g.pencil(pts[i], pl)) c += fam.contains(l);
            counts[i] = c;
            if (c == 0) {
                ++zeros;
                zero_at = pts[i];
            }
        }
        if (zeros == 1) a.pole[pl] = zero_at;
        if (a.plane_kind[pl] == kPlaneSecant && a.lambda_ref < 0) a.lambda_ref = a.plane_black[pl];
        if (a.plane_kind[pl] == kPlaneTangent && a.mu_ref < 0) a.mu_ref = a.plane_black[pl];
    }

    a.line_black.assign(g.num_lines(), 0);
    a.black_lines_through.assign(g.num_points(), {});
    for (int l = 0; l < g.num_lines(); ++l) {
        int b = 0;
        for (const int pt : g.points_of_line(l)) b += a.black.test(pt);
        a.line_black[l] = b;
        if (b == q + 1) {
            a.black_lines.push_back(l);
            for (const int pt : g.points_of_line(l)) a.black_lines_through[pt].push_back(l);
        }
    }

    if (q <= 9) {
        a.scope_planes.resize(g.num_planes());
        std::iota(a.scope_planes.begin(), a.scope_planes.end(), 0);
        a.scope_lines.resize(g.num_lines());
        std::iota(a.scope_lines.begin(), a.scope_lines.end(), 0);
    } else {
        a.sampled = true;
        a.scope_planes = sample_ids(g.num_planes(), 0.10, 0xA0D17);
        a.scope_lines = sample_ids(g.num_lines(), 0.10, 0xA0D18);
    }
    return a;
}

using CheckFn = std::function<CheckOutcome(const Artifacts&)>;

struct RegisteredCheck {
    std::string name;
    CheckFn fn;
};

// ---- the registry ------------------------------------------------------

std::string eqs(long long lhs, long long rhs) {
    return std::to_string(lhs) + " != " + std::to_string(rhs);
}

CheckOutcome check_lem_plane_point(const Artifacts& a) {
    CheckOutcome out;
    for (const int l : a.scope_lines) {
        ++out.cases;
        int tangent = 0;
        for (const int pl : a.g->planes_of_line(l)) tangent += a.plane_kind[pl] == kPlaneTangent;
        if (tangent != a.line_black[l])
            out.fail({{'L', l}, {'N', tangent}, {'N', a.line_black[l]}},
                     "tangent planes through line vs black points on line: " +
                         eqs(tangent, a.line_black[l]));
    }
    return out;
}

CheckOutcome check_both_plane_types(const Artifacts& a) {
    CheckOutcome out;
    out.cases = 1;
    bool tangent = false, secant = false;
    for (const auto k : a.plane_kind) {
        tangent |= k == kPlaneTangent;
        secant |= k == kPlaneSecant;
    }
    if (!tangent || !secant)
        out.fail({}, std::string("missing ") + (tangent ? "secant" : "tangent") + " planes");
    return out;
}

CheckOutcome check_cor_plane(const Artifacts& a) {
    CheckOutcome out;
    for (const int pl : a.scope_planes) {
        if (a.plane_kind[pl] != kPlaneTangent) continue;
        for (const int l : a.g->lines_of_plane(pl)) {
            ++out.cases;
            if (a.line_black[l] == 0)
                out.fail({{'E', pl}, {'L', l}},
                         "line of a tangent plane carries no black point");
        }
    }
    return out;
}

CheckOutcome check_cor_plane_1(const Artifacts& a) {
    CheckOutcome out;
    for (std::size_t p = a.black.find_first(); p < a.black.size(); p = a.black.find_next(p)) {
        ++out.cases;
        bool in_tangent = false;
        for (const int pl : a.g->planes_of_point(static_cast<int>(p)))
            if (a.plane_kind[pl] == kPlaneTangent) {
                in_tangent = true;
                break;
            }
        if (!in_tangent)
            out.fail({{'P', static_cast<long long>(p)}}, "black point lies in no tangent plane");
    }
    return out;
}

CheckOutcome check_size_a_pi(const Artifacts& a) {
    CheckOutcome out;
    const int q = a.g->q();
    for (const int pl : a.scope_planes) {
        if (a.plane_kind[pl] != kPlaneTangent) continue;
        ++out.cases;
        int zeros = 0, qs = 0;
        for (const int c : a.pencil_counts[pl]) {
            zeros += c == 0;
            qs += c == q;
        }
        if (zeros != 1 || qs != q * q + q)
            out.fail({{'E', pl}, {'N', zeros}, {'N', qs}},
                     "tangent plane point split (0-count, q-count): (" + std::to_string(zeros) +
                         "," + std::to_string(qs) + ") != (1," + std::to_string(q * q + q) + ")");
    }
    return out;
}

CheckOutcome check_cor_pole(const Artifacts& a) {
    CheckOutcome out;
    const int q = a.g->q();
    for (const int pl : a.scope_planes) {
        if (a.plane_kind[pl] != kPlaneTangent) continue;
        ++out.cases;
        const int pole = a.pole[pl];
        if (pole < 0) {
            out.fail({{'E', pl}}, "tangent plane has no unique pole");
            continue;
        }
        int non_members = 0;
        for (const int l : a.g->lines_of_plane(pl)) {
            if (a.fam->contains(l)) continue;
            ++non_members;
            const auto lp = a.g->points_of_line(l);
            if (!std::binary_search(lp.begin(), lp.end(), pole))
                out.fail({{'E', pl}, {'L', l}, {'P', pole}},
                         "non-member line of tangent plane misses the pole");
        }
        if (non_members != q + 1)
            out.fail({{'E', pl}, {'N', non_members}},
                     "non-member lines in tangent plane: " + eqs(non_members, q + 1));
    }
    return out;
}

CheckOutcome check_points_l(const Artifacts& a) {
    CheckOutcome out;
    const int q = a.g->q();
    for (const int pl : a.scope_planes) {
        if (a.plane_kind[pl] != kPlaneSecant) continue;
        const auto pts = a.g->points_of_plane(pl);
        // per-point class under the in-plane counts
        for (const int l : a.g->lines_of_plane(pl)) {
            ++out.cases;
            int na = 0, nb = 0, nc = 0;
            for (const int pt : a.g->points_of_line(l)) {
                const auto it = std::lower_bound(pts.begin(), pts.end(), pt);
                const int c = a.pencil_counts[pl][it - pts.begin()];
                na += c == (q - 1) / 2;
                nb += c == (q + 1) / 2;
                nc += c == q;
            }
            const bool member = a.fam->contains(l);
            bool admissible;
            if (member)
                admissible = (na == (q - 1) / 2 && nb == (q - 1) / 2 && nc == 2) ||
                             (na == 0 && nb == q && nc == 1);
            else
                admissible = (na == (q + 1) / 2 && nb == (q + 1) / 2 && nc == 0) ||
                             (na == q && nb == 0 && nc == 1);
            if (!admissible)
                out.fail({{'E', pl}, {'L', l}, {'N', na}, {'N', nb}, {'N', nc}},
                         std::string(member ? "member" : "non-member") + " line triple (" +
                             std::to_string(na) + "," + std::to_string(nb) + "," +
                             std::to_string(nc) + ") not admissible");
        }
    }
    return out;
}

CheckOutcome check_cor_arc(const Artifacts& a) {
    CheckOutcome out;
    const int q = a.g->q();
    for (const int pl : a.scope_planes) {
        if (a.plane_kind[pl] != kPlaneSecant) continue;
        const auto pts = a.g->points_of_plane(pl);
        for (const int l : a.g->lines_of_plane(pl)) {
            ++out.cases;
            int on_gamma = 0;
            for (const int pt : a.g->points_of_line(l)) {
                const auto it = std::lower_bound(pts.begin(), pts.end(), pt);
                on_gamma += a.pencil_counts[pl][it - pts.begin()] == q;
            }
            if (on_gamma > 2)
                out.fail({{'E', pl}, {'L', l}, {'N', on_gamma}},
                         "line meets gamma in " + std::to_string(on_gamma) + " >= 3 points");
            else if (on_gamma == 2 && !a.fam->contains(l))
                out.fail({{'E', pl}, {'L', l}},
                         "secant line of the arc gamma is not a member");
        }
    }
    return out;
}

CheckOutcome check_recall(const Artifacts& a) {
    CheckOutcome out;
    const int q = a.g->q();
    for (const int pl : a.scope_planes) {
        if (a.plane_kind[pl] != kPlaneSecant) continue;
        ++out.cases;
        long long k = 0, alpha = 0;
        for (const int c : a.pencil_counts[pl]) {
            k += c == q;
            alpha += c == (q - 1) / 2;
        }
        if (alpha != k * (k - 1) / 2)
            out.fail({{'E', pl}, {'N', k}, {'N', alpha}},
                     "|alpha| vs k(k-1)/2 at k=" + std::to_string(k) + ": " +
                         eqs(alpha, k * (k - 1) / 2));
    }
    return out;
}

CheckOutcome check_lem_oval(const Artifacts& a) {
    CheckOutcome out;
    const int q = a.g->q();
    for (const int pl : a.scope_planes) {
        if (a.plane_kind[pl] != kPlaneSecant) continue;
        ++out.cases;
        const auto pts = a.g->points_of_plane(pl);
        long long k = 0;
        for (const int c : a.pencil_counts[pl]) k += c == q;
        if (k != q + 1) {
            out.fail({{'E', pl}, {'N', k}}, "|gamma| = " + std::to_string(k) + " != " +
                                                std::to_string(q + 1));
            continue;
        }
        for (const int l : a.g->lines_of_plane(pl)) {
            int on_gamma = 0;
            for (const int pt : a.g->points_of_line(l)) {
                const auto it = std::lower_bound(pts.begin(), pts.end(), pt);
                on_gamma += a.pencil_counts[pl][it - pts.begin()] == q;
            }
            if (a.fam->contains(l) != (on_gamma == 2))
                out.fail({{'E', pl}, {'L', l}, {'N', on_gamma}},
                         "membership does not match two-point meeting with gamma");
        }
    }
    return out;
}

CheckOutcome check_size_alpha_beta(const Artifacts& a) {
    CheckOutcome out;
    const int q = a.g->q();
    for (const int pl : a.scope_planes) {
        if (a.plane_kind[pl] != kPlaneSecant) continue;
        ++out.cases;
        long long alpha = 0, beta = 0;
        for (const int c : a.pencil_counts[pl]) {
            alpha += c == (q - 1) / 2;
            beta += c == (q + 1) / 2;
        }
        if (alpha != static_cast<long long>(q) * (q + 1) / 2 ||
            beta != static_cast<long long>(q) * (q - 1) / 2)
            out.fail({{'E', pl}, {'N', alpha}, {'N', beta}},
                     "(|alpha|,|beta|) = (" + std::to_string(alpha) + "," + std::to_string(beta) +
                         ") != (" + std::to_string(static_cast<long long>(q) * (q + 1) / 2) + "," +
                         std::to_string(static_cast<long long>(q) * (q - 1) / 2) + ")");
    }
    return out;
}

CheckOutcome check_lem_black(const Artifacts& a) {
    CheckOutcome out;
    const int q = a.g->q();
    for (const int pl : a.scope_planes) {
        if (a.plane_kind[pl] != kPlaneSecant) continue;
        ++out.cases;
        const auto pts = a.g->points_of_plane(pl);
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (a.black.test(pts[i]) && a.pencil_counts[pl][i] != q)
                out.fail({{'E', pl}, {'P', pts[i]}},
                         "black point of a secant plane is outside gamma");
    }
    return out;
}

CheckOutcome check_coro_lem_black(const Artifacts& a) {
    CheckOutcome out;
    const int q = a.g->q();
    for (const int pl : a.scope_planes) {
        if (a.plane_kind[pl] != kPlaneSecant) continue;
        const auto pts = a.g->points_of_plane(pl);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (!a.black.test(pts[i])) continue;
            ++out.cases;
            if (a.pencil_counts[pl][i] != q)
                out.fail({{'E', pl}, {'P', pts[i]}, {'N', a.pencil_counts[pl][i]}},
                         "in-plane member lines through a black point: " +
                             eqs(a.pencil_counts[pl][i], q));
        }
    }
    return out;
}

CheckOutcome check_lem_black_secant(const Artifacts& a) {
    CheckOutcome out;
    for (const int pl : a.scope_planes) {
        if (a.plane_kind[pl] != kPlaneSecant) continue;
        ++out.cases;
        if (a.plane_black[pl] != a.lambda_ref)
            out.fail({{'E', pl}, {'N', a.plane_black[pl]}, {'N', a.lambda_ref}},
                     "black points per secant plane: " + eqs(a.plane_black[pl], a.lambda_ref));
    }
    return out;
}

CheckOutcome check_eq_4(const Artifacts& a) {
    CheckOutcome out;
    out.cases = 1;
    const long long q = a.g->q();
    const long long s = static_cast<long long>(a.fam->size());
    const long long lhs = a.lambda_ref * (q * q - q) / 2 + (q * q * q * q + q * q * q + q * q + q) / 2;
    if (a.lambda_ref < 0 || lhs != s)
        out.fail({{'N', a.lambda_ref}, {'N', lhs}, {'N', s}},
                 "lambda(q^2-q)/2 + (q^4+q^3+q^2+q)/2 vs |S|: " + eqs(lhs, s));
    return out;
}

CheckOutcome check_lem_black_tangent(const Artifacts& a) {
    CheckOutcome out;
    for (const int pl : a.scope_planes) {
        if (a.plane_kind[pl] != kPlaneTangent) continue;
        ++out.cases;
        if (a.plane_black[pl] != a.mu_ref)
            out.fail({{'E', pl}, {'N', a.plane_black[pl]}, {'N', a.mu_ref}},
                     "black points per tangent plane: " + eqs(a.plane_black[pl], a.mu_ref));
    }
    return out;
}

CheckOutcome check_eq_5(const Artifacts& a) {
    CheckOutcome out;
    out.cases = 1;
    const long long q = a.g->q();
    const long long s = static_cast<long long>(a.fam->size());
    const long long lhs = a.mu_ref * (q * q - q) / 2 + (q * q * q * q + 2 * q * q + q) / 2;
    if (a.mu_ref < 0 || lhs != s)
        out.fail({{'N', a.mu_ref}, {'N', lhs}, {'N', s}},
                 "mu(q^2-q)/2 + (q^4+2q^2+q)/2 vs |S|: " + eqs(lhs, s));
    return out;
}

CheckOutcome check_eq_6(const Artifacts& a) {
    CheckOutcome out;
    out.cases = 1;
    const long long q = a.g->q();
    if (a.mu_ref != a.lambda_ref + q)
        out.fail({{'N', a.lambda_ref}, {'N', a.mu_ref}},
                 "mu vs lambda + q: " + eqs(a.mu_ref, a.lambda_ref + q));
    return out;
}

CheckOutcome check_0_1_2_q1(const Artifacts& a) {
    CheckOutcome out;
    const int q = a.g->q();
    for (const int l : a.scope_lines) {
        ++out.cases;
        const int b = a.line_black[l];
        if (b != 0 && b != 1 && b != 2 && b != q + 1)
            out.fail({{'L', l}, {'N', b}},
                     "black points on line: " + std::to_string(b) + " not in {0,1,2," +
                         std::to_string(q + 1) + "}");
        else if (b == 2 && !a.fam->contains(l))
            out.fail({{'L', l}}, "line with exactly two black points is not a member");
    }
    return out;
}

CheckOutcome check_lem_size_h(const Artifacts& a) {
    CheckOutcome out;
    out.cases = 1;
    const long long q = a.g->q();
    const long long h = static_cast<long long>(a.black.count());
    if (h != a.lambda_ref * (q + 1) || h > (q + 1) * (q + 1))
        out.fail({{'N', h}, {'N', a.lambda_ref}},
                 "|H| vs lambda(q+1): " + eqs(h, a.lambda_ref * (q + 1)));
    return out;
}

// H_pi blocks every line of a tangent plane; minimum size q+1 with
// equality exactly for a line.
CheckOutcome check_bose_burton_plane(const Artifacts& a) {
    CheckOutcome out;
    const int q = a.g->q();
    for (const int pl : a.scope_planes) {
        if (a.plane_kind[pl] != kPlaneTangent) continue;
        ++out.cases;
        for (const int l : a.g->lines_of_plane(pl)) {
            int hits = 0;
            for (const int pt : a.g->points_of_line(l)) hits += a.black.test(pt);
            if (hits == 0) {
                out.fail({{'E', pl}, {'L', l}}, "a line of the plane misses H_pi");
                break;
            }
        }
        const int h_pi = a.plane_black[pl];
        if (h_pi < q + 1)
            out.fail({{'E', pl}, {'N', h_pi}},
                     "|H_pi| = " + std::to_string(h_pi) + " below the blocking bound " +
                         std::to_string(q + 1));
        if (h_pi == q + 1) {
            bool is_line = false;
            for (const int bl : a.black_lines)
                if (a.g->line_bitset_of_plane(pl).test(bl)) {
                    is_line = true;
                    break;
                }
            if (!is_line)
                out.fail({{'E', pl}},
                         "|H_pi| = q+1 but H_pi is not a line");
        }
    }
    return out;
}

CheckOutcome check_exis_line(const Artifacts& a) {
    CheckOutcome out;
    const int q = a.g->q();
    for (const int pl : a.scope_planes) {
        if (a.plane_kind[pl] != kPlaneTangent) continue;
        ++out.cases;
        bool found = false;
        for (const int l : a.g->lines_of_plane(pl))
            if (a.line_black[l] == q + 1) {
                found = true;
                break;
            }
        if (!found) out.fail({{'E', pl}}, "H_pi contains no full line");
    }
    return out;
}

CheckOutcome check_to_use(const Artifacts& a) {
    CheckOutcome out;
    const int q = a.g->q();
    for (const int pl : a.scope_planes) {
        if (a.plane_kind[pl] != kPlaneTangent) continue;
        ++out.cases;
        std::vector<int> in_plane;
        for (const int bl : a.black_lines)
            if (a.g->line_bitset_of_plane(pl).test(bl)) in_plane.push_back(bl);
        const int h_pi = a.plane_black[pl];
        const bool one_line = in_plane.size() == 1 && h_pi == q + 1;
        const bool two_lines = in_plane.size() == 2 && h_pi == 2 * q + 1 &&
                               a.g->lines_meet(in_plane[0], in_plane[1]);
        if (!one_line && !two_lines)
            out.fail({{'E', pl}, {'N', static_cast<long long>(in_plane.size())}, {'N', h_pi}},
                     "H_pi (" + std::to_string(h_pi) + " points, " +
                         std::to_string(in_plane.size()) +
                         " full lines) is neither a line nor two intersecting lines");
    }
    return out;
}

CheckOutcome check_pole_inters(const Artifacts& a) {
    CheckOutcome out;
    for (const int pl : a.scope_planes) {
        if (a.plane_kind[pl] != kPlaneTangent) continue;
        std::vector<int> in_plane;
        for (const int bl : a.black_lines)
            if (a.g->line_bitset_of_plane(pl).test(bl)) in_plane.push_back(bl);
        if (in_plane.size() != 2) continue;
        ++out.cases;
        const int x = a.g->meet_point(in_plane[0], in_plane[1]);
        if (x < 0 || a.pole[pl] != x)
            out.fail({{'E', pl}, {'P', a.pole[pl]}, {'P', x}},
                     "pole vs black-line intersection: " + eqs(a.pole[pl], x));
    }
    return out;
}

CheckOutcome check_black_line_3(const Artifacts& a) {
    CheckOutcome out;
    for (std::size_t p = a.black.find_first(); p < a.black.size(); p = a.black.find_next(p)) {
        ++out.cases;
        const auto n = a.black_lines_through[p].size();
        if (n > 2)
            out.fail({{'P', static_cast<long long>(p)}, {'N', static_cast<long long>(n)}},
                     "black lines through a black point: " + std::to_string(n) + " > 2");
    }
    return out;
}

CheckOutcome check_black_line_2(const Artifacts& a) {
    CheckOutcome out;
    for (std::size_t p = a.black.find_first(); p < a.black.size(); p = a.black.find_next(p)) {
        ++out.cases;
        const auto n = a.black_lines_through[p].size();
        if (n != 2)
            out.fail({{'P', static_cast<long long>(p)}, {'N', static_cast<long long>(n)}},
                     "black lines through a black point: " + eqs(static_cast<long long>(n), 2));
    }
    return out;
}

CheckOutcome check_gq_axioms(const Artifacts& a) {
    CheckOutcome out;
    const int q = a.g->q();
    // (Q1)
    for (const int l : a.black_lines) {
        ++out.cases;
        int on = 0;
        for (const int pt : a.g->points_of_line(l)) on += a.black.test(pt);
        if (on != q + 1)
            out.fail({{'L', l}, {'N', on}}, "(Q1) points of a black line in H: " + eqs(on, q + 1));
    }
    for (std::size_t p = a.black.find_first(); p < a.black.size(); p = a.black.find_next(p)) {
        ++out.cases;
        if (a.black_lines_through[p].size() != 2)
            out.fail({{'P', static_cast<long long>(p)},
                      {'N', static_cast<long long>(a.black_lines_through[p].size())}},
                     "(Q1) black lines through point: " +
                         eqs(static_cast<long long>(a.black_lines_through[p].size()), 2));
    }
    // (Q2)
    for (std::size_t i = 0; i < a.black_lines.size(); ++i)
        for (std::size_t j = i + 1; j < a.black_lines.size(); ++j) {
            ++out.cases;
            const auto pa = a.g->points_of_line(a.black_lines[i]);
            const auto pb = a.g->points_of_line(a.black_lines[j]);
            std::size_t ia = 0, ib = 0, common = 0;
            while (ia < pa.size() && ib < pb.size()) {
                if (pa[ia] < pb[ib]) ++ia;
                else if (pb[ib] < pa[ia]) ++ib;
                else { ++common; ++ia; ++ib; }
            }
            if (common > 1)
                out.fail({{'L', a.black_lines[i]}, {'L', a.black_lines[j]}},
                         "(Q2) two black lines share " + std::to_string(common) + " points");
        }
    // (Q3)
    for (std::size_t p = a.black.find_first(); p < a.black.size(); p = a.black.find_next(p)) {
        for (const int l : a.black_lines) {
            const auto lp = a.g->points_of_line(l);
            if (std::binary_search(lp.begin(), lp.end(), static_cast<std::int32_t>(p))) continue;
            ++out.cases;
            int hits = 0;
            for (const int m : a.black_lines_through[p]) hits += a.g->lines_meet(m, l);
            if (hits != 1)
                out.fail({{'P', static_cast<long long>(p)}, {'L', l}, {'N', hits}},
                         "(Q3) connecting black lines: " + eqs(hits, 1));
        }
    }
    return out;
}

CheckOutcome check_two_rulings(const Artifacts& a) {
    CheckOutcome out;
    const long long q = a.g->q();
    const int nb = static_cast<int>(a.black_lines.size());
    out.cases = 1;
    if (nb != 2 * (q + 1)) {
        out.fail({{'N', nb}}, "black line count: " + eqs(nb, 2 * (q + 1)));
        return out;
    }
    std::vector<int> color(nb, -1);
    std::vector<int> stack{0};
    color[0] = 0;
    while (!stack.empty()) {
        const int i = stack.back();
        stack.pop_back();
        for (int j = 0; j < nb; ++j) {
            if (j == i || !a.g->lines_meet(a.black_lines[i], a.black_lines[j])) continue;
            if (color[j] < 0) {
                color[j] = 1 - color[i];
                stack.push_back(j);
            } else if (color[j] == color[i]) {
                out.fail({{'L', a.black_lines[i]}, {'L', a.black_lines[j]}},
                         "meet graph of the black lines is not bipartite");
                return out;
            }
        }
    }
    long long n0 = 0;
    for (int i = 0; i < nb; ++i) {
        if (color[i] < 0) {
            out.fail({{'L', a.black_lines[i]}}, "black line disconnected from the rulings");
            return out;
        }
        n0 += color[i] == 0;
    }
    if (n0 != q + 1) {
        out.fail({{'N', n0}, {'N', nb - n0}}, "ruling sizes: " + eqs(n0, q + 1));
        return out;
    }
    for (int i = 0; i < nb; ++i)
        for (int j = i + 1; j < nb; ++j) {
            ++out.cases;
            const bool meet = a.g->lines_meet(a.black_lines[i], a.black_lines[j]);
            if (meet == (color[i] == color[j]))
                out.fail({{'L', a.black_lines[i]}, {'L', a.black_lines[j]}},
                         meet ? "lines meet inside one ruling" : "lines skew across rulings");
        }
    return out;
}

CheckOutcome check_hyperbolic(const Artifacts& a) {
    CheckOutcome out;
    out.cases = 1;
    const auto basis = gram_solution_space(*a.g, a.black);
    if (basis.size() != 1) {
        out.fail({{'N', static_cast<long long>(basis.size())}},
                 "dimension of the form space on H: " +
                     eqs(static_cast<long long>(basis.size()), 1));
        return out;
    }
    Mat4 gram{};
    gram[0] = basis[0][0];
    gram[5] = basis[0][1];
    gram[10] = basis[0][2];
    gram[15] = basis[0][3];
    const int off[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    for (int k = 0; k < 6; ++k) {
        gram[off[k][0] * 4 + off[k][1]] = basis[0][4 + k];
        gram[off[k][1] * 4 + off[k][0]] = basis[0][4 + k];
    }
    try {
        const Quadric quad(*a.g, gram);
        if (!(quad.point_set() == a.black))
            out.fail({}, "recovered quadric's point set differs from H");
    } catch (const Error& e) {
        out.fail({}, std::string("recovered form is not a hyperbolic quadric: ") + e.what());
    }
    return out;
}

CheckOutcome check_final_lemma(const Artifacts& a) {
    CheckOutcome out;
    out.cases = 1;
    const auto basis = gram_solution_space(*a.g, a.black);
    if (basis.size() != 1) {
        out.fail({}, "no quadric recovered from H");
        return out;
    }
    Mat4 gram{};
    gram[0] = basis[0][0];
    gram[5] = basis[0][1];
    gram[10] = basis[0][2];
    gram[15] = basis[0][3];
    const int off[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    for (int k = 0; k < 6; ++k) {
        gram[off[k][0] * 4 + off[k][1]] = basis[0][4 + k];
        gram[off[k][1] * 4 + off[k][0]] = basis[0][4 + k];
    }
    try {
        const Quadric quad(*a.g, gram);
        const Bitset secants = quad.secant_line_set();
        if (!(secants == a.fam->members)) {
            long long first = -1;
            for (int l = 0; l < a.g->num_lines(); ++l)
                if (secants.test(l) != a.fam->members.test(l)) {
                    first = l;
                    break;
                }
            out.fail({{'L', first}},
                     "family differs from the recovered quadric's secant lines");
        }
    } catch (const Error& e) {
        out.fail({}, std::string("no quadric recovered from H: ") + e.what());
    }
    return out;
}

CheckOutcome check_size_s_h(const Artifacts& a) {
    CheckOutcome out;
    out.cases = 1;
    const long long q = a.g->q();
    const long long s = static_cast<long long>(a.fam->size());
    const long long h = static_cast<long long>(a.black.count());
    if (s != q * q * (q + 1) * (q + 1) / 2)
        out.fail({{'N', s}}, "|S| vs q^2(q+1)^2/2: " + eqs(s, q * q * (q + 1) * (q + 1) / 2));
    else if (h != (q + 1) * (q + 1))
        out.fail({{'N', h}}, "|H| vs (q+1)^2: " + eqs(h, (q + 1) * (q + 1)));
    return out;
}

const std::vector<RegisteredCheck>& registry() {
    static const std::vector<RegisteredCheck> r = {
        {"lem-plane-point", check_lem_plane_point},
        {"both-plane-types-exist", check_both_plane_types},
        {"cor-plane", check_cor_plane},
        {"cor-plane-1", check_cor_plane_1},
        {"size-a_pi", check_size_a_pi},
        {"cor-pole", check_cor_pole},
        {"points-l", check_points_l},
        {"cor-arc", check_cor_arc},
        {"recall", check_recall},
        {"lem-oval", check_lem_oval},
        {"size-alpha-beta", check_size_alpha_beta},
        {"lem-black", check_lem_black},
        {"coro-lem-black", check_coro_lem_black},
        {"lem-black-secant", check_lem_black_secant},
        {"eq-4", check_eq_4},
        {"lem-black-tangent", check_lem_black_tangent},
        {"eq-5", check_eq_5},
        {"eq-6", check_eq_6},
        {"0-1-2-q+1", check_0_1_2_q1},
        {"lem-size-H", check_lem_size_h},
        {"bose-burton-plane", check_bose_burton_plane},
        {"exis-line", check_exis_line},
        {"to-use", check_to_use},
        {"pole-inters", check_pole_inters},
        {"black-line-3", check_black_line_3},
        {"black-line-2", check_black_line_2},
        {"GQ-axioms", check_gq_axioms},
        {"two-rulings", check_two_rulings},
        {"hyperbolic", check_hyperbolic},
        {"final-lemma", check_final_lemma},
        {"size-S-H", check_size_s_h},
    };
    return r;
}

std::string render_wit(const Geometry& g, const Wit& w) {
    std::ostringstream out;
    switch (w.tag) {
        case 'P': {
            if (w.v < 0 || w.v >= g.num_points()) {
                out << "point " << w.v;
                break;
            }
            const auto& c = g.point(static_cast<int>(w.v));
            out << "point " << w.v << " (" << c[0] << ':' << c[1] << ':' << c[2] << ':' << c[3]
                << ")";
            break;
        }
        case 'E': {
            if (w.v < 0 || w.v >= g.num_planes()) {
                out << "plane " << w.v;
                break;
            }
            const auto& c = g.plane(static_cast<int>(w.v));
            out << "plane " << w.v << " [" << c[0] << ':' << c[1] << ':' << c[2] << ':' << c[3]
                << "]";
            break;
        }
        case 'L': {
            if (w.v < 0 || w.v >= g.num_lines()) {
                out << "line " << w.v;
                break;
            }
            out << "line " << w.v << " {";
            const auto pts = g.points_of_line(static_cast<int>(w.v));
            for (std::size_t i = 0; i < pts.size(); ++i) out << (i ? "," : "") << pts[i];
            out << "}";
            break;
        }
        default: out << "value " << w.v;
    }
    return out.str();
}

} // namespace

const std::vector<std::string>& audit_registry_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& c : registry()) n.push_back(c.name);
        return n;
    }();
    return names;
}

std::vector<LineFamily> default_audit_families(const Geometry& geom, int seeds) {
    const Quadric std_quad = Quadric::standard(geom);
    std::vector<LineFamily> fams;
    fams.emplace_back(geom, std_quad.secant_line_set());
    for (int s = 1; s <= seeds; ++s) {
        const Mat4 m = random_invertible_matrix(geom.field(), static_cast<std::uint64_t>(s));
        const Quadric quad(geom, conjugate_gram(geom.field(), std_quad.gram(), m));
        fams.emplace_back(geom, quad.secant_line_set());
    }
    return fams;
}

std::vector<LemmaCheck> run_audit(const std::vector<LineFamily>& families) {
    if (families.empty() || families.front().geom == nullptr)
        throw GeometryMissing("run_audit requires at least one family on a built geometry");
    const Geometry& g = *families.front().geom;
    for (const auto& f : families)
        if (f.geom != families.front().geom)
            throw GeometryMissing("all audited families must share one geometry");

    std::vector<LemmaCheck> results;
    results.reserve(registry().size());
    std::vector<Artifacts> arts;
    arts.reserve(families.size());
    for (const auto& f : families) arts.push_back(build_artifacts(f));

    std::ostringstream scope;
    scope << "q=" << g.q() << " families=" << families.size()
          << (arts.front().sampled ? " sampled=10%" : " exhaustive");

    for (const auto& reg : registry()) {
        LemmaCheck check;
        check.name = reg.name;
        check.scope = scope.str();
        check.pass = true;
        check.sampled = arts.front().sampled;
        for (std::size_t fi = 0; fi < arts.size(); ++fi) {
            const CheckOutcome out = reg.fn(arts[fi]);
            check.cases_checked += out.cases;
            if (!out.pass && check.pass) {
                check.pass = false;
                for (const auto& w : out.witness) check.counterexample.push_back(w.v);
                check.detail = "family #" + std::to_string(fi) + ": " + out.detail;
            }
        }
        results.push_back(std::move(check));
    }
    return results;
}

std::string replay(const LemmaCheck& check, const LineFamily& fam) {
    if (check.pass) throw NotAFailure("replay requires a failed check");
    const auto& reg = registry();
    const auto it = std::find_if(reg.begin(), reg.end(),
                                 [&](const RegisteredCheck& c) { return c.name == check.name; });
    if (it == reg.end()) throw Error("unknown check name: " + check.name);

    const Artifacts art = build_artifacts(fam);
    const CheckOutcome out = it->fn(art);
    if (out.pass)
        throw NotAFailure("check '" + check.name + "' passes on the supplied family");

    std::ostringstream trace;
    trace << "check " << check.name << " FAILED after " << out.cases << " cases\n";
    for (const auto& w : out.witness) trace << "  witness: " << render_wit(*fam.geom, w) << '\n';
    trace << "  violated: " << out.detail << '\n';
    return trace.str();
}

std::string audit_json(const std::vector<LemmaCheck>& checks) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks) {
        nlohmann::json j;
        j["name"] = c.name;
        j["scope"] = c.scope;
        j["status"] = c.pass ? "pass" : "fail";
        j["counterexample"] = c.counterexample;
        j["detail"] = c.detail;
        j["cases_checked"] = c.cases_checked;
        j["sampled"] = c.sampled;
        arr.push_back(std::move(j));
    }
    return arr.dump(2);
}

bool audit_all_pass(const std::vector<LemmaCheck>& checks) {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

} // namespace pg3
