#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pg3/bitset.hpp"
#include "pg3/family.hpp"
#include "pg3/linalg.hpp"
#include "pg3/space.hpp"

namespace pg3 {

/// A falsified condition, with the smallest witness ids in scan order.
/// `kind` names the condition (P1, P2a, ... or a structural check name);
/// `witness` holds ids/counts whose layout depends on the kind; `detail`
/// states the violated (in)equality with both sides evaluated.
struct Violation {
    std::string kind;
    std::vector<long long> witness;
    std::string detail;
};

/// Thrown by the per-plane analyses when a structural assertion fails;
/// the pipeline catches it and reports the payload.
class StructureViolation : public Error {
public:
    explicit StructureViolation(Violation v)
        : Error(v.kind + ": " + v.detail), violation(std::move(v)) {}
    Violation violation;
};

template <typename T>
using Checked = std::variant<T, Violation>;

template <typename T>
bool ok(const Checked<T>& r) { return std::holds_alternative<T>(r); }

/// Per-point member-line counts. Black points are the ones on q^2 member
/// lines.
struct PointProfile {
    std::vector<std::int32_t> counts;
    Bitset black;
};

enum class PlaneType : std::uint8_t { Tangent, Secant };

/// Per-plane totals |S_pi| with the tangent/secant classification, plus
/// every pencil count (indexed by the point's position in
/// points_of_plane).
struct PlaneProfile {
    std::vector<std::int32_t> totals;
    std::vector<PlaneType> types;
    std::vector<std::vector<std::int32_t>> pencil_counts;

    int in_plane_count(const Geometry& g, int plane_id, int point_pos) const {
        (void)g;
        return pencil_counts[plane_id][point_pos];
    }
};

/// Property (P1): every point on q(q+1)/2 or q^2 member lines, both
/// values attained.
Checked<PointProfile> check_p1(const LineFamily& fam, int threads = 1);

/// Property (P2)/(P2a)/(P2b): plane totals in {q(q+1)/2, q^2}; pencils of
/// tangent planes in {0, q}; pencils of secant planes in {(q-1)/2,
/// (q+1)/2, q}. Planes are scanned in id order, each plane's total before
/// its pencils.
Checked<PlaneProfile> check_p2(const LineFamily& fam, int threads = 1);

/// Pole of a tangent plane: the unique point of pi on no line of S_pi.
/// Also asserts the q^2+q other points lie on exactly q in-plane member
/// lines and that the q+1 non-member lines of pi are precisely the pencil
/// of the pole. Throws StructureViolation; throws Error if the plane is
/// not tangent in the profile (caller bug).
int analyze_tangent_plane(const LineFamily& fam, const PlaneProfile& prof, int plane_id);

/// Point classes of a secant plane by in-plane count: alpha (q-1)/2,
/// beta (q+1)/2, gamma q. Asserts gamma is an oval of size q+1 with
/// |alpha| = (q^2+q)/2, |beta| = (q^2-q)/2, and that S_pi is exactly the
/// set of lines meeting gamma twice. Throws like analyze_tangent_plane.
struct SecantPlaneClasses {
    Bitset alpha, beta, gamma; // over global point ids
};
SecantPlaneClasses analyze_secant_plane(const LineFamily& fam, const PlaneProfile& prof,
                                        int plane_id);

/// All per-plane analyses, as one pass over plane ids.
struct PlaneAnalyses {
    std::vector<std::int32_t> pole;            // per plane; -1 for secant planes
    std::vector<SecantPlaneClasses> classes;   // empty bitsets for tangent planes
};
Checked<PlaneAnalyses> analyze_planes(const LineFamily& fam, const PlaneProfile& prof,
                                      int threads = 1);

/// Black-point structure: the set H, the constants lambda and mu, the
/// black lines, and the per-tangent-plane shape of H_pi (a line, or two
/// lines crossing at the pole).
struct BlackStructure {
    long long lambda = 0;
    long long mu = 0;
    Bitset h;
    std::vector<std::int32_t> black_lines;
};
Checked<BlackStructure> black_structure(const LineFamily& fam, const PointProfile& pp,
                                        const PlaneProfile& prof, const PlaneAnalyses& an);

enum class Verdict : std::uint8_t { SecantFamily, HypotheticalFamily, Violation };

const char* verdict_name(Verdict v);
int verdict_exit_code(Verdict v); // 0 / 10 / 20

/// Outcome of the full recognizer.
struct CharaxReport {
    Verdict verdict = Verdict::Violation;
    long long s_size = 0;
    std::optional<long long> lambda, mu, h_size; // set once black structure ran
    std::optional<Violation> violation;          // set for Verdict::Violation

    // SecantFamily payload
    std::optional<Bitset> quadric_points;
    std::vector<std::int32_t> black_lines;
    std::optional<Mat4> recovered_gram;

    // HypotheticalFamily payload: the line formed by the black points
    std::optional<std::int32_t> h_line_id;
};

/// The full pipeline: P1, P2, per-plane analyses, black structure, then
/// either the hypothetical-branch consistency checks or the generalized
/// quadrangle + quadric reconstruction. Short-circuits on the first
/// violation; never throws on family data.
CharaxReport reconstruct(const LineFamily& fam, int threads = 1);

/// Consistency checks of the branch where the black points form a line:
/// exactly one black line carrying all of H, not a member, and
/// |S| = (q^4+q^3+2q^2)/2. Split out so the branch is unit-testable
/// without a genuine input (none is known).
Checked<std::int32_t> hypothetical_branch(const LineFamily& fam, const Bitset& h,
                                          const std::vector<std::int32_t>& black_lines);

/// Solves for all symmetric Gram matrices vanishing on the given points;
/// returns the canonical basis of the 10-dimensional coefficient space
/// solution (g00,g11,g22,g33,g01,g02,g03,g12,g13,g23).
std::vector<std::vector<int>> gram_solution_space(const Geometry& geom, const Bitset& points);

/// JSON report: verdict, lambda, mu, h_size, s_size, witness,
/// recovered_gram (16 integers, row-major).
std::string report_json(const CharaxReport& rep);

/// One-line human-readable summary.
std::string report_text(const CharaxReport& rep);

} // namespace pg3
