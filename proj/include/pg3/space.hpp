#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <unordered_map>
#include <vector>

#include "pg3/bitset.hpp"
#include "pg3/field.hpp"

namespace pg3 {

/// Canonical homogeneous 4-tuple: not all zero, first nonzero coordinate 1.
using Coords4 = std::array<int, 4>;

/// The full incidence structure of PG(3,q): points, lines and planes with
/// dense ids, plus every incidence table the recognizer's counting loops
/// need. Immutable after construction; queries are pure reads and safe to
/// share across threads.
///
/// Id assignment is canonical and therefore identical across runs:
///   - point id = rank of its canonical coords in lexicographic order
///     (coordinates compared by field encoding),
///   - plane id = same ranking applied to the dual coords,
///   - line id = rank of its sorted (q+1)-point-id tuple in lexicographic
///     order.
class Geometry {
public:
    /// build_geometry. Throws FieldTooLarge (q above the geometry cap) and
    /// EvenCharacteristic; runs count self-checks before returning.
    explicit Geometry(const Field& field);

    const Field& field() const { return field_; }
    int q() const { return field_.q(); }

    int num_points() const { return static_cast<int>(points_.size()); }
    int num_lines() const { return num_lines_; }
    int num_planes() const { return static_cast<int>(planes_.size()); }

    /// q+1, the number of points on a line / planes through a line / lines
    /// in a pencil.
    int line_size() const { return q() + 1; }
    /// q^2+q+1, the number of lines (and planes) through a point, and of
    /// points (and lines) in a plane.
    int star_size() const { return q() * q() + q() + 1; }

    const Coords4& point(int point_id) const { return points_[point_id]; }
    const Coords4& plane(int plane_id) const { return planes_[plane_id]; }

    /// Rank of an arbitrary (not necessarily canonical) representative.
    /// Throws on the zero tuple.
    int point_id(const Coords4& coords) const;
    int plane_id(const Coords4& dual_coords) const;

    Coords4 normalize(const Coords4& coords) const;

    bool point_on_plane(int point_id, int plane_id) const;

    std::span<const std::int32_t> points_of_line(int line_id) const;
    std::span<const std::int32_t> planes_of_line(int line_id) const;
    std::array<int, 6> pluecker(int line_id) const;

    std::span<const std::int32_t> lines_of_point(int point_id) const;
    std::span<const std::int32_t> planes_of_point(int point_id) const;
    std::span<const std::int32_t> lines_of_plane(int plane_id) const;
    std::span<const std::int32_t> points_of_plane(int plane_id) const;

    const Bitset& line_bitset_of_point(int point_id) const { return point_line_bits_[point_id]; }
    const Bitset& line_bitset_of_plane(int plane_id) const { return plane_line_bits_[plane_id]; }
    const Bitset& point_bitset_of_plane(int plane_id) const { return plane_point_bits_[plane_id]; }

    /// The unique line through two distinct points. Throws IdenticalPoints.
    int line_through(int point_a, int point_b) const;

    /// The q+1 lines through x inside pi, ascending line ids.
    /// Throws PointNotOnPlane.
    std::span<const std::int32_t> pencil(int point_id, int plane_id) const;

    /// True iff the lines share a point (equal lines count as meeting).
    bool lines_meet(int line_a, int line_b) const;
    /// Common point id of two distinct meeting lines, or -1 if skew.
    int meet_point(int line_a, int line_b) const;

    /// FNV digest over every table; equal digests mean identical id
    /// assignments.
    std::uint64_t table_digest() const;

    /// Geometry cache: "pg3-geom v1" header plus one canonical point per
    /// line, used to pin id assignments in regression fixtures.
    void write_point_cache(std::ostream& out) const;
    /// Throws FormatError if the cache does not match this geometry.
    void verify_point_cache(std::istream& in) const;

private:
    Field field_;
    int num_lines_ = 0;

    std::vector<Coords4> points_;
    std::vector<Coords4> planes_;

    std::vector<std::int32_t> line_points_; // num_lines * (q+1), each sorted
    std::vector<std::int32_t> line_planes_; // num_lines * (q+1), each sorted
    std::vector<std::array<std::int16_t, 6>> line_pluecker_;
    std::unordered_map<std::uint64_t, std::int32_t> pluecker_to_line_;

    std::vector<std::int32_t> point_lines_;  // num_points * (q^2+q+1), sorted
    std::vector<std::int32_t> point_planes_; // num_points * (q^2+q+1), sorted
    std::vector<std::int32_t> plane_lines_;  // num_planes * (q^2+q+1), sorted
    std::vector<std::int32_t> plane_points_; // num_planes * (q^2+q+1), sorted

    std::vector<Bitset> point_line_bits_;
    std::vector<Bitset> plane_line_bits_;
    std::vector<Bitset> plane_point_bits_;

    // pencil lists per plane, indexed by the position of the point in
    // points_of_plane: num_planes * star_size * (q+1) line ids
    std::vector<std::int32_t> pencils_;

    std::uint64_t pluecker_key(const std::array<std::int16_t, 6>& pl) const;
    std::array<std::int16_t, 6> pluecker_of_pair(const Coords4& a, const Coords4& b) const;
    int point_pos_in_plane(int point_id, int plane_id) const;
    void self_check() const;
};

} // namespace pg3
