#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "pg3/bitset.hpp"
#include "pg3/linalg.hpp"
#include "pg3/space.hpp"

namespace pg3 {

/// How a line meets a quadric: 0, 1, 2 or q+1 points.
enum class LineClass : std::uint8_t { External, Tangent, Secant, Generator };

const char* line_class_name(LineClass c);

struct Census {
    long long external = 0;
    long long tangent = 0;
    long long secant = 0;
    long long generator = 0;
};

/// Per-point / per-plane / per-pencil secant counts of a quadric, verified
/// against the known distributions at construction.
struct DistributionTable {
    std::vector<int> point_secants;                // per point id
    std::vector<int> plane_secants;                // per plane id
    std::vector<std::vector<int>> pencil_secants;  // per plane, per point pos
};

/// Hyperbolic quadric of PG(3,q), q odd, given by the Gram matrix of its
/// symmetric bilinear form: the quadric is { x : x^T G x = 0 }.
class Quadric {
public:
    /// make_quadric. Throws DegenerateForm if gram is singular and
    /// NotHyperbolic if the zero set does not have (q+1)^2 points
    /// (elliptic quadrics have q^2+1). Gram must be symmetric.
    Quadric(const Geometry& geom, const Mat4& gram);

    /// The quadric x0*x3 - x1*x2 = 0 (Gram doubled, harmless for q odd).
    static Quadric standard(const Geometry& geom);

    const Geometry& geometry() const { return *geom_; }
    const Mat4& gram() const { return gram_; }

    /// x^T G x on an arbitrary representative.
    int eval(const Coords4& x) const;

    bool contains(int point_id) const { return point_set_.test(point_id); }
    const Bitset& point_set() const { return point_set_; }
    const std::vector<std::int32_t>& generator_ids() const { return generators_; }

    LineClass classify_line(int line_id) const;

    /// Bitset of all Secant lines; size q^2 (q+1)^2 / 2.
    Bitset secant_line_set() const;

    Census census(int threads = 1) const;

    DistributionTable distribution_table(int threads = 1) const;

private:
    const Geometry* geom_;
    Mat4 gram_;
    Bitset point_set_;
    std::vector<std::int32_t> generators_;
};

/// Gram matrix of the standard hyperbolic form over f.
Mat4 standard_hyperbolic_gram(const Field& f);

/// M^T G M: the Gram matrix of the quadric pulled back through M.
Mat4 conjugate_gram(const Field& f, const Mat4& gram, const Mat4& m);

} // namespace pg3
