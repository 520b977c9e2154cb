#include "pg3/quadric.hpp"

#include <string>

#include "pg3/parallel.hpp"

namespace pg3 {

const char* line_class_name(LineClass c) {
    switch (c) {
        case LineClass::External: return "external";
        case LineClass::Tangent: return "tangent";
        case LineClass::Secant: return "secant";
        case LineClass::Generator: return "generator";
    }
    return "?";
}

Mat4 standard_hyperbolic_gram(const Field& f) {
    Mat4 g{};
    g[0 * 4 + 3] = 1;
    g[3 * 4 + 0] = 1;
    g[1 * 4 + 2] = f.neg(1);
    g[2 * 4 + 1] = f.neg(1);
    return g;
}

Mat4 conjugate_gram(const Field& f, const Mat4& gram, const Mat4& m) {
    return mat4_mul(f, mat4_transpose(m), mat4_mul(f, gram, m));
}

int Quadric::eval(const Coords4& x) const {
    const Field& f = geom_->field();
    int s = 0;
    for (int i = 0; i < 4; ++i) {
        int row = 0;
        for (int j = 0; j < 4; ++j) row = f.add(row, f.mul(gram_[i * 4 + j], x[j]));
        s = f.add(s, f.mul(x[i], row));
    }
    return s;
}

Quadric::Quadric(const Geometry& geom, const Mat4& gram)
    : geom_(&geom), gram_(gram), point_set_(geom.num_points()) {
    const Field& f = geom.field();
    if (!mat4_symmetric(gram_)) throw Error("quadric gram matrix must be symmetric");
    if (!mat4_invertible(f, gram_)) throw DegenerateForm("gram matrix is singular");

    const int n = geom.num_points();
    for (int p = 0; p < n; ++p)
        if (eval(geom.point(p)) == 0) point_set_.set(p);

    const int q = f.q();
    const std::size_t expect = static_cast<std::size_t>(q + 1) * (q + 1);
    if (point_set_.count() != expect)
        throw NotHyperbolic("zero set has " + std::to_string(point_set_.count()) +
                            " points, expected " + std::to_string(expect));

    for (int l = 0; l < geom.num_lines(); ++l) {
        int on = 0;
        for (const int pt : geom.points_of_line(l)) on += point_set_.test(pt);
        if (on == q + 1) generators_.push_back(l);
    }
    if (static_cast<int>(generators_.size()) != 2 * (q + 1))
        throw InternalInvariantBroken("generator count " + std::to_string(generators_.size()));
    // each quadric point lies on exactly two generators
    std::vector<int> gens_through(n, 0);
    for (const int g : generators_)
        for (const int pt : geom.points_of_line(g)) ++gens_through[pt];
    for (int p = 0; p < n; ++p) {
        const int expect_g = point_set_.test(p) ? 2 : 0;
        if (gens_through[p] != expect_g)
            throw InternalInvariantBroken("generator incidence broken at point " +
                                          std::to_string(p));
    }
}

Quadric Quadric::standard(const Geometry& geom) {
    return Quadric(geom, standard_hyperbolic_gram(geom.field()));
}

LineClass Quadric::classify_line(int line_id) const {
    int on = 0;
    for (const int pt : geom_->points_of_line(line_id)) on += point_set_.test(pt);
    switch (on) {
        case 0: return LineClass::External;
        case 1: return LineClass::Tangent;
        case 2: return LineClass::Secant;
        default:
            if (on == geom_->q() + 1) return LineClass::Generator;
            throw InternalInvariantBroken("line " + std::to_string(line_id) + " meets quadric in " +
                                          std::to_string(on) + " points");
    }
}

Bitset Quadric::secant_line_set() const {
    Bitset out(geom_->num_lines());
    for (int l = 0; l < geom_->num_lines(); ++l)
        if (classify_line(l) == LineClass::Secant) out.set(l);
    return out;
}

Census Quadric::census(int threads) const {
    const int n = geom_->num_lines();
    std::vector<std::uint8_t> cls(n);
    parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t l = lo; l < hi; ++l)
            cls[l] = static_cast<std::uint8_t>(classify_line(static_cast<int>(l)));
    });
    Census c;
    for (int l = 0; l < n; ++l) {
        switch (static_cast<LineClass>(cls[l])) {
            case LineClass::External: ++c.external; break;
            case LineClass::Tangent: ++c.tangent; break;
            case LineClass::Secant: ++c.secant; break;
            case LineClass::Generator: ++c.generator; break;
        }
    }
    return c;
}

DistributionTable Quadric::distribution_table(int threads) const {
    const Geometry& g = *geom_;
    const int q = g.q();
    const Bitset secants = secant_line_set();

    DistributionTable t;
    t.point_secants.assign(g.num_points(), 0);
    t.plane_secants.assign(g.num_planes(), 0);
    t.pencil_secants.assign(g.num_planes(), {});

    parallel_for(static_cast<std::size_t>(g.num_points()), threads,
                 [&](std::size_t lo, std::size_t hi) {
                     for (std::size_t p = lo; p < hi; ++p)
                         t.point_secants[p] = static_cast<int>(
                             Bitset::and_count(secants, g.line_bitset_of_point(static_cast<int>(p))));
                 });

    parallel_for(static_cast<std::size_t>(g.num_planes()), threads,
                 [&](std::size_t lo, std::size_t hi) {
                     for (std::size_t pl = lo; pl < hi; ++pl) {
                         const int pli = static_cast<int>(pl);
                         t.plane_secants[pl] = static_cast<int>(
                             Bitset::and_count(secants, g.line_bitset_of_plane(pli)));
                         const auto pts = g.points_of_plane(pli);
                         auto& counts = t.pencil_secants[pl];
                         counts.resize(pts.size());
                         for (std::size_t i = 0; i < pts.size(); ++i) {
                             int c = 0;
                             for (const int l : g.pencil(pts[i], pli)) c += secants.test(l);
                             counts[i] = c;
                         }
                     }
                 });

    // the known secant distributions; violating them means the tables above
    // are wrong, not the input
    const int on_count = q * q;
    const int off_count = q * (q + 1) / 2;
    for (int p = 0; p < g.num_points(); ++p) {
        const int expect = point_set_.test(p) ? on_count : off_count;
        if (t.point_secants[p] != expect)
            throw InternalInvariantBroken("secant distribution broken at point " +
                                          std::to_string(p));
    }
    for (int pl = 0; pl < g.num_planes(); ++pl) {
        const int total = t.plane_secants[pl];
        if (total != on_count && total != off_count)
            throw InternalInvariantBroken("secant distribution broken at plane " +
                                          std::to_string(pl));
        for (const int c : t.pencil_secants[pl]) {
            const bool ok = total == on_count
                                ? (c == 0 || c == q)
                                : (c == (q - 1) / 2 || c == (q + 1) / 2 || c == q);
            if (!ok)
                throw InternalInvariantBroken("pencil distribution broken in plane " +
                                              std::to_string(pl));
        }
    }
    return t;
}

} // namespace pg3
