#include "pg3/space.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace pg3 {

namespace {

// Rank of a canonical point among all canonical points in lexicographic
// order. Canonical tuples start with a (possibly empty) run of zeros
// followed by a 1, so the rank decomposes by leading position.
int canonical_rank(const Coords4& c, int q) {
    if (c[0] == 1) return 1 + q + q * q + (c[1] * q + c[2]) * q + c[3];
    if (c[1] == 1) return 1 + q + c[2] * q + c[3];
    if (c[2] == 1) return 1 + c[3];
    return 0; // (0,0,0,1)
}

} // namespace

Coords4 Geometry::normalize(const Coords4& coords) const {
    int lead = -1;
    for (int i = 0; i < 4; ++i)
        if (coords[i] != 0) {
            lead = i;
            break;
        }
    if (lead < 0) throw Error("cannot normalize the zero tuple");
    const int s = field_.inv(coords[lead]);
    Coords4 out{};
    for (int i = 0; i < 4; ++i) out[i] = field_.mul(coords[i], s);
    return out;
}

int Geometry::point_id(const Coords4& coords) const {
    return canonical_rank(normalize(coords), q());
}

int Geometry::plane_id(const Coords4& dual_coords) const {
    return canonical_rank(normalize(dual_coords), q());
}

bool Geometry::point_on_plane(int point_id, int plane_id) const {
    const Coords4& x = points_[point_id];
    const Coords4& h = planes_[plane_id];
    int s = 0;
    for (int i = 0; i < 4; ++i) s = field_.add(s, field_.mul(x[i], h[i]));
    return s == 0;
}

std::uint64_t Geometry::pluecker_key(const std::array<std::int16_t, 6>& pl) const {
    std::uint64_t k = 0;
    for (int i = 0; i < 6; ++i) k = k * static_cast<std::uint64_t>(q()) + pl[i];
    return k;
}

std::array<std::int16_t, 6> Geometry::pluecker_of_pair(const Coords4& a, const Coords4& b) const {
    const auto& f = field_;
    auto minor2 = [&](int i, int j) { return f.sub(f.mul(a[i], b[j]), f.mul(a[j], b[i])); };
    std::array<int, 6> raw{minor2(0, 1), minor2(0, 2), minor2(0, 3),
                           minor2(1, 2), minor2(1, 3), minor2(2, 3)};
    int lead = -1;
    for (int i = 0; i < 6; ++i)
        if (raw[i] != 0) {
            lead = i;
            break;
        }
    if (lead < 0) throw IdenticalPoints("points span no line");
    const int s = f.inv(raw[lead]);
    std::array<std::int16_t, 6> out{};
    for (int i = 0; i < 6; ++i) out[i] = static_cast<std::int16_t>(f.mul(raw[i], s));
    return out;
}

Geometry::Geometry(const Field& field) : field_(field) {
    const int q = field_.q();
    if (q % 2 == 0) throw EvenCharacteristic("geometry requires odd q");
    if (q > Field::kGeometryCap)
        throw FieldTooLarge("q = " + std::to_string(q) + " exceeds the geometry cap of " +
                            std::to_string(Field::kGeometryCap));

    // Points, in canonical lexicographic order (planes share the list:
    // a plane's dual coords normalize exactly like a point's).
    const int expect_points = q * q * q + q * q + q + 1;
    points_.reserve(expect_points);
    points_.push_back({0, 0, 0, 1});
    for (int t = 0; t < q; ++t) points_.push_back({0, 0, 1, t});
    for (int s = 0; s < q; ++s)
        for (int t = 0; t < q; ++t) points_.push_back({0, 1, s, t});
    for (int r = 0; r < q; ++r)
        for (int s = 0; s < q; ++s)
            for (int t = 0; t < q; ++t) points_.push_back({1, r, s, t});
    planes_ = points_;

    const int npts = num_points();
    const int star = star_size();
    const int ls = line_size();

    // Point-plane incidence.
    point_planes_.assign(static_cast<std::size_t>(npts) * star, -1);
    plane_points_.assign(static_cast<std::size_t>(npts) * star, -1);
    plane_point_bits_.assign(npts, Bitset(npts));
    {
        std::vector<int> ppn(npts, 0), pln(npts, 0);
        for (int pl = 0; pl < npts; ++pl)
            for (int pt = 0; pt < npts; ++pt)
                if (point_on_plane(pt, pl)) {
                    plane_points_[static_cast<std::size_t>(pl) * star + pln[pl]++] = pt;
                    point_planes_[static_cast<std::size_t>(pt) * star + ppn[pt]++] = pl;
                    plane_point_bits_[pl].set(pt);
                }
        for (int i = 0; i < npts; ++i)
            if (ppn[i] != star || pln[i] != star)
                throw InternalInvariantBroken("point/plane star size mismatch");
    }

    // Lines. Scanning ordered pairs (a, b), a < b, discovers each line first
    // at (min point, second point), which is exactly the lexicographic order
    // of the sorted point tuples, so discovery order assigns the final ids.
    const int expect_lines = (q * q + 1) * (q * q + q + 1);
    line_points_.reserve(static_cast<std::size_t>(expect_lines) * ls);
    line_pluecker_.reserve(expect_lines);
    pluecker_to_line_.reserve(static_cast<std::size_t>(expect_lines) * 2);
    std::vector<std::int32_t> span_pts(ls);
    for (int a = 0; a < npts; ++a) {
        for (int b = a + 1; b < npts; ++b) {
            const auto pl = pluecker_of_pair(points_[a], points_[b]);
            const std::uint64_t key = pluecker_key(pl);
            if (pluecker_to_line_.find(key) != pluecker_to_line_.end()) continue;
            // span: b plus a + t*b for every t
            const Coords4& pa = points_[a];
            const Coords4& pb = points_[b];
            span_pts[0] = b;
            for (int t = 0; t < q; ++t) {
                Coords4 c{};
                for (int i = 0; i < 4; ++i)
                    c[i] = field_.add(pa[i], field_.mul(t, pb[i]));
                span_pts[1 + t] = point_id(c);
            }
            std::sort(span_pts.begin(), span_pts.end());
            const auto new_id = static_cast<std::int32_t>(line_pluecker_.size());
            pluecker_to_line_.emplace(key, new_id);
            line_pluecker_.push_back(pl);
            line_points_.insert(line_points_.end(), span_pts.begin(), span_pts.end());
        }
    }
    num_lines_ = static_cast<int>(line_pluecker_.size());
    if (num_lines_ != expect_lines)
        throw InternalInvariantBroken("line count mismatch: " + std::to_string(num_lines_));

    // Derived incidence: lines of each point, planes of each line, lines of
    // each plane. All lists come out sorted because line ids are visited in
    // ascending order.
    point_lines_.assign(static_cast<std::size_t>(npts) * star, -1);
    point_line_bits_.assign(npts, Bitset(num_lines_));
    line_planes_.assign(static_cast<std::size_t>(num_lines_) * ls, -1);
    plane_lines_.assign(static_cast<std::size_t>(npts) * star, -1);
    plane_line_bits_.assign(npts, Bitset(num_lines_));
    {
        std::vector<int> plcount(npts, 0), plncount(npts, 0);
        for (int l = 0; l < num_lines_; ++l) {
            const auto pts = points_of_line(l);
            for (const int pt : pts) {
                point_lines_[static_cast<std::size_t>(pt) * star + plcount[pt]++] = l;
                point_line_bits_[pt].set(l);
            }
            // planes through l = planes through its first two points
            const auto pa = planes_of_point(pts[0]);
            const auto pb = planes_of_point(pts[1]);
            int ia = 0, ib = 0, found = 0;
            while (ia < star && ib < star) {
                if (pa[ia] < pb[ib])
                    ++ia;
                else if (pb[ib] < pa[ia])
                    ++ib;
                else {
                    const int pl = pa[ia];
                    if (found == ls) throw InternalInvariantBroken("too many planes through line");
                    line_planes_[static_cast<std::size_t>(l) * ls + found++] = pl;
                    plane_lines_[static_cast<std::size_t>(pl) * star + plncount[pl]++] = l;
                    plane_line_bits_[pl].set(l);
                    ++ia;
                    ++ib;
                }
            }
            if (found != ls) throw InternalInvariantBroken("plane count through line mismatch");
        }
        for (int i = 0; i < npts; ++i)
            if (plcount[i] != star || plncount[i] != star)
                throw InternalInvariantBroken("line star size mismatch");
    }

    // Pencil index: for each plane, per point position, the q+1 lines of the
    // plane through that point.
    pencils_.assign(static_cast<std::size_t>(npts) * star * ls, -1);
    {
        std::vector<int> fill(static_cast<std::size_t>(npts) * star, 0);
        for (int pl = 0; pl < npts; ++pl) {
            const auto lines = lines_of_plane(pl);
            for (const int l : lines) {
                for (const int pt : points_of_line(l)) {
                    const int pos = point_pos_in_plane(pt, pl);
                    const std::size_t slot = static_cast<std::size_t>(pl) * star + pos;
                    pencils_[slot * ls + fill[slot]++] = l;
                }
            }
        }
        for (const int f : fill)
            if (f != 0 && f != ls) throw InternalInvariantBroken("pencil size mismatch");
    }

    self_check();
}

std::span<const std::int32_t> Geometry::points_of_line(int line_id) const {
    return {line_points_.data() + static_cast<std::size_t>(line_id) * line_size(),
            static_cast<std::size_t>(line_size())};
}

std::span<const std::int32_t> Geometry::planes_of_line(int line_id) const {
    return {line_planes_.data() + static_cast<std::size_t>(line_id) * line_size(),
            static_cast<std::size_t>(line_size())};
}

std::array<int, 6> Geometry::pluecker(int line_id) const {
    std::array<int, 6> out{};
    for (int i = 0; i < 6; ++i) out[i] = line_pluecker_[line_id][i];
    return out;
}

std::span<const std::int32_t> Geometry::lines_of_point(int point_id) const {
    return {point_lines_.data() + static_cast<std::size_t>(point_id) * star_size(),
            static_cast<std::size_t>(star_size())};
}

std::span<const std::int32_t> Geometry::planes_of_point(int point_id) const {
    return {point_planes_.data() + static_cast<std::size_t>(point_id) * star_size(),
            static_cast<std::size_t>(star_size())};
}

std::span<const std::int32_t> Geometry::lines_of_plane(int plane_id) const {
    return {plane_lines_.data() + static_cast<std::size_t>(plane_id) * star_size(),
            static_cast<std::size_t>(star_size())};
}

std::span<const std::int32_t> Geometry::points_of_plane(int plane_id) const {
    return {plane_points_.data() + static_cast<std::size_t>(plane_id) * star_size(),
            static_cast<std::size_t>(star_size())};
}

int Geometry::line_through(int point_a, int point_b) const {
    if (point_a == point_b) throw IdenticalPoints("line_through requires two distinct points");
    const auto pl = pluecker_of_pair(points_[point_a], points_[point_b]);
    const auto it = pluecker_to_line_.find(pluecker_key(pl));
    if (it == pluecker_to_line_.end())
        throw InternalInvariantBroken("line lookup failed");
    return it->second;
}

int Geometry::point_pos_in_plane(int point_id, int plane_id) const {
    const auto pts = points_of_plane(plane_id);
    const auto it = std::lower_bound(pts.begin(), pts.end(), point_id);
    if (it == pts.end() || *it != point_id) return -1;
    return static_cast<int>(it - pts.begin());
}

std::span<const std::int32_t> Geometry::pencil(int point_id, int plane_id) const {
    const int pos = point_pos_in_plane(point_id, plane_id);
    if (pos < 0)
        throw PointNotOnPlane("point " + std::to_string(point_id) + " is not on plane " +
                              std::to_string(plane_id));
    const std::size_t slot =
        (static_cast<std::size_t>(plane_id) * star_size() + pos) * line_size();
    return {pencils_.data() + slot, static_cast<std::size_t>(line_size())};
}

bool Geometry::lines_meet(int line_a, int line_b) const {
    if (line_a == line_b) return true;
    return meet_point(line_a, line_b) >= 0;
}

int Geometry::meet_point(int line_a, int line_b) const {
    const auto pa = points_of_line(line_a);
    const auto pb = points_of_line(line_b);
    std::size_t ia = 0, ib = 0;
    while (ia < pa.size() && ib < pb.size()) {
        if (pa[ia] < pb[ib])
            ++ia;
        else if (pb[ib] < pa[ia])
            ++ib;
        else
            return pa[ia];
    }
    return -1;
}

std::uint64_t Geometry::table_digest() const {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint64_t v) {
        for (int k = 0; k < 8; ++k) {
            h ^= (v >> (8 * k)) & 0xff;
            h *= 1099511628211ULL;
        }
    };
    mix(static_cast<std::uint64_t>(field_.key()));
    for (const auto& c : points_)
        for (int v : c) mix(static_cast<std::uint64_t>(v));
    for (const auto v : line_points_) mix(static_cast<std::uint64_t>(v));
    for (const auto v : line_planes_) mix(static_cast<std::uint64_t>(v));
    for (const auto v : plane_lines_) mix(static_cast<std::uint64_t>(v));
    for (const auto v : pencils_) mix(static_cast<std::uint64_t>(v));
    return h;
}

void Geometry::self_check() const {
    const int q = field_.q();
    const long long npts = q * q * q + q * q + q + 1;
    if (num_points() != npts || num_planes() != npts)
        throw InternalInvariantBroken("point/plane count self-check failed");
    if (num_lines_ != (q * q + 1) * (q * q + q + 1))
        throw InternalInvariantBroken("line count self-check failed");
    // lex order of the sorted point tuples == id order
    for (int l = 1; l < num_lines_; ++l) {
        const auto prev = points_of_line(l - 1);
        const auto cur = points_of_line(l);
        if (!std::lexicographical_compare(prev.begin(), prev.end(), cur.begin(), cur.end()))
            throw InternalInvariantBroken("line id order self-check failed");
    }
}

void Geometry::write_point_cache(std::ostream& out) const {
    out << "pg3-geom v1 p=" << field_.p() << " e=" << field_.e() << " poly=";
    const auto& m = field_.modulus_poly();
    for (std::size_t i = 0; i < m.size(); ++i) out << (i ? "," : "") << m[i];
    out << '\n';
    for (const auto& c : points_) out << c[0] << ' ' << c[1] << ' ' << c[2] << ' ' << c[3] << '\n';
}

void Geometry::verify_point_cache(std::istream& in) const {
    std::string header;
    if (!std::getline(in, header)) throw FormatError("geometry cache: missing header");
    std::ostringstream expect;
    expect << "pg3-geom v1 p=" << field_.p() << " e=" << field_.e() << " poly=";
    const auto& m = field_.modulus_poly();
    for (std::size_t i = 0; i < m.size(); ++i) expect << (i ? "," : "") << m[i];
    if (header != expect.str())
        throw FormatError("geometry cache: header mismatch, got '" + header + "'");
    for (int i = 0; i < num_points(); ++i) {
        Coords4 c{};
        for (int k = 0; k < 4; ++k)
            if (!(in >> c[k])) throw FormatError("geometry cache: truncated point table");
        if (c != points_[i])
            throw FormatError("geometry cache: point " + std::to_string(i) + " differs");
    }
    int extra = 0;
    if (in >> extra) throw FormatError("geometry cache: trailing data");
}

} // namespace pg3
