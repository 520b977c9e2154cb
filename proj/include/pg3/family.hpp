#pragma once

#include <cstdint>
#include <iosfwd>

#include "pg3/bitset.hpp"
#include "pg3/space.hpp"

namespace pg3 {

/// A candidate set S of lines, as a bitset over the line ids of its
/// geometry.
struct LineFamily {
    const Geometry* geom = nullptr;
    Bitset members;

    LineFamily() = default;
    explicit LineFamily(const Geometry& g) : geom(&g), members(g.num_lines()) {}
    LineFamily(const Geometry& g, Bitset m) : geom(&g), members(std::move(m)) {}

    std::size_t size() const { return members.count(); }
    bool contains(int line_id) const { return members.test(line_id); }
};

/// Family file format (text, bit-exact):
///   pg3-family v1 p=<p> e=<e> poly=<c0,...> n=<count>
/// followed by one decimal line id per line, strictly increasing.
/// poly is empty for prime fields.
void write_family(const LineFamily& fam, std::ostream& out);

/// Throws FormatError on malformed headers, field mismatch with geom,
/// duplicate / decreasing / out-of-range ids, or a wrong id count.
LineFamily read_family(const Geometry& geom, std::istream& in);

/// Header fields of a family file, read without a geometry (the perturb
/// command builds its geometry from these).
struct FamilyHeader {
    int p = 0;
    int e = 0;
    std::vector<int> poly;
    long long n = 0;
};
FamilyHeader read_family_header(std::istream& in);

/// Deterministically swaps `swaps` member/non-member pairs: each swap
/// removes one member and adds one non-member, both picked from the
/// current sets by a seeded splitmix64 stream. A single swap changes
/// exactly two ids.
LineFamily perturb_family(const LineFamily& fam, int swaps, std::uint64_t seed);

/// A seeded size-n subset of all line ids (partial Fisher-Yates), for
/// negative tests.
LineFamily random_family(const Geometry& geom, int n, std::uint64_t seed);

} // namespace pg3
