#include "pg3/family.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "pg3/errors.hpp"

namespace pg3 {

namespace {

std::string poly_string(const std::vector<int>& poly) {
    std::string s;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(poly[i]);
    }
    return s;
}

// "k=v" -> v, or error naming the field
std::string take_kv(const std::string& token, const std::string& key) {
    const std::string prefix = key + "=";
    if (token.rfind(prefix, 0) != 0)
        throw FormatError("family header: expected field '" + key + "', got '" + token + "'");
    return token.substr(prefix.size());
}

long long parse_int(const std::string& s, const std::string& what) {
    if (s.empty()) throw FormatError("family header: empty value for '" + what + "'");
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception&) {
        throw FormatError("family header: bad integer in '" + what + "': '" + s + "'");
    }
    if (pos != s.size())
        throw FormatError("family header: bad integer in '" + what + "': '" + s + "'");
    return v;
}

std::vector<int> parse_poly(const std::string& s) {
    std::vector<int> out;
    if (s.empty()) return out;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ','))
        out.push_back(static_cast<int>(parse_int(part, "poly")));
    return out;
}

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

void write_family(const LineFamily& fam, std::ostream& out) {
    const Field& f = fam.geom->field();
    out << "pg3-family v1 p=" << f.p() << " e=" << f.e() << " poly=" << poly_string(f.modulus_poly())
        << " n=" << fam.size() << '\n';
    for (std::size_t l = fam.members.find_first(); l < fam.members.size();
         l = fam.members.find_next(l))
        out << l << '\n';
}

FamilyHeader read_family_header(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw FormatError("family file: missing header line");
    std::stringstream ss(line);
    std::vector<std::string> tok;
    std::string t;
    while (ss >> t) tok.push_back(t);
    if (tok.size() != 6)
        throw FormatError("family header: expected 6 tokens, got " + std::to_string(tok.size()));
    if (tok[0] != "pg3-family")
        throw FormatError("family header: bad magic '" + tok[0] + "'");
    if (tok[1] != "v1") throw FormatError("family header: unsupported version '" + tok[1] + "'");
    FamilyHeader h;
    h.p = static_cast<int>(parse_int(take_kv(tok[2], "p"), "p"));
    h.e = static_cast<int>(parse_int(take_kv(tok[3], "e"), "e"));
    h.poly = parse_poly(take_kv(tok[4], "poly"));
    h.n = parse_int(take_kv(tok[5], "n"), "n");
    if (h.n < 0) throw FormatError("family header: negative count");
    return h;
}

LineFamily read_family(const Geometry& geom, std::istream& in) {
    const FamilyHeader h = read_family_header(in);
    const Field& f = geom.field();
    if (h.p != f.p())
        throw FormatError("family header: p=" + std::to_string(h.p) + " does not match geometry p=" +
                          std::to_string(f.p()));
    if (h.e != f.e())
        throw FormatError("family header: e=" + std::to_string(h.e) + " does not match geometry e=" +
                          std::to_string(f.e()));
    if (h.poly != f.modulus_poly())
        throw FormatError("family header: poly=" + poly_string(h.poly) +
                          " does not match geometry poly=" + poly_string(f.modulus_poly()));

    LineFamily fam(geom);
    long long prev = -1;
    long long read_count = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue; // blank lines carry nothing

        const long long id = parse_int(line, "line id");
        if (id <= prev)
            throw FormatError("family body: ids must be strictly increasing, got " +
                              std::to_string(id) + " after " + std::to_string(prev));
        if (id < 0 || id >= geom.num_lines())
            throw FormatError("family body: line id " + std::to_string(id) + " out of range [0," +
                              std::to_string(geom.num_lines()) + ")");
        fam.members.set(static_cast<std::size_t>(id));
        prev = id;
        ++read_count;
    }
    if (read_count != h.n)
        throw FormatError("family body: header says n=" + std::to_string(h.n) + " but found " +
                          std::to_string(read_count) + " ids");
    return fam;
}

LineFamily perturb_family(const LineFamily& fam, int swaps, std::uint64_t seed) {
    std::vector<std::int32_t> members;
    std::vector<std::int32_t> others;
    const int n = fam.geom->num_lines();
    members.reserve(fam.size());
    for (int l = 0; l < n; ++l)
        (fam.contains(l) ? members : others).push_back(l);

    std::uint64_t state = seed;
    for (int s = 0; s < swaps; ++s) {
        if (members.empty() || others.empty()) break;
        // pick the outgoing member first so it cannot be re-added by the
        // same swap
        const std::size_t mi = splitmix64(state) % members.size();
        const std::size_t oi = splitmix64(state) % others.size();
        std::swap(members[mi], others[oi]);
    }

    LineFamily out(*fam.geom);
    for (const int l : members) out.members.set(l);
    return out;
}

LineFamily random_family(const Geometry& geom, int n, std::uint64_t seed) {
    std::vector<std::int32_t> ids(geom.num_lines());
    std::iota(ids.begin(), ids.end(), 0);
    std::uint64_t state = seed;
    for (int i = 0; i < n; ++i) {
        const std::size_t j = i + splitmix64(state) % (ids.size() - i);
        std::swap(ids[i], ids[j]);
    }
    LineFamily out(geom);
    for (int i = 0; i < n; ++i) out.members.set(ids[i]);
    return out;
}

} // namespace pg3
