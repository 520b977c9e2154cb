#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "pg3/audit.hpp"
#include "pg3/charax.hpp"
#include "pg3/family.hpp"
#include "pg3/quadric.hpp"

namespace {

struct FieldArgs {
    std::optional<int> q;
    std::optional<int> p;
    std::optional<int> e;
    bool explicit_pe = false;
};

void add_field_args(CLI::App* cmd, FieldArgs& fa) {
    cmd->add_option("--q", fa.q, "field order q = p^e (odd prime power)");
    cmd->add_option("--p", fa.p, "field characteristic (odd prime)");
    cmd->add_option("--e", fa.e, "field extension degree");
}

// (p, e) from --q or --p/--e; usage errors surface as FormatError -> exit 2
std::pair<int, int> resolve_field(const FieldArgs& fa) {
    if (fa.p || fa.e) {
        if (!fa.p || !fa.e) throw pg3::FormatError("--p and --e must be given together");
        if (fa.q) throw pg3::FormatError("give either --q or --p/--e, not both");
        return {*fa.p, *fa.e};
    }
    if (!fa.q) throw pg3::FormatError("missing --q (or --p/--e)");
    const int q = *fa.q;
    if (q < 3) throw pg3::FormatError("q must be at least 3");
    if (q % 2 == 0) throw pg3::FormatError("q must be odd");
    int p = q;
    for (int d = 3; d * d <= q; d += 2)
        if (q % d == 0) {
            p = d;
            break;
        }
    int e = 0;
    int rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++e;
    }
    if (rest != 1) throw pg3::FormatError("q must be an odd prime power, got " + std::to_string(q));
    return {p, e};
}

pg3::Geometry build_geometry(const FieldArgs& fa, bool announce_time = true) {
    const auto [p, e] = resolve_field(fa);
    const auto t0 = std::chrono::steady_clock::now();
    pg3::Field field(p, e);
    pg3::Geometry geom(field);
    const auto t1 = std::chrono::steady_clock::now();
    if (announce_time) {
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
        std::cerr << "built PG(3," << field.q() << ") in " << ms << " ms\n";
    }
    return geom;
}

pg3::LineFamily load_family(const pg3::Geometry& geom, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw pg3::FormatError("cannot open family file: " + path);
    return pg3::read_family(geom, in);
}

int cmd_info(const FieldArgs& fa) {
    pg3::Geometry geom = build_geometry(fa);
    if (fa.p)
        std::cout << "q=" << geom.q() << " points=" << geom.num_points() << " lines="
                  << geom.num_lines() << " planes=" << geom.num_planes() << '\n';
    else
        std::cout << "points=" << geom.num_points() << " lines=" << geom.num_lines()
                  << " planes=" << geom.num_planes() << '\n';
    return 0;
}

int cmd_quadric(const FieldArgs& fa, const std::vector<int>& gram_entries,
                const std::string& emit_family, bool emit_census, int threads) {
    pg3::Geometry geom = build_geometry(fa);
    std::optional<pg3::Quadric> quad;
    if (!gram_entries.empty()) {
        if (gram_entries.size() != 16)
            throw pg3::FormatError("--gram needs 16 integers, got " +
                                   std::to_string(gram_entries.size()));
        pg3::Mat4 gram{};
        for (int i = 0; i < 16; ++i) {
            const int v = gram_entries[i];
            if (v < 0 || v >= geom.q())
                throw pg3::FormatError("--gram entries must be in [0,q)");
            gram[i] = v;
        }
        quad.emplace(geom, gram);
    } else {
        quad.emplace(pg3::Quadric::standard(geom));
    }

    if (!emit_family.empty()) {
        std::ofstream out(emit_family);
        if (!out) throw pg3::FormatError("cannot write family file: " + emit_family);
        const pg3::LineFamily fam(geom, quad->secant_line_set());
        pg3::write_family(fam, out);
    }
    if (emit_census) {
        const pg3::Census c = quad->census(threads);
        std::cout << "external=" << c.external << " tangent=" << c.tangent << " secant="
                  << c.secant << " generator=" << c.generator << '\n';
    }
    return 0;
}

int cmd_check(const FieldArgs& fa, const std::string& family_path, const std::string& report_path,
              bool json, int threads) {
    pg3::Geometry geom = build_geometry(fa);
    const pg3::LineFamily fam = load_family(geom, family_path);
    const pg3::CharaxReport rep = pg3::reconstruct(fam, threads);
    if (json)
        std::cout << pg3::report_json(rep) << '\n';
    else
        std::cout << pg3::report_text(rep) << '\n';
    if (!report_path.empty()) {
        std::ofstream out(report_path);
        if (!out) throw pg3::FormatError("cannot write report file: " + report_path);
        out << pg3::report_json(rep) << '\n';
    }
    return pg3::verdict_exit_code(rep.verdict);
}

int cmd_audit(const FieldArgs& fa, int seeds, const std::string& json_path) {
    pg3::Geometry geom = build_geometry(fa);
    const auto families = pg3::default_audit_families(geom, seeds);
    const auto checks = pg3::run_audit(families);
    for (const auto& c : checks) {
        std::cout << (c.pass ? "[pass] " : "[FAIL] ") << c.name << " cases=" << c.cases_checked;
        if (!c.pass) std::cout << " detail: " << c.detail;
        std::cout << '\n';
    }
    const bool all = pg3::audit_all_pass(checks);
    std::cout << (all ? "audit: all checks passed" : "audit: FAILURES") << '\n';
    if (!json_path.empty()) {
        std::ofstream out(json_path);
        if (!out) throw pg3::FormatError("cannot write json file: " + json_path);
        out << pg3::audit_json(checks) << '\n';
    }
    return all ? 0 : 20;
}

int cmd_perturb(const std::string& family_path, int swaps, std::uint64_t seed,
                const std::string& out_path) {
    std::ifstream header_in(family_path);
    if (!header_in) throw pg3::FormatError("cannot open family file: " + family_path);
    const pg3::FamilyHeader h = pg3::read_family_header(header_in);
    header_in.close();

    pg3::Field field(h.p, h.e);
    if (field.modulus_poly() != h.poly)
        throw pg3::FormatError("family header: poly does not match the canonical modulus");
    pg3::Geometry geom(field);

    const pg3::LineFamily fam = load_family(geom, family_path);
    const pg3::LineFamily out = pg3::perturb_family(fam, swaps, seed);
    std::ofstream os(out_path);
    if (!os) throw pg3::FormatError("cannot write family file: " + out_path);
    pg3::write_family(out, os);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pg3: hyperbolic-quadric secant-line families in PG(3,q), q odd"};
    app.require_subcommand(1);

    FieldArgs info_fa;
    auto* info = app.add_subcommand("info", "print point/line/plane counts");
    add_field_args(info, info_fa);

    FieldArgs quad_fa;
    std::vector<int> gram_entries;
    std::string emit_family;
    bool emit_census = false;
    int quad_threads = 1;
    auto* quad = app.add_subcommand("quadric", "construct a hyperbolic quadric");
    add_field_args(quad, quad_fa);
    quad->add_option("--gram", gram_entries, "16 Gram matrix entries, row-major")->expected(16);
    quad->add_option("--emit-family", emit_family, "write the secant family to this path");
    quad->add_flag("--emit-census", emit_census, "print the line-class census");
    quad->add_option("--threads", quad_threads, "worker threads");

    FieldArgs check_fa;
    std::string check_family, check_report;
    bool check_json = false;
    int check_threads = 1;
    auto* check = app.add_subcommand("check", "recognize a line family");
    add_field_args(check, check_fa);
    check->add_option("--family", check_family, "family file to check")->required();
    check->add_option("--report", check_report, "write the JSON report to this path");
    check->add_flag("--json", check_json, "print JSON instead of text");
    check->add_option("--threads", check_threads, "worker threads");

    FieldArgs audit_fa;
    int audit_seeds = 10;
    std::string audit_json_path;
    auto* audit = app.add_subcommand("audit", "run the structural check registry");
    add_field_args(audit, audit_fa);
    audit->add_option("--seeds", audit_seeds, "number of transformed quadrics (default 10)");
    audit->add_option("--json", audit_json_path, "write the JSON check records to this path");

    std::string pert_family, pert_out;
    int pert_swaps = 1;
    std::uint64_t pert_seed = 1;
    auto* pert = app.add_subcommand("perturb", "swap member/non-member line pairs");
    pert->add_option("--family", pert_family, "family file to perturb")->required();
    pert->add_option("--swaps", pert_swaps, "number of swaps");
    pert->add_option("--seed", pert_seed, "rng seed");
    pert->add_option("--out", pert_out, "output family file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (*info) return cmd_info(info_fa);
        if (*quad) return cmd_quadric(quad_fa, gram_entries, emit_family, emit_census, quad_threads);
        if (*check) return cmd_check(check_fa, check_family, check_report, check_json, check_threads);
        if (*audit) return cmd_audit(audit_fa, audit_seeds, audit_json_path);
        if (*pert) return cmd_perturb(pert_family, pert_swaps, pert_seed, pert_out);
    } catch (const pg3::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
