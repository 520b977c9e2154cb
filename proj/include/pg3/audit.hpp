#pragma once

#include <string>
#include <vector>

#include "pg3/family.hpp"
#include "pg3/space.hpp"

namespace pg3 {

/// Result of one registered structural check, run over one or more
/// families on a fixed geometry.
struct LemmaCheck {
    std::string name;
    std::string scope;                      // e.g. "q=3 families=11 exhaustive"
    bool pass = false;
    std::vector<long long> counterexample;  // witness ids, empty on pass
    std::string detail;                     // violated relation, both sides evaluated
    long long cases_checked = 0;
    bool sampled = false;
};

/// Names of every registered check, in registry order.
const std::vector<std::string>& audit_registry_names();

/// Runs every registered check on every family (all families must share
/// one geometry). Exhaustive for q <= 9; for q = 11, 13 the checks
/// quantified over all planes/lines run on a seeded 10% sample and are
/// flagged `sampled`. Throws GeometryMissing when families is empty.
std::vector<LemmaCheck> run_audit(const std::vector<LineFamily>& families);

/// The default audit input: the standard quadric's secant family plus
/// `seeds` projectively transformed copies (transform seeds 1..seeds).
std::vector<LineFamily> default_audit_families(const Geometry& geom, int seeds);

/// Re-runs a failed check on the family and renders a human-readable
/// trace: the check name, the witness objects with coordinates, and the
/// violated relation with both sides evaluated. Throws NotAFailure if the
/// check passed (or if the supplied family does not reproduce the
/// failure).
std::string replay(const LemmaCheck& check, const LineFamily& fam);

/// JSON array of LemmaCheck records.
std::string audit_json(const std::vector<LemmaCheck>& checks);

bool audit_all_pass(const std::vector<LemmaCheck>& checks);

} // namespace pg3
