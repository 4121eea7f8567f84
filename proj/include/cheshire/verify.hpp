#pragma once

#include <string>
#include <vector>

#include "cheshire/weak.hpp"

namespace cheshire {

/// A documented, deliberate disagreement between the engine and a published
/// value. Shipped as data (data/errata.json, embedded verbatim at build time)
/// so the verifier can tell "disagreement, documented" from "implementation bug".
struct Erratum {
    std::string id;
    std::string published_claim;
    std::string engine_value;
    std::string justification;
};

const std::vector<Erratum>& builtin_errata();
const std::string& errata_json_text();

enum class CheckStatus { pass, fail, erratum_documented, convention_unreachable };

std::string to_string(CheckStatus s);

struct Check {
    std::string id;
    std::string description;
    std::string expected;  // published claim, rendered
    std::string actual;    // engine values, rendered
    CheckStatus status = CheckStatus::fail;
};

struct VerificationManifest {
    Convention convention = Convention::effective_hermitian;
    bool allow_convention_gaps = false;
    std::vector<Check> checks;

    int count(CheckStatus s) const;
    const Check& check(const std::string& id) const;
    /// 0 only when nothing failed and (under a gap-free run) nothing was
    /// convention-unreachable.
    int exit_code() const;
};

/// The result-equation identifiers the manifest must cover, exactly once each
/// (the two definitional displays in the covered range carry no values and are
/// excluded).
const std::vector<std::string>& covered_result_equations();

/// Runs the states, observables and weak machinery plus the contradiction
/// check, and compares every covered result against its expected value with
/// exact arithmetic. Errata ids from the shipped list are reported distinctly.
VerificationManifest run_verification(Convention convention, bool allow_convention_gaps = false);

}  // namespace cheshire
