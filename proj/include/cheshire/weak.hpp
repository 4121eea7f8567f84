#pragma once

#include <string>
#include <vector>

#include "cheshire/observables.hpp"

namespace cheshire {

/// <post|O|pre> / <post|pre>, exact in Q(sqrt2).
/// Throws std::domain_error when the pre- and post-selected states are
/// orthogonal (the quotient is undefined, never silently divided).
AlgebraicScalar weak_value(const Observable& obs, const NamedState& pre, const NamedState& post);

struct WeakEntry {
    OperatorKind kind;
    ArmSelector arms;
    AlgebraicScalar value;
    bool anomalous = false;
    // Exact eigenvalue range used by the anomaly scan, when available.
    bool spectrum_known = false;
    int spectrum_min = 0;
    int spectrum_max = 0;
    std::string note;
};

struct SumRuleResult {
    std::string id;
    std::string description;
    AlgebraicScalar lhs;
    AlgebraicScalar rhs;
    bool pass = false;
};

struct WeakValueReport {
    std::string preselection;
    std::string postselection;
    Convention convention = Convention::effective_hermitian;
    // Where the anomaly scan took its eigenvalue ranges from. Differs from
    // `convention` only for appendix_oracle, whose action tables carry no
    // spectrum of their own.
    Convention spectrum_convention = Convention::effective_hermitian;
    std::vector<WeakEntry> entries;  // 24 = {pi, sigma_zz, sigma_zx} x canonical selectors
    std::vector<SumRuleResult> sum_rules;
    std::vector<DiscrepancyEntry> discrepancies;  // embedded interpretive context

    const WeakEntry& entry(OperatorKind kind, const ArmSelector& arms) const;
    std::vector<const WeakEntry*> anomalies() const;
};

/// Computes all 24 weak values for one post-selection under one convention,
/// then runs the sum rules and the anomaly scan.
WeakValueReport build_report(PostSelection post, Convention conv);

/// Re-evaluates the sum rules from the report's entries (idempotent).
void sum_rule_check(WeakValueReport& report);

/// Flags entries whose weak value lies outside the exact eigenvalue range of
/// the corresponding matrix-form operator; returns the flagged entries.
std::vector<const WeakEntry*> anomaly_scan(WeakValueReport& report);

}  // namespace cheshire
