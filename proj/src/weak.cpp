#include "cheshire/weak.hpp"

#include <stdexcept>

namespace cheshire {

namespace {

const AlgebraicScalar kOne{1};

SumRuleResult make_rule(std::string id, std::string description, AlgebraicScalar lhs,
                        AlgebraicScalar rhs) {
    bool pass = lhs == rhs;
    return {std::move(id), std::move(description), std::move(lhs), std::move(rhs), pass};
}

}  // namespace

AlgebraicScalar weak_value(const Observable& obs, const NamedState& pre, const NamedState& post) {
    AlgebraicScalar overlap = inner(post.vector, pre.vector);
    if (overlap.is_zero()) {
        throw std::domain_error("weak_value: undefined for orthogonal pre- and post-selection");
    }
    return inner(post.vector, action_on(obs, pre.vector)) / overlap;
}

const WeakEntry& WeakValueReport::entry(OperatorKind kind, const ArmSelector& arms) const {
    for (const WeakEntry& e : entries) {
        if (e.kind == kind && e.arms == arms) return e;
    }
    throw std::out_of_range("WeakValueReport: no entry for " + to_string(kind) + "^" +
                            to_string(arms));
}

std::vector<const WeakEntry*> WeakValueReport::anomalies() const {
    std::vector<const WeakEntry*> out;
    for (const WeakEntry& e : entries)
        if (e.anomalous) out.push_back(&e);
    return out;
}

WeakValueReport build_report(PostSelection post, Convention conv) {
    const NamedState pre = make_preselected();
    const NamedState post_state = make_postselected(post);

    WeakValueReport report;
    report.preselection = pre.name;
    report.postselection = post_state.name;
    report.convention = conv;
    report.spectrum_convention =
        conv == Convention::appendix_oracle ? Convention::effective_hermitian : conv;

    for (OperatorKind kind :
         {OperatorKind::position, OperatorKind::sigma_zz, OperatorKind::sigma_zx}) {
        for (const ArmSelector& sel : canonical_selectors()) {
            WeakEntry entry;
            entry.kind = kind;
            entry.arms = sel;
            entry.value = weak_value(make_observable(kind, sel, conv), pre, post_state);
            report.entries.push_back(std::move(entry));
        }
    }

    if (post == PostSelection::phi2) {
        const ArmSelector zx14{1, 4};
        const ArmSelector zx2dot{2, 0};
        for (WeakEntry& e : report.entries) {
            if (e.kind != OperatorKind::sigma_zx) continue;
            if (e.arms == zx14 && e.value == -kOne) e.note = "compensating -1 pair";
            if (e.arms == zx2dot && e.value == AlgebraicScalar(2)) e.note = "anomalous";
        }
    }

    sum_rule_check(report);
    anomaly_scan(report);
    report.discrepancies = convention_discrepancy_report().differences;
    return report;
}

void sum_rule_check(WeakValueReport& report) {
    const bool phi2 = report.postselection == "phi2";
    const auto value = [&](OperatorKind kind, ArmSelector sel) {
        return report.entry(kind, sel).value;
    };
    const ArmSelector s13{1, 3}, s14{1, 4}, s23{2, 3}, s24{2, 4};
    const ArmSelector m1{1, 0}, m2{2, 0}, m3{0, 3}, m4{0, 4};

    std::vector<SumRuleResult> rules;
    rules.push_back(make_rule("pi_pair_diagonal", "position (1,3) plus (2,4) accounts for the pair",
                              value(OperatorKind::position, s13) + value(OperatorKind::position, s24),
                              kOne));
    rules.push_back(make_rule("pi_complete", "position over all four path pairs sums to one",
                              value(OperatorKind::position, s13) + value(OperatorKind::position, s14) +
                                  value(OperatorKind::position, s23) + value(OperatorKind::position, s24),
                              kOne));
    rules.push_back(make_rule("pi_marginal_left", "one photon in the left interferometer",
                              value(OperatorKind::position, m1) + value(OperatorKind::position, m2),
                              kOne));
    rules.push_back(make_rule("pi_marginal_right", "one photon in the right interferometer",
                              value(OperatorKind::position, m3) + value(OperatorKind::position, m4),
                              kOne));
    rules.push_back(make_rule("zz_pair_diagonal",
                              "parallel polarization on (1,3) plus (2,4) accounts for the pair",
                              value(OperatorKind::sigma_zz, s13) + value(OperatorKind::sigma_zz, s24),
                              kOne));
    rules.push_back(make_rule("zz_marginal_left", "one parallel polarization on the left",
                              value(OperatorKind::sigma_zz, m1) + value(OperatorKind::sigma_zz, m2),
                              kOne));
    rules.push_back(make_rule("zz_marginal_right", "one parallel polarization on the right",
                              value(OperatorKind::sigma_zz, m3) + value(OperatorKind::sigma_zz, m4),
                              kOne));
    rules.push_back(make_rule(
        "zx_marginal_balance", "orthogonal-direction marginals balance across interferometers",
        value(OperatorKind::sigma_zx, m1) + value(OperatorKind::sigma_zx, m2),
        value(OperatorKind::sigma_zx, m3) + value(OperatorKind::sigma_zx, m4)));
    if (phi2) {
        rules.push_back(make_rule("zx_marginal_left_unit",
                                  "one orthogonal-direction polarization on the left",
                                  value(OperatorKind::sigma_zx, m1) + value(OperatorKind::sigma_zx, m2),
                                  kOne));
        rules.push_back(make_rule("zx_marginal_right_unit",
                                  "one orthogonal-direction polarization on the right",
                                  value(OperatorKind::sigma_zx, m3) + value(OperatorKind::sigma_zx, m4),
                                  kOne));
    }
    report.sum_rules = std::move(rules);
}

std::vector<const WeakEntry*> anomaly_scan(WeakValueReport& report) {
    for (WeakEntry& e : report.entries) {
        Observable obs = make_observable(e.kind, e.arms, report.spectrum_convention);
        const LinearOperator* m = as_matrix(obs);
        if (!m) {
            e.spectrum_known = false;
            e.anomalous = false;
            continue;
        }
        if (auto spec = exact_spectrum(*m)) {
            e.spectrum_known = true;
            e.spectrum_min = spec->min_eigenvalue();
            e.spectrum_max = spec->max_eigenvalue();
            e.anomalous = e.value < AlgebraicScalar(e.spectrum_min) ||
                          e.value > AlgebraicScalar(e.spectrum_max);
        } else {
            e.spectrum_known = false;
            e.anomalous = false;
        }
    }
    std::vector<const WeakEntry*> out;
    for (const WeakEntry& e : report.entries)
        if (e.anomalous) out.push_back(&e);
    return out;
}

}  // namespace cheshire
