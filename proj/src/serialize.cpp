#include "cheshire/serialize.hpp"

#include <json.hpp>

#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace cheshire {

namespace {

using nlohmann::ordered_json;

std::string float_str(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

ordered_json state_json(const NamedState& state) {
    ordered_json out;
    out["name"] = state.name;
    out["normalized"] = state.normalized;
    out["amplitudes"] = ordered_json::array();
    out["floats"] = ordered_json::array();
    for (std::size_t i = 0; i < 16; ++i) {
        out["amplitudes"].push_back(state.vector[i].str());
        out["floats"].push_back(state.vector[i].to_double());
    }
    return out;
}

ordered_json entry_json(const WeakEntry& e) {
    ordered_json out;
    out["op"] = to_string(e.kind);
    out["arms"] = to_string(e.arms);
    out["exact"] = e.value.str();
    out["float"] = e.value.to_double();
    out["anomalous"] = e.anomalous;
    if (e.spectrum_known) {
        out["spectrum_min"] = e.spectrum_min;
        out["spectrum_max"] = e.spectrum_max;
    }
    if (!e.note.empty()) out["note"] = e.note;
    return out;
}

std::string markdown_value(const WeakEntry& e) {
    std::string cell = e.value.str();
    if (!e.note.empty()) cell += " **(" + e.note + ")**";
    return cell;
}

ordered_json hwp_config_json(const HwpConfig& c) {
    ordered_json out;
    out["left_arm"] = c.left_arm;
    out["right_arm"] = c.right_arm;
    out["recombiner_sign"] = c.recombiner_sign;
    out["pair"] = to_string(c.pair);
    out["fidelity"] = c.fidelity.str();
    out["fidelity_float"] = c.fidelity.to_double();
    out["exact_match"] = c.exact_match;
    return out;
}

}  // namespace

OutputFormat parse_format(std::string_view text) {
    if (text == "markdown" || text == "md") return OutputFormat::markdown;
    if (text == "json") return OutputFormat::json;
    if (text == "csv") return OutputFormat::csv;
    throw std::invalid_argument("unknown format '" + std::string(text) +
                                "' (expected markdown|json|csv)");
}

std::string render_state(const NamedState& state, OutputFormat format) {
    if (format == OutputFormat::json) return state_json(state).dump(2) + "\n";
    std::ostringstream os;
    if (format == OutputFormat::csv) {
        os << "index,path,pol,exact,float\n";
        for (std::size_t i = 0; i < 16; ++i) {
            BasisLabel label = label_of(i);
            os << i << ',' << to_string(label.path) << ',' << to_string(label.pol) << ','
               << state.vector[i].str() << ',' << float_str(state.vector[i].to_double()) << '\n';
        }
        return os.str();
    }
    os << "# state " << state.name << "\n\n";
    os << "| index | path | pol | exact | float |\n|---|---|---|---|---|\n";
    for (std::size_t i = 0; i < 16; ++i) {
        BasisLabel label = label_of(i);
        os << "| " << i << " | " << to_string(label.path) << " | " << to_string(label.pol)
           << " | " << state.vector[i].str() << " | " << float_str(state.vector[i].to_double())
           << " |\n";
    }
    return os.str();
}

std::string render_operator(OperatorKind kind, const ArmSelector& arms, Convention conv,
                            OutputFormat format) {
    Observable obs = make_observable(kind, arms, conv);
    ordered_json out;
    out["op"] = to_string(kind);
    out["arms"] = to_string(arms);
    out["convention"] = to_string(conv);
    if (const LinearOperator* m = as_matrix(obs)) {
        out["form"] = "matrix";
        out["hermitian"] = m->hermitian;
        out["entries"] = ordered_json::array();
        for (std::size_t r = 0; r < 16; ++r) {
            ordered_json row = ordered_json::array();
            for (std::size_t c = 0; c < 16; ++c) row.push_back(m->entries(r, c).str());
            out["entries"].push_back(row);
        }
    } else {
        const ActionTable& table = std::get<ActionTable>(obs);
        out["form"] = "action_table";
        out["action_on_psi"] = ordered_json::array();
        for (std::size_t i = 0; i < 16; ++i)
            out["action_on_psi"].push_back(table.action_on_psi[i].str());
    }
    if (format == OutputFormat::json) return out.dump(2) + "\n";
    if (format == OutputFormat::csv) {
        std::ostringstream os;
        if (out["form"] == "matrix") {
            os << "row,col,exact\n";
            const LinearOperator* m = as_matrix(obs);
            for (std::size_t r = 0; r < 16; ++r)
                for (std::size_t c = 0; c < 16; ++c) {
                    if (m->entries(r, c).is_zero()) continue;
                    os << r << ',' << c << ',' << m->entries(r, c).str() << '\n';
                }
        } else {
            os << "index,exact\n";
            const ActionTable& table = std::get<ActionTable>(obs);
            for (std::size_t i = 0; i < 16; ++i) {
                if (table.action_on_psi[i].is_zero()) continue;
                os << i << ',' << table.action_on_psi[i].str() << '\n';
            }
        }
        return os.str();
    }
    return out.dump(2) + "\n";
}

std::string render_report(const WeakValueReport& report, OutputFormat format) {
    if (format == OutputFormat::json) {
        ordered_json out;
        out["preselection"] = report.preselection;
        out["postselection"] = report.postselection;
        out["convention"] = to_string(report.convention);
        out["spectrum_convention"] = to_string(report.spectrum_convention);
        out["entries"] = ordered_json::array();
        for (const WeakEntry& e : report.entries) out["entries"].push_back(entry_json(e));
        out["sum_rules"] = ordered_json::array();
        for (const SumRuleResult& rule : report.sum_rules) {
            out["sum_rules"].push_back({{"id", rule.id},
                                        {"description", rule.description},
                                        {"lhs", rule.lhs.str()},
                                        {"rhs", rule.rhs.str()},
                                        {"pass", rule.pass}});
        }
        out["anomalies"] = ordered_json::array();
        for (const WeakEntry* e : report.anomalies())
            out["anomalies"].push_back({{"op", to_string(e->kind)}, {"arms", to_string(e->arms)}});
        out["discrepancies"] = ordered_json::array();
        for (const DiscrepancyEntry& d : report.discrepancies) {
            ordered_json diff = ordered_json::array();
            for (std::size_t i = 0; i < 16; ++i) diff.push_back(d.difference_on_psi[i].str());
            out["discrepancies"].push_back({{"op", to_string(d.kind)},
                                            {"arms", to_string(d.arms)},
                                            {"first", to_string(d.first)},
                                            {"second", to_string(d.second)},
                                            {"difference_on_psi", diff}});
        }
        return out.dump(2) + "\n";
    }
    if (format == OutputFormat::csv) {
        std::ostringstream os;
        os << "op,arms,exact,float,anomalous,note\n";
        for (const WeakEntry& e : report.entries) {
            os << to_string(e.kind) << ',' << to_string(e.arms) << ',' << e.value.str() << ','
               << float_str(e.value.to_double()) << ',' << (e.anomalous ? 1 : 0) << ','
               << e.note << '\n';
        }
        return os.str();
    }

    std::ostringstream os;
    os << "# weak values: " << report.preselection << " -> " << report.postselection
       << " (convention: " << to_string(report.convention) << ")\n\n";
    os << "| arms | pi | sigma_zz | sigma_zx |\n|---|---|---|---|\n";
    for (const ArmSelector& sel : canonical_selectors()) {
        os << "| " << to_string(sel) << " | "
           << markdown_value(report.entry(OperatorKind::position, sel)) << " | "
           << markdown_value(report.entry(OperatorKind::sigma_zz, sel)) << " | "
           << markdown_value(report.entry(OperatorKind::sigma_zx, sel)) << " |\n";
    }
    os << "\n## sum rules\n";
    for (const SumRuleResult& rule : report.sum_rules) {
        os << "- " << (rule.pass ? "[pass] " : "[FAIL] ") << rule.id << ": " << rule.lhs.str()
           << " vs " << rule.rhs.str() << " (" << rule.description << ")\n";
    }
    auto anomalies = report.anomalies();
    os << "\n## anomalies\n";
    if (anomalies.empty()) {
        os << "- none\n";
    } else {
        for (const WeakEntry* e : anomalies) {
            os << "- " << to_string(e->kind) << "^" << to_string(e->arms) << " = "
               << e->value.str() << " outside [" << e->spectrum_min << ", " << e->spectrum_max
               << "]\n";
        }
    }
    os << "\n## convention discrepancies embedded: " << report.discrepancies.size() << " (see "
       << "observables dump for details)\n";
    return os.str();
}

std::string render_manifest(const VerificationManifest& manifest, OutputFormat format) {
    if (format == OutputFormat::json) {
        ordered_json out;
        out["convention"] = to_string(manifest.convention);
        out["allow_convention_gaps"] = manifest.allow_convention_gaps;
        out["checks"] = ordered_json::array();
        for (const Check& c : manifest.checks) {
            out["checks"].push_back({{"id", c.id},
                                     {"description", c.description},
                                     {"expected", c.expected},
                                     {"actual", c.actual},
                                     {"status", to_string(c.status)}});
        }
        out["errata"] = ordered_json::array();
        for (const Erratum& e : builtin_errata()) {
            out["errata"].push_back({{"id", e.id},
                                     {"published_claim", e.published_claim},
                                     {"engine_value", e.engine_value},
                                     {"justification", e.justification}});
        }
        out["counts"] = {{"pass", manifest.count(CheckStatus::pass)},
                         {"fail", manifest.count(CheckStatus::fail)},
                         {"erratum_documented", manifest.count(CheckStatus::erratum_documented)},
                         {"convention_unreachable",
                          manifest.count(CheckStatus::convention_unreachable)}};
        out["exit_code"] = manifest.exit_code();
        return out.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "verification under convention " << to_string(manifest.convention) << "\n";
    for (const Check& c : manifest.checks) {
        os << "  [" << to_string(c.status) << "] " << c.id << ": " << c.description << "\n";
        if (c.status != CheckStatus::pass) {
            os << "      expected " << c.expected << "\n";
            os << "      actual   " << c.actual << "\n";
        }
    }
    os << "totals: " << manifest.count(CheckStatus::pass) << " pass, "
       << manifest.count(CheckStatus::erratum_documented) << " erratum-documented, "
       << manifest.count(CheckStatus::convention_unreachable) << " convention-unreachable, "
       << manifest.count(CheckStatus::fail) << " fail\n";
    return os.str();
}

std::string render_sweep(const std::vector<SweepRow>& rows, double target, bool as_json) {
    if (as_json) {
        ordered_json out;
        out["target"] = target;
        out["rows"] = ordered_json::array();
        for (const SweepRow& row : rows) {
            out["rows"].push_back({{"g", row.g},
                                   {"shift_over_g", row.shift_over_g},
                                   {"abs_error", row.abs_error},
                                   {"success_probability", row.success_probability}});
        }
        return out.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "target weak value: " << float_str(target) << "\n";
    os << "g  shift/g  |error|  P(select)\n";
    for (const SweepRow& row : rows) {
        os << float_str(row.g) << "  " << float_str(row.shift_over_g) << "  "
           << float_str(row.abs_error) << "  " << float_str(row.success_probability) << "\n";
    }
    return os.str();
}

std::string render_clicks(const ClickStatistics& stats, OutputFormat format) {
    if (format == OutputFormat::json) {
        ordered_json out;
        out["pairs"] = ordered_json::array();
        for (const ClickRow& row : stats.rows) {
            out["pairs"].push_back({{"pair", to_string(row.pair)},
                                    {"exact", row.probability.str()},
                                    {"float", row.probability.to_double()}});
        }
        for (Detector d : {Detector::D13, Detector::D23}) {
            out["dark_port_probability"][to_string(d)] = stats.detector_probability(d).str();
        }
        return out.dump(2) + "\n";
    }
    std::ostringstream os;
    if (format == OutputFormat::csv) {
        os << "left,right,exact,float\n";
        for (const ClickRow& row : stats.rows) {
            os << to_string(row.pair.left) << ',' << to_string(row.pair.right) << ','
               << row.probability.str() << ',' << float_str(row.probability.to_double()) << '\n';
        }
        return os.str();
    }
    os << "coincidence probabilities\n";
    for (const ClickRow& row : stats.rows) {
        os << "  " << to_string(row.pair) << "  " << row.probability.str() << "  ("
           << float_str(row.probability.to_double()) << ")\n";
    }
    return os.str();
}

std::string render_conditioned(const ConditionedState& cond, OutputFormat format) {
    NamedState named{"conditioned", cond.state, true};
    if (format == OutputFormat::json) {
        ordered_json out = state_json(named);
        out["probability"] = cond.probability.str();
        out["probability_float"] = cond.probability.to_double();
        return out.dump(2) + "\n";
    }
    std::ostringstream os;
    os << render_state(named, format);
    os << "selection probability: " << cond.probability.str() << " ("
       << float_str(cond.probability.to_double()) << ")\n";
    return os.str();
}

std::string render_hwp_search(const HwpSearchResult& result, OutputFormat format) {
    if (format == OutputFormat::json) {
        ordered_json out;
        out["configurations"] = ordered_json::array();
        for (const HwpConfig& c : result.configurations)
            out["configurations"].push_back(hwp_config_json(c));
        out["no_hwp_configurations"] = ordered_json::array();
        for (const HwpConfig& c : result.no_hwp_configurations)
            out["no_hwp_configurations"].push_back(hwp_config_json(c));
        out["matches"] = ordered_json::array();
        for (const HwpConfig& c : result.matches) out["matches"].push_back(hwp_config_json(c));
        out["negative_certified"] = result.negative_certified;
        out["best_fidelity"] = result.best_fidelity.str();
        out["reduced_state_maximally_mixed"] = result.reduced_state_maximally_mixed;
        out["product_fidelity_bound"] = result.product_fidelity_bound.str();
        out["verdict"] = result.verdict;
        return out.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "plate search over " << result.configurations.size() << " configurations ("
       << result.matches.size() << " exact)\n";
    for (const HwpConfig& c : result.configurations) {
        os << "  hwp(left arm " << c.left_arm << ", right arm " << c.right_arm << ") sign "
           << (c.recombiner_sign > 0 ? "+" : "-") << " pair " << to_string(c.pair)
           << "  fidelity " << c.fidelity.str() << (c.exact_match ? "  MATCH" : "") << "\n";
    }
    os << "best fidelity: " << result.best_fidelity.str() << "\n";
    if (result.negative_certified) {
        os << "\n*** " << result.verdict << " ***\n";
    } else {
        os << result.verdict << "\n";
    }
    return os.str();
}

std::string render_synthesis(const SynthesisResult& result, OutputFormat format) {
    if (format == OutputFormat::json) {
        ordered_json out;
        out["best_fidelity"] = result.best_fidelity;
        out["pair"] = to_string(result.pair);
        out["restarts"] = result.restarts;
        out["tolerance"] = result.tolerance;
        out["success"] = result.success;
        out["arm_states"] = ordered_json::array();
        for (int arm = 0; arm < 4; ++arm) {
            const PolVector& v = result.arm_states[arm];
            out["arm_states"].push_back({{"arm", arm + 1},
                                         {"h_re", v[0].real()},
                                         {"h_im", v[0].imag()},
                                         {"v_re", v[1].real()},
                                         {"v_im", v[1].imag()}});
        }
        out["note"] = "float-domain optimization result, not exact";
        return out.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "synthesis (float domain, " << result.restarts << " restarts per pair): best fidelity "
       << float_str(result.best_fidelity) << " at pair " << to_string(result.pair) << "\n";
    os << (result.success ? "success: fidelity within tolerance of 1\n"
                          : "no configuration reached fidelity 1 within tolerance; best recorded "
                            "as a negative result\n");
    return os.str();
}

}  // namespace cheshire
