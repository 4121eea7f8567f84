#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "cheshire/serialize.hpp"

using namespace cheshire;

namespace {

struct GlobalOptions {
    std::string convention = "effective_hermitian";
    std::string format = "markdown";
    std::uint64_t seed = 20120831;
};

Vec4 parse_source(const std::string& name) {
    if (name == "bellA") return bell_a();
    if (name == "bellB") return bell_b();
    for (PolPair q : kAllPols) {
        if (to_string(q) == name) return pol_basis_vector(q);
    }
    throw CLI::ValidationError("--source", "expected bellA|bellB|HH|HV|VH|VV");
}

NamedState named_state_by_name(const std::string& name) {
    if (name == "psi") return make_preselected();
    if (name == "phi1") return make_postselected(PostSelection::phi1);
    if (name == "phi2") return make_postselected(PostSelection::phi2);
    throw CLI::ValidationError("--state", "expected psi|phi1|phi2|bellA|bellB|plusplus|plusminus|"
                                          "minusplus|minusminus");
}

/// 4-dim polarization-space states, rendered in HV coordinates.
bool pol_state_by_name(const std::string& name, Vec4& out, std::string& label) {
    if (name == "bellA") {
        out = bell_a();
        label = "bellA";
        return true;
    }
    if (name == "bellB") {
        out = bell_b();
        label = "bellB";
        return true;
    }
    static const std::pair<const char*, PolPair> diagonal[] = {
        {"plusplus", PolPair::HH},
        {"plusminus", PolPair::HV},
        {"minusplus", PolPair::VH},
        {"minusminus", PolPair::VV},
    };
    for (const auto& [key, rank] : diagonal) {
        if (name == key) {
            out = basis_change_pm(pol_basis_vector(rank), PmDirection::pm_to_hv);
            label = key;
            return true;
        }
    }
    return false;
}

std::string render_pol_state(const std::string& name, const Vec4& v, OutputFormat format) {
    static constexpr const char* pol_names[] = {"HH", "HV", "VH", "VV"};
    if (format == OutputFormat::csv) {
        std::ostringstream os;
        os << "index,pol,exact,float\n";
        for (int i = 0; i < 4; ++i) {
            os << i << ',' << pol_names[i] << ',' << v[i].str() << ',' << v[i].to_double() << '\n';
        }
        return os.str();
    }
    nlohmann::ordered_json out;
    out["name"] = name;
    out["amplitudes"] = nlohmann::ordered_json::array();
    out["floats"] = nlohmann::ordered_json::array();
    for (int i = 0; i < 4; ++i) {
        out["amplitudes"].push_back(v[i].str());
        out["floats"].push_back(v[i].to_double());
    }
    return out.dump(2) + "\n";
}

std::vector<double> parse_g_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (token.empty()) continue;
        out.push_back(std::stod(token));
    }
    if (out.empty()) throw CLI::ValidationError("--g", "expected a comma-separated list");
    for (std::size_t i = 0; i + 1 < out.size(); ++i) {
        if (out[i] <= out[i + 1]) {
            throw CLI::ValidationError("--g", "couplings must be positive and descending");
        }
    }
    if (out.back() <= 0.0) throw CLI::ValidationError("--g", "couplings must be positive");
    return out;
}

DetectorPair parse_pair(const std::string& text) {
    auto comma = text.find(',');
    if (comma == std::string::npos) {
        throw CLI::ValidationError("--pair", "expected e.g. D11,D22");
    }
    return {parse_detector(text.substr(0, comma)), parse_detector(text.substr(comma + 1))};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact weak-value engine for the twin-interferometer pre/post-selection "
                 "experiment"};
    app.require_subcommand(1);
    app.fallthrough();
    GlobalOptions global;
    app.add_option("--convention", global.convention,
                   "observable reading: matrix_literal|effective_hermitian|appendix_oracle")
        ->capture_default_str();
    app.add_option("--format", global.format, "output format: markdown|json|csv")
        ->capture_default_str();
    app.add_option("--seed", global.seed, "seed for randomized searches")->capture_default_str();

    // verify
    auto* verify = app.add_subcommand("verify", "compare every tabulated result, exactly");
    bool allow_gaps = false;
    verify->add_flag("--allow-convention-gaps", allow_gaps,
                     "do not fail on values a convention cannot reach");

    // table
    auto* table = app.add_subcommand("table", "weak-value table for one post-selection");
    std::string table_post = "phi1";
    table->add_option("--post", table_post, "phi1|phi2")->required();

    // dump
    auto* dump = app.add_subcommand("dump", "emit a state or an operator");
    std::string dump_state, dump_op, dump_arms = "13";
    dump->add_option("--state", dump_state, "psi|phi1|phi2|bellA|bellB|plusplus|...");
    dump->add_option("--op", dump_op, "pi|sigma_zz|sigma_zx");
    dump->add_option("--arms", dump_arms, "13|14|23|24|1.|2.|.3|.4");

    // pointer sweep
    auto* pointer_cmd = app.add_subcommand("pointer", "von Neumann pointer dynamics");
    auto* sweep = pointer_cmd->add_subcommand("sweep", "coupling sweep toward the weak value");
    std::string sweep_op = "sigma_zx", sweep_arms = "2.", sweep_post = "phi2";
    std::string sweep_g = "1e-1,3e-2,1e-2,3e-3";
    double sweep_s = 1.0, sweep_L = 12.0;
    std::size_t sweep_N = 4096;
    bool sweep_json = false;
    sweep->add_option("--op", sweep_op, "pi|sigma_zz|sigma_zx")->capture_default_str();
    sweep->add_option("--arms", sweep_arms, "arm selector")->capture_default_str();
    sweep->add_option("--post", sweep_post, "phi1|phi2")->capture_default_str();
    sweep->add_option("--g", sweep_g, "descending couplings, comma-separated")
        ->capture_default_str();
    sweep->add_option("--s", sweep_s, "pointer width")->capture_default_str();
    sweep->add_option("--L", sweep_L, "grid half-width")->capture_default_str();
    sweep->add_option("--N", sweep_N, "grid points")->capture_default_str();
    sweep->add_flag("--json", sweep_json, "emit JSON");

    // circuit
    auto* circuit_cmd = app.add_subcommand("circuit", "optical circuit runs and searches");
    auto* run = circuit_cmd->add_subcommand("run", "propagate a circuit description");
    std::string run_file, run_report = "clicks", run_pair = "D11,D22", run_source = "bellA";
    run->add_option("--file", run_file, "circuit JSON file")->required();
    run->add_option("--report", run_report, "clicks|conditioned|state")->capture_default_str();
    run->add_option("--pair", run_pair, "detector pair for conditioned reports")
        ->capture_default_str();
    run->add_option("--source", run_source, "source polarization")->capture_default_str();
    auto* emit = circuit_cmd->add_subcommand("emit-bare", "print the bare tuned circuit JSON");
    int emit_sign = 1;
    emit->add_option("--sign", emit_sign, "recombiner sign (+1|-1)")->capture_default_str();
    auto* search = circuit_cmd->add_subcommand("search-phi1",
                                               "exhaustive half-wave-plate search for phi1");
    auto* synth = circuit_cmd->add_subcommand("synth-phi2",
                                              "float-domain unitary synthesis toward phi2");
    double synth_tolerance = 1e-6;
    int synth_restarts = 100;
    std::string synth_target = "phi2";
    synth->add_option("--tolerance", synth_tolerance, "success threshold 1-tolerance")
        ->capture_default_str();
    synth->add_option("--restarts", synth_restarts, "random restarts per detector pair")
        ->capture_default_str();
    synth->add_option("--target", synth_target, "phi1|phi2 (phi1 is the cross-check)")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        Convention conv = parse_convention(global.convention);
        OutputFormat format = parse_format(global.format);

        if (*verify) {
            VerificationManifest manifest = run_verification(conv, allow_gaps);
            std::cout << render_manifest(manifest,
                                         format == OutputFormat::csv ? OutputFormat::json : format);
            return manifest.exit_code();
        }
        if (*table) {
            WeakValueReport report = build_report(parse_postselection(table_post), conv);
            std::cout << render_report(report, format);
            return 0;
        }
        if (*dump) {
            if (dump_state.empty() == dump_op.empty()) {
                std::cerr << "dump: exactly one of --state or --op is required\n";
                return 2;
            }
            if (!dump_state.empty()) {
                Vec4 pol;
                std::string label;
                if (pol_state_by_name(dump_state, pol, label)) {
                    std::cout << render_pol_state(label, pol, format);
                } else {
                    std::cout << render_state(named_state_by_name(dump_state), format);
                }
            } else {
                std::cout << render_operator(parse_operator_kind(dump_op),
                                             parse_arm_selector(dump_arms), conv, format);
            }
            return 0;
        }
        if (*sweep) {
            OperatorKind kind = parse_operator_kind(sweep_op);
            ArmSelector arms = parse_arm_selector(sweep_arms);
            PostSelection post = parse_postselection(sweep_post);
            NamedState pre = make_preselected();
            NamedState post_state = make_postselected(post);
            AlgebraicScalar exact = weak_value(make_observable(kind, arms, conv), pre, post_state);
            Convention matrix_conv =
                conv == Convention::appendix_oracle ? Convention::effective_hermitian : conv;
            CouplingSpec spec{0.0, matrix_observable(kind, arms, matrix_conv), pre, post_state};
            PointerState pointer = gaussian_pointer(sweep_s, sweep_L, sweep_N);
            auto rows = convergence_sweep(spec, parse_g_list(sweep_g), exact.to_double(), pointer);
            std::cout << render_sweep(rows, exact.to_double(), sweep_json);
            return 0;
        }
        if (*run) {
            std::ifstream in(run_file);
            if (!in) {
                std::cerr << "circuit run: cannot open " << run_file << "\n";
                return 1;
            }
            std::stringstream buffer;
            buffer << in.rdbuf();
            OpticalCircuit circuit = circuit_from_json(buffer.str());
            Vec4 source = parse_source(run_source);
            if (run_report == "clicks") {
                Vec16 state = propagate(circuit, source);
                std::cout << render_clicks(click_statistics(circuit, state), format);
            } else if (run_report == "conditioned") {
                std::cout << render_conditioned(conditioned_state(circuit, parse_pair(run_pair)),
                                                format);
            } else if (run_report == "state") {
                std::cout << render_state({"propagated", propagate(circuit, source), true}, format);
            } else {
                std::cerr << "circuit run: unknown report '" << run_report << "'\n";
                return 2;
            }
            return 0;
        }
        if (*emit) {
            std::cout << circuit_to_json(bare_tuned_circuit(emit_sign)) << "\n";
            return 0;
        }
        if (*search) {
            HwpSearchResult result = hwp_search_phi1();
            std::cout << render_hwp_search(result, format);
            return 0;
        }
        if (*synth) {
            SynthesisResult result = unitary_synthesis(parse_postselection(synth_target),
                                                       synth_tolerance, synth_restarts, global.seed);
            std::cout << render_synthesis(result, format);
            return 0;
        }
        std::cerr << "no subcommand selected\n";
        return 2;
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
