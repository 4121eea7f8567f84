#include "cheshire/interferometer.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace cheshire {

namespace {

const AlgebraicScalar kOne{1};
const AlgebraicScalar kHalf{Rational(1, 2)};
const AlgebraicScalar kInvSqrt2{Rational(0), Rational(1, 2)};

bool is_unit(const AlgebraicScalar& x) { return x * x == kOne; }

int arm_of(PathPair p, Side side) { return side == Side::left ? left_arm(p) : right_arm(p); }

/// Polarization slot of one photon inside a joint label: H or V.
bool is_v_pol(PolPair pol, Side side) {
    int rank = static_cast<int>(pol);
    int bit = side == Side::left ? rank / 2 : rank % 2;
    return bit == 1;
}

struct CircuitShape {
    const OpticalElement* output_left = nullptr;
    const OpticalElement* output_right = nullptr;
    std::vector<const OpticalElement*> arm_elements;  // in listed order
};

CircuitShape analyze(const OpticalCircuit& circuit) {
    const OpticalElement* input[2] = {nullptr, nullptr};
    const OpticalElement* output[2] = {nullptr, nullptr};
    CircuitShape shape;
    for (const OpticalElement& e : circuit.elements) {
        int s = e.side == Side::left ? 0 : 1;
        switch (e.stage) {
            case Stage::input:
                if (e.kind != ElementKind::beamsplitter)
                    throw std::invalid_argument("circuit: input stage must be a beamsplitter");
                if (input[s]) throw std::invalid_argument("circuit: duplicate input beamsplitter");
                if (e.param != kOne)
                    throw std::invalid_argument(
                        "circuit: input beamsplitter sign is fixed by the tuning convention");
                input[s] = &e;
                break;
            case Stage::output:
                if (e.kind != ElementKind::beamsplitter && e.kind != ElementKind::mirror)
                    throw std::invalid_argument(
                        "circuit: output stage must be a beamsplitter or a pass-through mirror");
                if (output[s]) throw std::invalid_argument("circuit: duplicate output recombiner");
                if (!is_unit(e.param))
                    throw std::invalid_argument("circuit: output recombiner sign must be +1 or -1");
                output[s] = &e;
                break;
            case Stage::arm: {
                int lo = e.side == Side::left ? 1 : 3;
                if (e.arm < lo || e.arm > lo + 1)
                    throw std::invalid_argument("circuit: arm element on a nonexistent arm");
                if (e.kind == ElementKind::beamsplitter)
                    throw std::invalid_argument("circuit: beamsplitters cannot sit on an arm");
                if (e.kind == ElementKind::phase && !is_unit(e.param))
                    throw std::invalid_argument(
                        "circuit: phase parameter must be an exact unit scalar");
                if (e.kind != ElementKind::phase && e.param != kOne)
                    throw std::invalid_argument("circuit: only phase elements carry a parameter");
                shape.arm_elements.push_back(&e);
                break;
            }
        }
    }
    if (!input[0] || !input[1] || !output[0] || !output[1]) {
        throw std::invalid_argument(
            "circuit: need one input beamsplitter and one output recombiner per side");
    }
    shape.output_left = output[0];
    shape.output_right = output[1];
    return shape;
}

/// Amplitude the output recombiner routes from an arm to a port.
/// Ports: 0 = bright (towards the polarizing splitter), 1 = dark.
AlgebraicScalar port_weight(const OpticalElement& recombiner, int port, bool second_arm) {
    if (recombiner.kind == ElementKind::mirror) {
        // Pass-through routing: first arm -> bright, second arm -> dark.
        bool hit = (port == 0) ? !second_arm : second_arm;
        return hit ? kOne : AlgebraicScalar(0);
    }
    AlgebraicScalar w = kInvSqrt2;
    if (second_arm) {
        w = w * recombiner.param;
        if (port == 1) w = -w;
    }
    return w;
}

/// Applies (or un-applies: every arm element is its own inverse here) the arm
/// elements to a state in the arm basis.
Vec16 apply_arm_elements(const CircuitShape& shape, Vec16 state) {
    for (const OpticalElement* e : shape.arm_elements) {
        if (e->kind == ElementKind::mirror) continue;
        for (PathPair p : kAllPaths) {
            if (arm_of(p, e->side) != e->arm) continue;
            for (PolPair q : kAllPols) {
                std::size_t idx = index_of(p, q);
                if (e->kind == ElementKind::hwp) {
                    if (is_v_pol(q, e->side)) state[idx] = -state[idx];
                } else {  // phase
                    state[idx] = e->param * state[idx];
                }
            }
        }
    }
    return state;
}

}  // namespace

std::string to_string(ElementKind k) {
    switch (k) {
        case ElementKind::beamsplitter: return "beamsplitter";
        case ElementKind::mirror: return "mirror";
        case ElementKind::hwp: return "hwp";
        case ElementKind::phase: return "phase";
    }
    throw std::logic_error("unknown element kind");
}

std::string to_string(Side s) { return s == Side::left ? "left" : "right"; }

std::string to_string(Stage s) {
    switch (s) {
        case Stage::input: return "input";
        case Stage::arm: return "arm";
        case Stage::output: return "output";
    }
    throw std::logic_error("unknown stage");
}

ElementKind parse_element_kind(std::string_view text) {
    for (ElementKind k : {ElementKind::beamsplitter, ElementKind::mirror, ElementKind::hwp,
                          ElementKind::phase}) {
        if (to_string(k) == text) return k;
    }
    throw std::invalid_argument("unknown element kind '" + std::string(text) + "'");
}

Side parse_side(std::string_view text) {
    if (text == "left") return Side::left;
    if (text == "right") return Side::right;
    throw std::invalid_argument("unknown side '" + std::string(text) + "'");
}

Stage parse_stage(std::string_view text) {
    for (Stage s : {Stage::input, Stage::arm, Stage::output}) {
        if (to_string(s) == text) return s;
    }
    throw std::invalid_argument("unknown stage '" + std::string(text) + "'");
}

void validate(const OpticalCircuit& circuit) { analyze(circuit); }

OpticalCircuit bare_tuned_circuit(int recombiner_sign) {
    if (recombiner_sign != 1 && recombiner_sign != -1) {
        throw std::invalid_argument("bare_tuned_circuit: sign must be +1 or -1");
    }
    AlgebraicScalar sign{recombiner_sign};
    OpticalCircuit c;
    c.elements.push_back({ElementKind::beamsplitter, Side::left, Stage::input, 0, kOne});
    c.elements.push_back({ElementKind::beamsplitter, Side::right, Stage::input, 0, kOne});
    c.elements.push_back({ElementKind::beamsplitter, Side::left, Stage::output, 0, sign});
    c.elements.push_back({ElementKind::beamsplitter, Side::right, Stage::output, 0, sign});
    return c;
}

OpticalCircuit identity_optics_circuit() {
    OpticalCircuit c;
    c.elements.push_back({ElementKind::beamsplitter, Side::left, Stage::input, 0, kOne});
    c.elements.push_back({ElementKind::beamsplitter, Side::right, Stage::input, 0, kOne});
    c.elements.push_back({ElementKind::mirror, Side::left, Stage::output, 0, kOne});
    c.elements.push_back({ElementKind::mirror, Side::right, Stage::output, 0, kOne});
    return c;
}

OpticalCircuit add_hwp(OpticalCircuit circuit, Side side, int arm) {
    circuit.elements.push_back({ElementKind::hwp, side, Stage::arm, arm, kOne});
    return circuit;
}

Vec16 input_superposition(const Vec4& source_polarization) {
    Vec16 v;
    for (PathPair p : kAllPaths)
        for (PolPair q : kAllPols)
            v[index_of(p, q)] = kHalf * source_polarization[static_cast<int>(q)];
    return v;
}

Vec16 propagate(const OpticalCircuit& circuit, const Vec4& source_polarization) {
    CircuitShape shape = analyze(circuit);
    return apply_arm_elements(shape, input_superposition(source_polarization));
}

std::string to_string(Detector d) {
    static constexpr const char* names[] = {"D11", "D12", "D13", "D21", "D22", "D23"};
    return names[static_cast<int>(d)];
}

Detector parse_detector(std::string_view text) {
    for (int i = 0; i < 6; ++i) {
        Detector d = static_cast<Detector>(i);
        if (to_string(d) == text) return d;
    }
    throw std::invalid_argument("unknown detector '" + std::string(text) + "'");
}

std::string to_string(const DetectorPair& pair) {
    return to_string(pair.left) + "," + to_string(pair.right);
}

const std::vector<DetectorPair>& all_detector_pairs() {
    static const std::vector<DetectorPair> pairs = [] {
        std::vector<DetectorPair> out;
        for (Detector l : {Detector::D11, Detector::D12, Detector::D13})
            for (Detector r : {Detector::D21, Detector::D22, Detector::D23}) out.push_back({l, r});
        return out;
    }();
    return pairs;
}

const AlgebraicScalar& ClickStatistics::probability(const DetectorPair& pair) const {
    for (const ClickRow& row : rows) {
        if (row.pair == pair) return row.probability;
    }
    throw std::out_of_range("click_statistics: unknown detector pair " + to_string(pair));
}

AlgebraicScalar ClickStatistics::detector_probability(Detector d) const {
    AlgebraicScalar total;
    for (const ClickRow& row : rows) {
        if (row.pair.left == d || row.pair.right == d) total += row.probability;
    }
    return total;
}

ClickStatistics click_statistics(const OpticalCircuit& circuit, const Vec16& state) {
    CircuitShape shape = analyze(circuit);
    if (norm_sq(state) != kOne) {
        throw std::invalid_argument("click_statistics: state must be exactly normalized");
    }

    // amp[left port][right port][joint pol]
    AlgebraicScalar amp[2][2][4];
    for (int lp = 0; lp < 2; ++lp)
        for (int rp = 0; rp < 2; ++rp)
            for (PolPair q : kAllPols) {
                AlgebraicScalar a;
                for (PathPair p : kAllPaths) {
                    AlgebraicScalar w = port_weight(*shape.output_left, lp, left_arm(p) == 2) *
                                        port_weight(*shape.output_right, rp, right_arm(p) == 4);
                    if (w.is_zero()) continue;
                    a += w * state[index_of(p, q)];
                }
                amp[lp][rp][static_cast<int>(q)] = a;
            }

    auto prob = [&](const DetectorPair& pair) {
        int lp = pair.left == Detector::D13 ? 1 : 0;
        int rp = pair.right == Detector::D23 ? 1 : 0;
        AlgebraicScalar total;
        for (PolPair q : kAllPols) {
            if (pair.left != Detector::D13 &&
                is_v_pol(q, Side::left) != (pair.left == Detector::D12))
                continue;
            if (pair.right != Detector::D23 &&
                is_v_pol(q, Side::right) != (pair.right == Detector::D22))
                continue;
            const AlgebraicScalar& a = amp[lp][rp][static_cast<int>(q)];
            total += a * a;
        }
        return total;
    };

    ClickStatistics stats;
    for (const DetectorPair& pair : all_detector_pairs()) stats.rows.push_back({pair, prob(pair)});
    return stats;
}

Vec16 postselection_pullback(const OpticalCircuit& circuit, const DetectorPair& pair) {
    CircuitShape shape = analyze(circuit);
    bool left_ok = pair.left == Detector::D11 || pair.left == Detector::D12;
    bool right_ok = pair.right == Detector::D21 || pair.right == Detector::D22;
    if (!left_ok || !right_ok) {
        throw std::invalid_argument(
            "postselection_pullback: " + to_string(pair) +
            " involves a polarization-blind dark detector and is not a pure post-selection");
    }

    // Port ket pulled back through the recombiners: the path amplitudes that
    // feed the chosen bright ports, with the detector's polarization.
    Vec4 paths;
    for (PathPair p : kAllPaths) {
        paths[static_cast<int>(p)] = port_weight(*shape.output_left, 0, left_arm(p) == 2) *
                                     port_weight(*shape.output_right, 0, right_arm(p) == 4);
    }
    PolPair pol = static_cast<PolPair>((pair.left == Detector::D12 ? 2 : 0) +
                                       (pair.right == Detector::D22 ? 1 : 0));
    Vec16 cond = tensor_embed(paths, pol_basis_vector(pol));
    // Arm elements are involutions, so applying them again inverts them.
    cond = apply_arm_elements(shape, cond);
    if (norm_sq(cond) != kOne) {
        throw std::logic_error("postselection_pullback: pull-back lost normalization");
    }
    return cond;
}

ConditionedState conditioned_state(const OpticalCircuit& circuit, const DetectorPair& pair) {
    Vec16 cond = postselection_pullback(circuit, pair);
    AlgebraicScalar overlap = inner(cond, input_superposition(bell_a()));
    if (overlap.is_zero()) {
        throw std::domain_error("conditioned_state: the pair " + to_string(pair) +
                                " has zero probability on the canonical input");
    }
    return {cond, overlap * overlap};
}

Mat4 reduced_left_state(const Vec16& state) {
    // Left basis (1H, 1V, 2H, 2V); trace over the right photon (3H, 3V, 4H, 4V).
    auto component = [&](int left_idx, int right_idx) {
        int i = left_idx / 2, x = left_idx % 2;
        int j = right_idx / 2, y = right_idx % 2;
        PathPair p = path_from_arms(i + 1, j + 3);
        PolPair q = static_cast<PolPair>(x * 2 + y);
        return state[index_of(p, q)];
    };
    Mat4 rho;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            AlgebraicScalar sum;
            for (int r = 0; r < 4; ++r) sum += component(a, r) * component(b, r);
            rho(a, b) = sum;
        }
    return rho;
}

HwpSearchResult hwp_search_phi1() {
    const Vec16 phi1 = make_postselected(PostSelection::phi1).vector;
    const std::vector<DetectorPair> pairs = {{Detector::D11, Detector::D21},
                                             {Detector::D11, Detector::D22},
                                             {Detector::D12, Detector::D21},
                                             {Detector::D12, Detector::D22}};

    HwpSearchResult result;
    result.best_fidelity = AlgebraicScalar(0);

    auto examine = [&](const OpticalCircuit& circuit, int la, int ra, int sign,
                       const DetectorPair& pair) {
        Vec16 cond = postselection_pullback(circuit, pair);
        AlgebraicScalar fidelity = inner(phi1, cond) * inner(phi1, cond);
        return HwpConfig{la, ra, sign, pair, fidelity, fidelity == kOne};
    };

    for (int la : {1, 2})
        for (int ra : {3, 4})
            for (int sign : {+1, -1})
                for (const DetectorPair& pair : pairs) {
                    OpticalCircuit circuit =
                        add_hwp(add_hwp(bare_tuned_circuit(sign), Side::left, la), Side::right, ra);
                    HwpConfig config = examine(circuit, la, ra, sign, pair);
                    if (config.fidelity > result.best_fidelity)
                        result.best_fidelity = config.fidelity;
                    if (config.exact_match) result.matches.push_back(config);
                    result.configurations.push_back(config);
                }
    for (int sign : {+1, -1})
        for (const DetectorPair& pair : pairs) {
            result.no_hwp_configurations.push_back(
                examine(bare_tuned_circuit(sign), 0, 0, sign, pair));
        }

    result.negative_certified = result.matches.empty();
    Mat4 rho = reduced_left_state(phi1);
    result.reduced_state_maximally_mixed = rho == AlgebraicScalar(Rational(1, 4)) * Mat4::identity();
    result.product_fidelity_bound = AlgebraicScalar(Rational(1, 4));
    if (result.negative_certified) {
        result.verdict =
            "NEGATIVE (certified): none of the 32 half-wave-plate configurations conditions onto "
            "phi1. The left-photon reduced state of phi1 is exactly maximally mixed, so every "
            "product post-selection reachable by local optics has fidelity at most 1/4. This "
            "contradicts the claimed plate construction for the first post-selection.";
    } else {
        result.verdict = "POSITIVE: at least one configuration conditions exactly onto phi1.";
    }
    return result;
}

namespace {

using Complex = std::complex<double>;

struct SynthesisState {
    // a[0], a[1]: left arms 1, 2; a[2], a[3]: right arms 3, 4.
    std::array<PolVector, 4> a;
};

Complex overlap_with(const std::array<double, 16>& target, const SynthesisState& s) {
    Complex total = 0.0;
    for (PathPair p : kAllPaths) {
        int i = left_arm(p) - 1;
        int j = right_arm(p) - 1;
        for (PolPair q : kAllPols) {
            int x = is_v_pol(q, Side::left) ? 1 : 0;
            int y = is_v_pol(q, Side::right) ? 1 : 0;
            total += 0.5 * target[index_of(p, q)] * s.a[i][x] * s.a[j][y];
        }
    }
    return total;
}

/// Exact maximizer of |overlap| over one arm's polarization state, holding the
/// other three fixed: the overlap is linear in each arm state.
void update_arm(const std::array<double, 16>& target, SynthesisState& s, int arm) {
    PolVector gradient{0.0, 0.0};
    for (PathPair p : kAllPaths) {
        int i = left_arm(p) - 1;
        int j = right_arm(p) - 1;
        bool left_side = arm < 2;
        if ((left_side ? i : j) != arm) continue;
        int other = left_side ? j : i;
        for (PolPair q : kAllPols) {
            int x = is_v_pol(q, Side::left) ? 1 : 0;
            int y = is_v_pol(q, Side::right) ? 1 : 0;
            int own = left_side ? x : y;
            int partner = left_side ? y : x;
            gradient[own] += 0.5 * target[index_of(p, q)] * s.a[other][partner];
        }
    }
    double n = std::sqrt(std::norm(gradient[0]) + std::norm(gradient[1]));
    if (n < 1e-15) return;
    // Aligning this arm with the conjugate gradient also phase-aligns the term
    // with the rest of the overlap, because the remainder shares the factor.
    s.a[arm] = {std::conj(gradient[0]) / n, std::conj(gradient[1]) / n};
}

}  // namespace

SynthesisResult unitary_synthesis(PostSelection target, double tolerance, int restarts,
                                  std::uint64_t seed) {
    if (tolerance <= 0.0 || tolerance >= 1.0) {
        throw std::invalid_argument("unitary_synthesis: tolerance must lie in (0, 1)");
    }
    if (restarts < 1) throw std::invalid_argument("unitary_synthesis: need at least one restart");

    const std::array<double, 16> target_floats = [&] {
        Vec16 t = make_postselected(target).vector;
        std::array<double, 16> out{};
        for (std::size_t k = 0; k < 16; ++k) out[k] = t[k].to_double();
        return out;
    }();

    const std::vector<DetectorPair> pairs = {{Detector::D11, Detector::D21},
                                             {Detector::D11, Detector::D22},
                                             {Detector::D12, Detector::D21},
                                             {Detector::D12, Detector::D22}};

    SynthesisResult best;
    best.tolerance = tolerance;
    best.restarts = restarts;
    best.best_fidelity = -1.0;

    for (std::size_t pair_index = 0; pair_index < pairs.size(); ++pair_index) {
        for (int r = 0; r < restarts; ++r) {
            std::mt19937_64 rng(seed + pair_index * static_cast<std::uint64_t>(restarts) + r);
            std::normal_distribution<double> gauss(0.0, 1.0);
            SynthesisState state;
            for (auto& v : state.a) {
                v = {Complex(gauss(rng), gauss(rng)), Complex(gauss(rng), gauss(rng))};
                double n = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
                v = {v[0] / n, v[1] / n};
            }
            double fidelity = std::norm(overlap_with(target_floats, state));
            for (int iter = 0; iter < 500; ++iter) {
                for (int arm = 0; arm < 4; ++arm) update_arm(target_floats, state, arm);
                double next = std::norm(overlap_with(target_floats, state));
                if (next - fidelity < 1e-14) {
                    fidelity = std::max(fidelity, next);
                    break;
                }
                fidelity = next;
            }
            if (fidelity > best.best_fidelity + 1e-15) {
                best.best_fidelity = fidelity;
                best.pair = pairs[pair_index];
                best.arm_states = state.a;
            }
        }
    }
    best.success = best.best_fidelity >= 1.0 - tolerance;
    return best;
}

std::string circuit_to_json(const OpticalCircuit& circuit) {
    nlohmann::json out;
    out["elements"] = nlohmann::json::array();
    for (const OpticalElement& e : circuit.elements) {
        out["elements"].push_back({{"kind", to_string(e.kind)},
                                   {"side", to_string(e.side)},
                                   {"arm", e.arm},
                                   {"stage", to_string(e.stage)},
                                   {"param", e.param.str()}});
    }
    return out.dump(2);
}

OpticalCircuit circuit_from_json(const std::string& text) {
    nlohmann::json in = nlohmann::json::parse(text);
    if (!in.contains("elements") || !in["elements"].is_array()) {
        throw std::invalid_argument("circuit_from_json: missing 'elements' array");
    }
    OpticalCircuit circuit;
    for (const auto& j : in["elements"]) {
        OpticalElement e;
        e.kind = parse_element_kind(j.at("kind").get<std::string>());
        e.side = parse_side(j.at("side").get<std::string>());
        e.stage = parse_stage(j.at("stage").get<std::string>());
        e.arm = j.value("arm", 0);
        e.param = j.contains("param") ? AlgebraicScalar::parse(j.at("param").get<std::string>())
                                      : AlgebraicScalar(1);
        circuit.elements.push_back(e);
    }
    validate(circuit);
    return circuit;
}

}  // namespace cheshire
