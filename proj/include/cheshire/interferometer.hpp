#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "cheshire/states.hpp"

namespace cheshire {

enum class ElementKind { beamsplitter, mirror, hwp, phase };
enum class Side { left, right };
enum class Stage { input, arm, output };

std::string to_string(ElementKind k);
std::string to_string(Side s);
std::string to_string(Stage s);
ElementKind parse_element_kind(std::string_view text);
Side parse_side(std::string_view text);
Stage parse_stage(std::string_view text);

/// One optical element. `arm` is meaningful only for stage == arm (1..2 on the
/// left, 3..4 on the right). `param` is an exact unit scalar: the recombiner
/// sign for output beamsplitters, the amplitude multiplier for phase plates.
struct OpticalElement {
    ElementKind kind = ElementKind::mirror;
    Side side = Side::left;
    Stage stage = Stage::arm;
    int arm = 0;
    AlgebraicScalar param = AlgebraicScalar(1);
};

struct OpticalCircuit {
    std::vector<OpticalElement> elements;
};

/// Throws std::invalid_argument unless the circuit has exactly one input
/// beamsplitter and one output recombiner (beamsplitter or pass-through
/// mirror) per side, well-formed arm sites, and unit parameters.
void validate(const OpticalCircuit& circuit);

/// Input and output beamsplitters with the tuned (+) recombiner convention and
/// empty arms: propagation reproduces the canonical pre-selected state and the
/// dark ports stay exactly dark.
OpticalCircuit bare_tuned_circuit(int recombiner_sign = +1);

/// Output recombiners replaced by pass-through routing (arm 1/3 -> bright,
/// arm 2/4 -> dark): no interference at the output stage.
OpticalCircuit identity_optics_circuit();

OpticalCircuit add_hwp(OpticalCircuit circuit, Side side, int arm);

/// State right after the input beamsplitters, before any arm element:
/// all four path pairs at amplitude 1/2, tensored with the source polarization.
Vec16 input_superposition(const Vec4& source_polarization);

/// Exact state after the input beamsplitters and the arm elements.
Vec16 propagate(const OpticalCircuit& circuit, const Vec4& source_polarization);

/// Detectors: D11/D12 sit behind a polarizing splitter (H/V) at the left
/// bright port, D13 at the left dark port (no polarization resolution);
/// D21/D22/D23 mirror this on the right.
enum class Detector { D11, D12, D13, D21, D22, D23 };

std::string to_string(Detector d);
Detector parse_detector(std::string_view text);

struct DetectorPair {
    Detector left = Detector::D11;
    Detector right = Detector::D21;
    bool operator==(const DetectorPair&) const = default;
};

std::string to_string(const DetectorPair& pair);

/// All nine coincidence pairs in row order (D11,D12,D13) x (D21,D22,D23).
const std::vector<DetectorPair>& all_detector_pairs();

struct ClickRow {
    DetectorPair pair;
    AlgebraicScalar probability;
};

struct ClickStatistics {
    std::vector<ClickRow> rows;  // fixed order, exact probabilities summing to 1

    const AlgebraicScalar& probability(const DetectorPair& pair) const;
    /// Total probability of any coincidence involving the given detector.
    AlgebraicScalar detector_probability(Detector d) const;
};

/// Exact coincidence probabilities after the output recombiners.
/// `state` is in the arm basis (a propagate output) and must be normalized.
ClickStatistics click_statistics(const OpticalCircuit& circuit, const Vec16& state);

struct ConditionedState {
    Vec16 state;  // normalized effective post-selection ket, in the pre-arm frame
    AlgebraicScalar probability;
};

/// Pulls the coincidence projection of a polarization-resolved pair back
/// through the output recombiners and the arm elements, yielding the pure
/// post-selection the pair implements on the pre-arm state. Pairs involving
/// the polarization-blind dark detectors D13/D23 do not define a pure
/// post-selection and are rejected.
Vec16 postselection_pullback(const OpticalCircuit& circuit, const DetectorPair& pair);

/// The pull-back together with its selection probability on the circuit's
/// canonical input (Bell A source). A pair the circuit never selects is an
/// error; use postselection_pullback to inspect the bare projection.
ConditionedState conditioned_state(const OpticalCircuit& circuit, const DetectorPair& pair);

struct HwpConfig {
    int left_arm = 0;
    int right_arm = 0;
    int recombiner_sign = +1;
    DetectorPair pair;
    AlgebraicScalar fidelity;  // |<phi1|conditioned>|^2, exact
    bool exact_match = false;
};

struct HwpSearchResult {
    std::vector<HwpConfig> configurations;  // all 32, deterministic order
    std::vector<HwpConfig> matches;         // exact fidelity 1 only
    std::vector<HwpConfig> no_hwp_configurations;  // 8 control configs without plates
    bool negative_certified = false;
    AlgebraicScalar best_fidelity;
    /// Exact certificate behind a negative outcome: the left-photon reduced
    /// state of phi1 is maximally mixed, so every product-state post-selection
    /// (and every local circuit produces one) has fidelity at most 1/4.
    bool reduced_state_maximally_mixed = false;
    AlgebraicScalar product_fidelity_bound;
    std::string verdict;
};

/// Enumerates HWP placements (one per interferometer) x recombiner sign
/// conventions x polarization-resolved detector pairs — 32 configurations —
/// and returns every exact match with phi1, or a certified exhaustive negative.
HwpSearchResult hwp_search_phi1();

/// Exact 4x4 reduced state of a 16-dim pure state over the left photon
/// (basis 1H, 1V, 2H, 2V).
Mat4 reduced_left_state(const Vec16& state);

using PolVector = std::array<std::complex<double>, 2>;

struct SynthesisResult {
    double best_fidelity = 0.0;
    DetectorPair pair;
    // Per-arm polarization states u_arm^dagger |analyzer>, arms 1,2,3,4.
    std::array<PolVector, 4> arm_states{};
    int restarts = 0;
    double tolerance = 0.0;
    bool success = false;
};

/// Float-domain search for per-arm 2x2 polarization unitaries (plus detector
/// choice) whose conditioned state approximates the target post-selection.
/// Alternating exact coordinate maximization from seeded random starts;
/// deterministic for a fixed seed. A low fidelity is a finding, not an error.
SynthesisResult unitary_synthesis(PostSelection target, double tolerance, int restarts,
                                  std::uint64_t seed);

/// JSON circuit description: {"elements": [{kind, side, arm, stage, param}, ...]}.
std::string circuit_to_json(const OpticalCircuit& circuit);
OpticalCircuit circuit_from_json(const std::string& text);

}  // namespace cheshire
