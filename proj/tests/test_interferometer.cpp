#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cheshire/interferometer.hpp"

using namespace cheshire;

namespace {

const AlgebraicScalar kZero{0};
const AlgebraicScalar kOne{1};
const AlgebraicScalar kHalf{Rational(1, 2)};
const AlgebraicScalar kQuarter{Rational(1, 4)};
const AlgebraicScalar kEighth{Rational(1, 8)};

const DetectorPair kD11D22{Detector::D11, Detector::D22};
const DetectorPair kD12D21{Detector::D12, Detector::D21};

}  // namespace

TEST_CASE("bare tuned circuit reproduces the pre-selected state exactly") {
    Vec16 out = propagate(bare_tuned_circuit(), bell_a());
    CHECK(out == make_preselected().vector);
    CHECK(out == input_superposition(bell_a()));
}

TEST_CASE("propagation is exactly norm-preserving") {
    OpticalCircuit circuit = bare_tuned_circuit();
    circuit = add_hwp(circuit, Side::left, 2);
    circuit = add_hwp(circuit, Side::right, 3);
    circuit.elements.push_back({ElementKind::phase, Side::right, Stage::arm, 4, AlgebraicScalar(-1)});
    circuit.elements.push_back({ElementKind::mirror, Side::left, Stage::arm, 1, kOne});
    for (const Vec4& pol : {bell_a(), bell_b(), pol_basis_vector(PolPair::HH)}) {
        CHECK(norm_sq(propagate(circuit, pol)) == kOne);
    }
}

TEST_CASE("half-wave plate flips the V component on its arm only") {
    OpticalCircuit circuit = add_hwp(bare_tuned_circuit(), Side::left, 2);
    Vec16 out = propagate(circuit, bell_a());
    const Vec16 psi = make_preselected().vector;
    for (PathPair p : kAllPaths) {
        for (PolPair q : kAllPols) {
            std::size_t idx = index_of(p, q);
            bool flipped = left_arm(p) == 2 && (q == PolPair::VH || q == PolPair::VV);
            CHECK(out[idx] == (flipped ? -psi[idx] : psi[idx]));
        }
    }
}

TEST_CASE("mirrors on arms are pass-through") {
    OpticalCircuit circuit = bare_tuned_circuit();
    circuit.elements.push_back({ElementKind::mirror, Side::left, Stage::arm, 1, kOne});
    circuit.elements.push_back({ElementKind::mirror, Side::right, Stage::arm, 4, kOne});
    CHECK(propagate(circuit, bell_a()) == make_preselected().vector);
}

TEST_CASE("tuned circuit click pattern: dark detectors never fire") {
    OpticalCircuit circuit = bare_tuned_circuit();
    ClickStatistics stats = click_statistics(circuit, propagate(circuit, bell_a()));

    CHECK(stats.probability(kD11D22) == kHalf);
    CHECK(stats.probability(kD12D21) == kHalf);
    CHECK(stats.detector_probability(Detector::D13) == kZero);
    CHECK(stats.detector_probability(Detector::D23) == kZero);

    AlgebraicScalar total;
    for (const ClickRow& row : stats.rows) total += row.probability;
    CHECK(total == kOne);
    CHECK(stats.rows.size() == 9);
}

TEST_CASE("blocking one arm spreads coincidences evenly over four pairs") {
    // Zero the left-arm-2 amplitudes of the pre-selected state and rescale by
    // sqrt2 (the removed half carries probability 1/2).
    Vec16 blocked = make_preselected().vector;
    for (PathPair p : {PathPair::p23, PathPair::p24})
        for (PolPair q : kAllPols) blocked[index_of(p, q)] = kZero;
    blocked = AlgebraicScalar(Rational(0), Rational(1)) * blocked;  // times sqrt2
    REQUIRE(norm_sq(blocked) == kOne);

    ClickStatistics stats = click_statistics(bare_tuned_circuit(), blocked);
    CHECK(stats.probability(kD11D22) == kQuarter);
    CHECK(stats.probability(kD12D21) == kQuarter);
    CHECK(stats.probability({Detector::D13, Detector::D21}) == kQuarter);
    CHECK(stats.probability({Detector::D13, Detector::D22}) == kQuarter);
    CHECK(stats.probability({Detector::D11, Detector::D21}) == kZero);
    CHECK(stats.detector_probability(Detector::D23) == kZero);
}

TEST_CASE("conditioned state of the tuned circuit") {
    ConditionedState cond = conditioned_state(bare_tuned_circuit(), kD11D22);
    CHECK(cond.probability == kHalf);
    CHECK(norm_sq(cond.state) == kOne);
    for (PathPair p : kAllPaths) {
        CHECK(cond.state[index_of(p, PolPair::HV)] == kHalf);
        CHECK(cond.state[index_of(p, PolPair::HH)] == kZero);
    }
}

TEST_CASE("conditioned probability equals the click probability of the pair") {
    for (const OpticalCircuit& circuit :
         {bare_tuned_circuit(), add_hwp(bare_tuned_circuit(), Side::left, 2),
          add_hwp(add_hwp(bare_tuned_circuit(-1), Side::left, 2), Side::right, 4)}) {
        ClickStatistics stats = click_statistics(circuit, propagate(circuit, bell_a()));
        for (const DetectorPair& pair :
             {kD11D22, kD12D21, DetectorPair{Detector::D11, Detector::D21},
              DetectorPair{Detector::D12, Detector::D22}}) {
            Vec16 pullback = postselection_pullback(circuit, pair);
            AlgebraicScalar overlap = inner(pullback, input_superposition(bell_a()));
            CHECK(stats.probability(pair) == overlap * overlap);
        }
    }
}

TEST_CASE("pass-through outputs condition onto single-arm products") {
    Vec16 pullback = postselection_pullback(identity_optics_circuit(), kD11D22);
    CHECK(pullback == embed_pol_at_path(PathPair::p13, pol_basis_vector(PolPair::HV)));
    ConditionedState cond = conditioned_state(identity_optics_circuit(), kD11D22);
    CHECK(cond.probability == kEighth);
}

TEST_CASE("dark-port pairs and never-selected pairs are rejected") {
    CHECK_THROWS_AS(conditioned_state(bare_tuned_circuit(), {Detector::D13, Detector::D21}),
                    std::invalid_argument);
    // With plates inserted the bright-bright coincidences vanish identically,
    // so conditioning on them is a zero-probability request.
    OpticalCircuit hwp_circuit =
        add_hwp(add_hwp(bare_tuned_circuit(), Side::left, 2), Side::right, 4);
    ClickStatistics stats = click_statistics(hwp_circuit, propagate(hwp_circuit, bell_a()));
    CHECK(stats.probability(kD11D22) == kZero);
    CHECK_THROWS_AS(conditioned_state(hwp_circuit, kD11D22), std::domain_error);
}

TEST_CASE("malformed circuits are rejected") {
    OpticalCircuit missing_output;
    missing_output.elements.push_back(
        {ElementKind::beamsplitter, Side::left, Stage::input, 0, kOne});
    missing_output.elements.push_back(
        {ElementKind::beamsplitter, Side::right, Stage::input, 0, kOne});
    CHECK_THROWS_AS(validate(missing_output), std::invalid_argument);

    OpticalCircuit duplicate = bare_tuned_circuit();
    duplicate.elements.push_back({ElementKind::beamsplitter, Side::left, Stage::input, 0, kOne});
    CHECK_THROWS_AS(validate(duplicate), std::invalid_argument);

    OpticalCircuit bad_arm = bare_tuned_circuit();
    bad_arm.elements.push_back({ElementKind::hwp, Side::left, Stage::arm, 3, kOne});
    CHECK_THROWS_AS(validate(bad_arm), std::invalid_argument);

    OpticalCircuit bad_phase = bare_tuned_circuit();
    bad_phase.elements.push_back(
        {ElementKind::phase, Side::left, Stage::arm, 1, AlgebraicScalar(2)});
    CHECK_THROWS_AS(validate(bad_phase), std::invalid_argument);

    OpticalCircuit arm_bs = bare_tuned_circuit();
    arm_bs.elements.push_back({ElementKind::beamsplitter, Side::left, Stage::arm, 1, kOne});
    CHECK_THROWS_AS(validate(arm_bs), std::invalid_argument);
}

TEST_CASE("circuit JSON round-trip") {
    OpticalCircuit circuit = add_hwp(bare_tuned_circuit(-1), Side::left, 2);
    circuit.elements.push_back({ElementKind::phase, Side::right, Stage::arm, 4, AlgebraicScalar(-1)});
    std::string text = circuit_to_json(circuit);
    OpticalCircuit loaded = circuit_from_json(text);
    REQUIRE(loaded.elements.size() == circuit.elements.size());
    for (std::size_t i = 0; i < circuit.elements.size(); ++i) {
        CHECK(loaded.elements[i].kind == circuit.elements[i].kind);
        CHECK(loaded.elements[i].side == circuit.elements[i].side);
        CHECK(loaded.elements[i].stage == circuit.elements[i].stage);
        CHECK(loaded.elements[i].arm == circuit.elements[i].arm);
        CHECK(loaded.elements[i].param == circuit.elements[i].param);
    }
    CHECK(propagate(loaded, bell_a()) == propagate(circuit, bell_a()));
    CHECK_THROWS_AS(circuit_from_json("{}"), std::invalid_argument);
}

TEST_CASE("plate search: exhaustive, deterministic, certified outcome") {
    HwpSearchResult first = hwp_search_phi1();
    HwpSearchResult second = hwp_search_phi1();

    CHECK(first.configurations.size() == 32);
    CHECK(first.no_hwp_configurations.size() == 8);
    REQUIRE(first.configurations.size() == second.configurations.size());
    for (std::size_t i = 0; i < first.configurations.size(); ++i) {
        CHECK(first.configurations[i].fidelity == second.configurations[i].fidelity);
        CHECK(first.configurations[i].pair == second.configurations[i].pair);
    }

    // Either at least one exact match, or a certified negative with the exact
    // product-state bound. The algebra forces the negative here: phi1 is
    // maximally entangled across the two interferometers.
    if (first.matches.empty()) {
        CHECK(first.negative_certified);
        CHECK(first.reduced_state_maximally_mixed);
        CHECK(first.product_fidelity_bound == kQuarter);
        CHECK(first.best_fidelity < kQuarter);
        CHECK(first.verdict.find("NEGATIVE") != std::string::npos);
        for (const HwpConfig& config : first.configurations) {
            CHECK_FALSE(config.exact_match);
            CHECK(config.fidelity <= kQuarter);
        }
    } else {
        for (const HwpConfig& config : first.matches) CHECK(config.fidelity == kOne);
    }

    // Without the plates nothing conditions onto phi1 either.
    for (const HwpConfig& config : first.no_hwp_configurations) {
        CHECK_FALSE(config.exact_match);
    }

    CHECK(first.best_fidelity == kEighth);
}

TEST_CASE("reduced left state of the first post-selection is maximally mixed") {
    Mat4 rho = reduced_left_state(make_postselected(PostSelection::phi1).vector);
    CHECK(rho == kQuarter * Mat4::identity());
    CHECK(rho.trace() == kOne);

    // The second post-selection is entangled but not maximally: its largest
    // reduced eigenvalue is 1/2 (the product-state fidelity ceiling).
    Mat4 rho2 = reduced_left_state(make_postselected(PostSelection::phi2).vector);
    CHECK(rho2.trace() == kOne);
    CHECK_FALSE(rho2 == kQuarter * Mat4::identity());
}

TEST_CASE("synthesis saturates the exact product-state ceilings") {
    // phi1: ceiling 1/4 (maximally mixed reduced state).
    SynthesisResult toward_phi1 = unitary_synthesis(PostSelection::phi1, 1e-6, 24, 7);
    CHECK(toward_phi1.best_fidelity > 0.25 - 1e-9);
    CHECK(toward_phi1.best_fidelity < 0.25 + 1e-9);
    CHECK_FALSE(toward_phi1.success);

    // The continuous search dominates the discrete plate search.
    HwpSearchResult discrete = hwp_search_phi1();
    CHECK(toward_phi1.best_fidelity >= discrete.best_fidelity.to_double() - 1e-12);

    // phi2: ceiling 1/2 (largest reduced eigenvalue).
    SynthesisResult toward_phi2 = unitary_synthesis(PostSelection::phi2, 1e-6, 24, 7);
    CHECK(toward_phi2.best_fidelity > 0.5 - 1e-9);
    CHECK(toward_phi2.best_fidelity < 0.5 + 1e-9);
    CHECK_FALSE(toward_phi2.success);
}

TEST_CASE("synthesis is deterministic for a fixed seed") {
    SynthesisResult a = unitary_synthesis(PostSelection::phi2, 1e-3, 8, 42);
    SynthesisResult b = unitary_synthesis(PostSelection::phi2, 1e-3, 8, 42);
    CHECK(a.best_fidelity == b.best_fidelity);
    CHECK(a.pair == b.pair);
    for (int arm = 0; arm < 4; ++arm) {
        CHECK(a.arm_states[arm][0] == b.arm_states[arm][0]);
        CHECK(a.arm_states[arm][1] == b.arm_states[arm][1]);
    }
    CHECK_THROWS_AS(unitary_synthesis(PostSelection::phi2, 0.0, 8, 42), std::invalid_argument);
    CHECK_THROWS_AS(unitary_synthesis(PostSelection::phi2, 1e-3, 0, 42), std::invalid_argument);
}
