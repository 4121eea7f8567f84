#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cheshire/observables.hpp"

using namespace cheshire;

namespace {

const AlgebraicScalar kZero{0};
const AlgebraicScalar kHalf{Rational(1, 2)};

const Vec16& psi_vector() {
    static const Vec16 v = make_preselected().vector;
    return v;
}

LinearOperator matrix_op(OperatorKind kind, ArmSelector sel, Convention conv) {
    Observable obs = make_observable(kind, sel, conv);
    const LinearOperator* m = as_matrix(obs);
    REQUIRE(m != nullptr);
    return *m;
}

}  // namespace

TEST_CASE("arm selectors: canonical order, parsing, validation") {
    const auto& sels = canonical_selectors();
    REQUIRE(sels.size() == 8);
    CHECK(to_string(sels[0]) == "13");
    CHECK(to_string(sels[4]) == "1.");
    CHECK(to_string(sels[7]) == ".4");
    CHECK(parse_arm_selector("2.") == ArmSelector{2, 0});
    CHECK(parse_arm_selector(".3") == ArmSelector{0, 3});
    CHECK_THROWS_AS(parse_arm_selector(".."), std::invalid_argument);
    CHECK_THROWS_AS(parse_arm_selector("34"), std::invalid_argument);
    CHECK(covered_paths({1, 0}) == std::vector<PathPair>{PathPair::p13, PathPair::p14});
}

TEST_CASE("position projectors are idempotent and sum to the HV/VH sector") {
    LinearOperator pi13 = matrix_op(OperatorKind::position, {1, 3}, Convention::matrix_literal);
    CHECK(pi13.hermitian);
    CHECK(pi13.entries * pi13.entries == pi13.entries);

    Mat16 sum;
    for (const ArmSelector& sel : {ArmSelector{1, 3}, ArmSelector{1, 4}, ArmSelector{2, 3},
                                   ArmSelector{2, 4}}) {
        sum = sum + matrix_op(OperatorKind::position, sel, Convention::matrix_literal).entries;
    }
    CHECK(rank(sum) == 8);
    CHECK(sum * sum == sum);
    CHECK(sum == tensor_embed(Mat4::identity(), pol_projector_hv_vh()));
}

TEST_CASE("reduced actions on the pre-selected state match the closed forms") {
    for (Convention conv :
         {Convention::matrix_literal, Convention::effective_hermitian, Convention::appendix_oracle}) {
        for (PathPair p : kAllPaths) {
            ArmSelector sel{left_arm(p), right_arm(p)};
            Vec16 expected_a = kHalf * embed_pol_at_path(p, bell_a());
            CHECK(action_on(position_op(sel, conv), psi_vector()) == expected_a);
            CHECK(action_on(sigma_op(OperatorKind::sigma_zz, sel, conv), psi_vector()) ==
                  expected_a);
        }
    }
    // Orthogonal-direction operator: the effective and oracle readings give
    // -(1/2)|ij>(x)|B>, the literal reading annihilates the state.
    for (PathPair p : kAllPaths) {
        ArmSelector sel{left_arm(p), right_arm(p)};
        Vec16 expected_b = -kHalf * embed_pol_at_path(p, bell_b());
        CHECK(action_on(sigma_op(OperatorKind::sigma_zx, sel, Convention::effective_hermitian),
                        psi_vector()) == expected_b);
        CHECK(action_on(sigma_op(OperatorKind::sigma_zx, sel, Convention::appendix_oracle),
                        psi_vector()) == expected_b);
        CHECK(action_on(sigma_op(OperatorKind::sigma_zx, sel, Convention::matrix_literal),
                        psi_vector())
                  .is_zero());
    }
}

TEST_CASE("polarization blocks in the HV basis") {
    // The conjugated diagonal-basis matrices coincide with the swapped Pauli forms.
    Mat4 xx;
    xx(0, 3) = AlgebraicScalar(1);
    xx(1, 2) = AlgebraicScalar(1);
    xx(2, 1) = AlgebraicScalar(1);
    xx(3, 0) = AlgebraicScalar(1);
    CHECK(sigma_zz_matrix_hv() == xx);

    Mat4 xz;
    xz(0, 2) = AlgebraicScalar(1);
    xz(1, 3) = AlgebraicScalar(-1);
    xz(2, 0) = AlgebraicScalar(1);
    xz(3, 1) = AlgebraicScalar(-1);
    CHECK(sigma_zx_matrix_hv() == xz);

    // (sigma_x (x) sigma_z)|A> = (|HH> - |VV>)/sqrt2, annihilated by the HV/VH projector.
    Vec4 rotated = apply(sigma_zx_matrix_hv(), bell_a());
    Vec4 expected;
    expected[static_cast<int>(PolPair::HH)] = AlgebraicScalar(Rational(0), Rational(1, 2));
    expected[static_cast<int>(PolPair::VV)] = -AlgebraicScalar(Rational(0), Rational(1, 2));
    CHECK(rotated == expected);
    CHECK(apply(pol_projector_hv_vh(), rotated).is_zero());

    // The effective polarization factor sends |A> to -|B>.
    CHECK(apply(sigma_zx_effective_hv(), bell_a()) == -bell_b());
}

TEST_CASE("marginals are exact sums of their single-arm constituents") {
    for (OperatorKind kind :
         {OperatorKind::position, OperatorKind::sigma_zz, OperatorKind::sigma_zx}) {
        for (Convention conv : {Convention::matrix_literal, Convention::effective_hermitian}) {
            Mat16 left_marginal = matrix_op(kind, {1, 0}, conv).entries;
            CHECK(left_marginal == matrix_op(kind, {1, 3}, conv).entries +
                                       matrix_op(kind, {1, 4}, conv).entries);
            Mat16 right_marginal = matrix_op(kind, {0, 4}, conv).entries;
            CHECK(right_marginal == matrix_op(kind, {1, 4}, conv).entries +
                                        matrix_op(kind, {2, 4}, conv).entries);
        }
    }
}

TEST_CASE("hermiticity of the matrix forms") {
    for (const ArmSelector& sel : canonical_selectors()) {
        CHECK(matrix_op(OperatorKind::position, sel, Convention::matrix_literal).hermitian);
        CHECK(matrix_op(OperatorKind::sigma_zz, sel, Convention::matrix_literal).hermitian);
        CHECK(matrix_op(OperatorKind::sigma_zz, sel, Convention::effective_hermitian).hermitian);
        CHECK(matrix_op(OperatorKind::sigma_zx, sel, Convention::effective_hermitian).hermitian);
        // The literal sigma_zx composite is the known exception: the projector
        // and the polarization factor do not commute.
        CHECK_FALSE(matrix_op(OperatorKind::sigma_zx, sel, Convention::matrix_literal).hermitian);
    }
}

TEST_CASE("projector commutes with the polarization factors of the hermitian forms") {
    Mat4 p = pol_projector_hv_vh();
    CHECK(p * sigma_zz_matrix_hv() == sigma_zz_matrix_hv() * p);
    CHECK(p * sigma_zx_effective_hv() == sigma_zx_effective_hv() * p);
    CHECK_FALSE(p * sigma_zx_matrix_hv() == sigma_zx_matrix_hv() * p);
}

TEST_CASE("exact spectra of the operator family") {
    auto spec = exact_spectrum(matrix_op(OperatorKind::position, {1, 3}, Convention::matrix_literal));
    REQUIRE(spec.has_value());
    CHECK(spec->n_plus == 2);
    CHECK(spec->n_minus == 0);
    CHECK(spec->min_eigenvalue() == 0);
    CHECK(spec->max_eigenvalue() == 1);

    spec = exact_spectrum(matrix_op(OperatorKind::sigma_zz, {1, 3}, Convention::matrix_literal));
    REQUIRE(spec.has_value());
    CHECK(spec->n_plus == 1);
    CHECK(spec->n_minus == 1);

    spec = exact_spectrum(matrix_op(OperatorKind::sigma_zx, {2, 0}, Convention::effective_hermitian));
    REQUIRE(spec.has_value());
    CHECK(spec->n_plus == 2);
    CHECK(spec->n_minus == 2);
    CHECK(spec->min_eigenvalue() == -1);
    CHECK(spec->max_eigenvalue() == 1);

    // Literal sigma_zx composites are nilpotent: every eigenvalue vanishes.
    spec = exact_spectrum(matrix_op(OperatorKind::sigma_zx, {1, 3}, Convention::matrix_literal));
    REQUIRE(spec.has_value());
    CHECK(spec->n_zero == 16);
}

TEST_CASE("convention discrepancies appear exactly for the orthogonal-direction operator") {
    DiscrepancyReport report = convention_discrepancy_report();

    for (const DiscrepancyEntry& d : report.differences) {
        CHECK(d.kind == OperatorKind::sigma_zx);
        CHECK((d.first == Convention::matrix_literal || d.second == Convention::matrix_literal));
    }
    // 8 selectors, literal vs each of the two agreeing readings.
    CHECK(report.differences.size() == 16);

    // Single-arm differences are proportional to |ij> (x) |B>; marginals lie in
    // the span of two such vectors.
    for (const DiscrepancyEntry& d : report.differences) {
        Vec16 expected;
        for (PathPair p : covered_paths(d.arms))
            expected = expected + kHalf * embed_pol_at_path(p, bell_b());
        CHECK((d.difference_on_psi == expected || d.difference_on_psi == -expected));
    }

    for (const HermiticityRecord& h : report.non_hermitian) {
        CHECK(h.kind == OperatorKind::sigma_zx);
        CHECK(h.convention == Convention::matrix_literal);
    }
    CHECK(report.non_hermitian.size() == 8);
}

TEST_CASE("selector errors") {
    CHECK_THROWS_AS(position_op({0, 0}, Convention::matrix_literal), std::invalid_argument);
    CHECK_THROWS_AS(position_op({5, 3}, Convention::matrix_literal), std::invalid_argument);
    CHECK_THROWS_AS(sigma_op(OperatorKind::position, {1, 3}, Convention::matrix_literal),
                    std::invalid_argument);
}

TEST_CASE("action tables reject states other than the canonical pre-selection") {
    Observable table = position_op({1, 3}, Convention::appendix_oracle);
    Vec16 other = make_postselected(PostSelection::phi1).vector;
    CHECK_THROWS_AS(action_on(table, other), std::domain_error);
}
