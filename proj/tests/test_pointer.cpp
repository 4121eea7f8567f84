#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cheshire/pointer.hpp"
#include "cheshire/weak.hpp"

using namespace cheshire;

namespace {

constexpr double kS = 1.0;
constexpr double kL = 12.0;
constexpr std::size_t kN = 4096;

const PointerState& base_pointer() {
    static const PointerState p = gaussian_pointer(kS, kL, kN);
    return p;
}

LinearOperator hermitian_op(OperatorKind kind, ArmSelector sel) {
    LinearOperator m = matrix_observable(kind, sel, Convention::effective_hermitian);
    REQUIRE(m.hermitian);
    return m;
}

CouplingSpec make_spec(OperatorKind kind, ArmSelector sel, PostSelection post, double g) {
    return {g, hermitian_op(kind, sel), make_preselected(), make_postselected(post)};
}

}  // namespace

TEST_CASE("initial Gaussian is normalized, centered and has variance s^2") {
    const PointerState& p = base_pointer();
    CHECK(std::abs(norm_sq(p) - 1.0) < 1e-10);
    CHECK(std::abs(mean_position(p)) < 1e-10);
    CHECK(std::abs(variance(p) - kS * kS) < 1e-6);
}

TEST_CASE("band-limited translation reproduces the analytic Gaussian to 1e-8") {
    const PointerState& p = base_pointer();
    // Same normalization constant as the sampled input Gaussian.
    double c = 0.0;
    for (std::size_t k = 0; k < p.count(); ++k) {
        double x = p.position(k);
        c += std::exp(-x * x / (2.0 * kS * kS));
    }
    c = std::sqrt(c * p.dx());

    for (double offset : {0.01, -0.0137, 0.25, 3.0 * p.dx(), 0.003}) {
        PointerState shifted = translate(p, offset);
        double max_err = 0.0;
        for (std::size_t k = 0; k < p.count(); ++k) {
            double x = p.position(k) - offset;
            double expected = std::exp(-x * x / (4.0 * kS * kS)) / c;
            max_err = std::max(max_err, std::abs(shifted.amplitudes[k] - expected));
        }
        CAPTURE(offset);
        CHECK(max_err < 1e-8);
        CHECK(std::abs(mean_position(shifted) - offset) < 1e-6);
    }
}

TEST_CASE("jacobi eigensolver agrees with the exact spectrum counts") {
    LinearOperator op = hermitian_op(OperatorKind::sigma_zx, {2, 0});
    EigenDecomposition eig = jacobi_eigen_sym16(to_float_matrix(op.entries));

    auto spec = exact_spectrum(op);
    REQUIRE(spec.has_value());
    int plus = 0, minus = 0, zero = 0;
    for (double v : eig.values) {
        if (std::abs(v - 1.0) < 1e-9) ++plus;
        else if (std::abs(v + 1.0) < 1e-9) ++minus;
        else if (std::abs(v) < 1e-9) ++zero;
    }
    CHECK(plus == spec->n_plus);
    CHECK(minus == spec->n_minus);
    CHECK(zero == spec->n_zero);

    // Orthonormal eigenvectors reconstructing the matrix.
    auto m = to_float_matrix(op.entries);
    for (std::size_t a = 0; a < 16; ++a) {
        for (std::size_t b = 0; b < 16; ++b) {
            double dot = 0.0;
            for (std::size_t k = 0; k < 16; ++k) dot += eig.vectors[a][k] * eig.vectors[b][k];
            CHECK(std::abs(dot - (a == b ? 1.0 : 0.0)) < 1e-10);
            double rebuilt = 0.0;
            for (std::size_t t = 0; t < 16; ++t)
                rebuilt += eig.values[t] * eig.vectors[t][a] * eig.vectors[t][b];
            CHECK(std::abs(rebuilt - m[a * 16 + b]) < 1e-10);
        }
    }
}

TEST_CASE("zero coupling leaves the pointer untouched") {
    CouplingSpec spec = make_spec(OperatorKind::position, {1, 3}, PostSelection::phi1, 0.0);
    EvolveResult r = evolve_and_postselect(spec, base_pointer());
    CHECK(std::abs(r.success_probability - 0.25) < 1e-12);
    double max_err = 0.0;
    for (std::size_t k = 0; k < r.pointer.count(); ++k) {
        max_err = std::max(max_err,
                           std::abs(r.pointer.amplitudes[k] - base_pointer().amplitudes[k]));
    }
    CHECK(max_err < 1e-10);
}

TEST_CASE("identity observable translates the pointer rigidly by g") {
    CouplingSpec spec{0.02, LinearOperator{Mat16::identity(), true}, make_preselected(),
                      make_postselected(PostSelection::phi1)};
    EvolveResult r = evolve_and_postselect(spec, base_pointer());
    CHECK(std::abs(mean_position(r.pointer) - 0.02) < 1e-6);
    CHECK(std::abs(r.success_probability - 0.25) < 1e-9);
}

TEST_CASE("anomalous coupling shifts the pointer by twice the coupling") {
    CouplingSpec spec = make_spec(OperatorKind::sigma_zx, {2, 0}, PostSelection::phi2, 0.01);
    EvolveResult r = evolve_and_postselect(spec, base_pointer());
    double shift = mean_position(r.pointer);
    CHECK(std::abs(shift / 0.01 - 2.0) < 0.05);
    CHECK(std::abs(shift - 0.02) < 5e-4);
    CHECK(std::abs(r.joint_norm_before_postselection - 1.0) < 1e-8);
    CHECK(std::abs(variance(r.pointer) - kS * kS) < 0.01 * kS * kS);
}

TEST_CASE("convergence sweep approaches the exact weak values") {
    const std::vector<double> gs = {0.03, 0.01, 0.003};

    // Both first-post-selection cases have equal-weight eigencomponents, which
    // makes the post-selected shift exactly linear in g: the sweep sits at the
    // weak value up to roundoff for every coupling.
    CouplingSpec pi13 = make_spec(OperatorKind::position, {1, 3}, PostSelection::phi1, 0.0);
    auto rows = convergence_sweep(pi13, gs, 0.5, base_pointer());
    REQUIRE(rows.size() == 3);
    for (const SweepRow& row : rows) CHECK(row.abs_error < 1e-9);

    CouplingSpec zx13 = make_spec(OperatorKind::sigma_zx, {1, 3}, PostSelection::phi1, 0.0);
    rows = convergence_sweep(zx13, gs, 0.0, base_pointer());
    for (const SweepRow& row : rows) CHECK(row.abs_error < 1e-9);

    // The anomalous case carries a genuine finite-coupling correction that
    // shrinks with g.
    CouplingSpec zx2dot = make_spec(OperatorKind::sigma_zx, {2, 0}, PostSelection::phi2, 0.0);
    rows = convergence_sweep(zx2dot, gs, 2.0, base_pointer());
    CHECK(rows[0].abs_error > 1e-5);
    CHECK(rows[1].abs_error < rows[0].abs_error);
    CHECK(rows[2].abs_error < rows[1].abs_error);
    CHECK(std::abs(rows[1].shift_over_g - 2.0) < 0.01);
}

TEST_CASE("success probability converges to the squared overlap") {
    CouplingSpec phi1 = make_spec(OperatorKind::position, {1, 3}, PostSelection::phi1, 1e-3);
    CHECK(std::abs(evolve_and_postselect(phi1, base_pointer()).success_probability - 1.0 / 4.0) <
          1e-4);
    CouplingSpec phi2 = make_spec(OperatorKind::sigma_zx, {2, 0}, PostSelection::phi2, 1e-3);
    CHECK(std::abs(evolve_and_postselect(phi2, base_pointer()).success_probability - 1.0 / 16.0) <
          1e-4);
}

TEST_CASE("a too-coarse grid is reported as a warning") {
    CouplingSpec spec = make_spec(OperatorKind::position, {1, 3}, PostSelection::phi1, 1e-4);
    EvolveResult r = evolve_and_postselect(spec, base_pointer());
    REQUIRE(r.warnings.size() == 1);
    CHECK(r.warnings[0].find("grid too coarse") != std::string::npos);

    CouplingSpec fine = make_spec(OperatorKind::position, {1, 3}, PostSelection::phi1, 0.01);
    CHECK(evolve_and_postselect(fine, base_pointer()).warnings.empty());
}

TEST_CASE("invalid couplings are rejected") {
    // Non-hermitian observable: the literal orthogonal-direction composite.
    LinearOperator literal =
        matrix_observable(OperatorKind::sigma_zx, {1, 3}, Convention::matrix_literal);
    CouplingSpec bad{0.01, literal, make_preselected(), make_postselected(PostSelection::phi1)};
    CHECK_THROWS_AS(evolve_and_postselect(bad, base_pointer()), std::invalid_argument);

    // Orthogonal pre/post pair.
    NamedState orthogonal{"hh13", embed_pol_at_path(PathPair::p13, pol_basis_vector(PolPair::HH)),
                          true};
    CouplingSpec orth{0.01, hermitian_op(OperatorKind::position, {1, 3}), make_preselected(),
                      orthogonal};
    CHECK_THROWS_AS(evolve_and_postselect(orth, base_pointer()), std::domain_error);

    CouplingSpec ok = make_spec(OperatorKind::position, {1, 3}, PostSelection::phi1, 0.0);
    CHECK_THROWS_AS(convergence_sweep(ok, {0.01, -0.5}, 0.5, base_pointer()),
                    std::invalid_argument);
}
