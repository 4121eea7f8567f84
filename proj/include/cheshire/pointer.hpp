#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "cheshire/observables.hpp"

namespace cheshire {

/// Discretized pointer wavefunction on a uniform grid over [-half_width, half_width].
/// Normalization is sum |a_k|^2 dx = 1.
struct PointerState {
    double half_width = 12.0;  // grid endpoint L
    double width = 1.0;        // Gaussian width parameter s
    std::vector<std::complex<double>> amplitudes;

    std::size_t count() const { return amplitudes.size(); }
    double dx() const { return 2.0 * half_width / static_cast<double>(count() - 1); }
    double position(std::size_t k) const { return -half_width + dx() * static_cast<double>(k); }
};

/// Gaussian exp(-x^2 / (4 s^2)) normalized on the grid.
PointerState gaussian_pointer(double s, double half_width, std::size_t count);

double norm_sq(const PointerState& pointer);
double mean_position(const PointerState& pointer);
double variance(const PointerState& pointer);
void renormalize(PointerState& pointer);

/// Band-limited (Whittaker-Shannon) translation by an arbitrary offset.
/// Integer multiples of dx reduce to an index shift.
PointerState translate(const PointerState& pointer, double offset);

struct CouplingSpec {
    double g = 0.0;
    LinearOperator observable;  // must be exactly hermitian
    NamedState pre;
    NamedState post;
};

struct EvolveResult {
    PointerState pointer;
    double success_probability = 0.0;
    double joint_norm_before_postselection = 0.0;
    std::vector<std::string> warnings;
};

/// Von Neumann coupling g * O (x) p followed by projection onto the
/// post-selection: each eigencomponent of the observable translates the
/// pointer by g times its eigenvalue; the post-selected pointer is the
/// coherent sum. Throws for a non-hermitian observable or orthogonal
/// pre/post pair.
EvolveResult evolve_and_postselect(const CouplingSpec& spec, const PointerState& pointer);

struct SweepRow {
    double g = 0.0;
    double shift_over_g = 0.0;
    double abs_error = 0.0;
    double success_probability = 0.0;
};

/// Runs evolve_and_postselect over descending couplings and reports
/// shift/g against the exact weak value `target`.
std::vector<SweepRow> convergence_sweep(const CouplingSpec& spec_without_g,
                                        const std::vector<double>& g_list, double target,
                                        const PointerState& pointer);

/// Eigendecomposition of a symmetric 16x16 matrix by cyclic Jacobi rotations.
struct EigenDecomposition {
    std::array<double, 16> values{};
    // vectors[m] is the eigenvector for values[m].
    std::array<std::array<double, 16>, 16> vectors{};
};

EigenDecomposition jacobi_eigen_sym16(const std::array<double, 256>& matrix);

std::array<double, 256> to_float_matrix(const Mat16& m);
std::array<double, 16> to_float_vector(const Vec16& v);

}  // namespace cheshire
