#include "cheshire/pointer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cheshire {

PointerState gaussian_pointer(double s, double half_width, std::size_t count) {
    if (s <= 0 || half_width <= 0 || count < 2) {
        throw std::invalid_argument("gaussian_pointer: need s > 0, half_width > 0, count >= 2");
    }
    PointerState p;
    p.half_width = half_width;
    p.width = s;
    p.amplitudes.resize(count);
    for (std::size_t k = 0; k < count; ++k) {
        double x = p.position(k);
        p.amplitudes[k] = std::exp(-x * x / (4.0 * s * s));
    }
    renormalize(p);
    return p;
}

double norm_sq(const PointerState& pointer) {
    double total = 0.0;
    for (const auto& a : pointer.amplitudes) total += std::norm(a);
    return total * pointer.dx();
}

double mean_position(const PointerState& pointer) {
    double total = 0.0;
    for (std::size_t k = 0; k < pointer.count(); ++k) {
        total += pointer.position(k) * std::norm(pointer.amplitudes[k]);
    }
    return total * pointer.dx();
}

double variance(const PointerState& pointer) {
    double mean = mean_position(pointer);
    double total = 0.0;
    for (std::size_t k = 0; k < pointer.count(); ++k) {
        double d = pointer.position(k) - mean;
        total += d * d * std::norm(pointer.amplitudes[k]);
    }
    return total * pointer.dx();
}

void renormalize(PointerState& pointer) {
    double n = std::sqrt(norm_sq(pointer));
    if (n == 0.0) throw std::domain_error("renormalize: zero pointer state");
    for (auto& a : pointer.amplitudes) a /= n;
}

PointerState translate(const PointerState& pointer, double offset) {
    const std::size_t n = pointer.count();
    const double dx = pointer.dx();
    const double cells = offset / dx;
    const double nearest = std::round(cells);

    PointerState out = pointer;
    if (std::abs(cells - nearest) < 1e-12) {
        const long shift = static_cast<long>(nearest);
        for (long j = 0; j < static_cast<long>(n); ++j) {
            long k = j - shift;
            out.amplitudes[j] =
                (k >= 0 && k < static_cast<long>(n)) ? pointer.amplitudes[k] : 0.0;
        }
        return out;
    }

    // sinc(j - k - cells) = -(-1)^(j-k) sin(pi*cells) / (pi*(j - k - cells)),
    // so one sine evaluation serves the whole kernel.
    const double sin_pi_cells = std::sin(std::numbers::pi * cells);
    for (std::size_t j = 0; j < n; ++j) {
        std::complex<double> acc = 0.0;
        double parity = 1.0;  // (-1)^(j-k) starting at k = 0
        if (j % 2 == 1) parity = -1.0;
        for (std::size_t k = 0; k < n; ++k) {
            double denom = (static_cast<double>(j) - static_cast<double>(k) - cells);
            acc += parity * pointer.amplitudes[k] / denom;
            parity = -parity;
        }
        out.amplitudes[j] = acc * (-sin_pi_cells / std::numbers::pi);
    }
    return out;
}

std::array<double, 256> to_float_matrix(const Mat16& m) {
    std::array<double, 256> out{};
    for (std::size_t r = 0; r < 16; ++r)
        for (std::size_t c = 0; c < 16; ++c) out[r * 16 + c] = m(r, c).to_double();
    return out;
}

std::array<double, 16> to_float_vector(const Vec16& v) {
    std::array<double, 16> out{};
    for (std::size_t i = 0; i < 16; ++i) out[i] = v[i].to_double();
    return out;
}

EigenDecomposition jacobi_eigen_sym16(const std::array<double, 256>& matrix) {
    constexpr std::size_t n = 16;
    std::array<double, 256> a = matrix;
    std::array<std::array<double, 16>, 16> v{};
    for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;

    auto off_diag_norm = [&a]() {
        double s = 0.0;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = r + 1; c < n; ++c) s += a[r * n + c] * a[r * n + c];
        return std::sqrt(s);
    };

    for (int sweep = 0; sweep < 100 && off_diag_norm() > 1e-14; ++sweep) {
        for (std::size_t p = 0; p < n - 1; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = a[p * n + q];
                if (std::abs(apq) < 1e-300) continue;
                double app = a[p * n + p];
                double aqq = a[q * n + q];
                double theta = (aqq - app) / (2.0 * apq);
                double t = std::copysign(1.0, theta) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    double akp = a[k * n + p];
                    double akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double apk = a[p * n + k];
                    double aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double vkp = v[k][p];
                    double vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }

    EigenDecomposition out;
    for (std::size_t m = 0; m < n; ++m) {
        out.values[m] = a[m * n + m];
        for (std::size_t k = 0; k < n; ++k) out.vectors[m][k] = v[k][m];
    }
    return out;
}

EvolveResult evolve_and_postselect(const CouplingSpec& spec, const PointerState& pointer) {
    if (!spec.observable.hermitian) {
        throw std::invalid_argument("evolve_and_postselect: observable must be exactly hermitian");
    }
    AlgebraicScalar overlap = inner(spec.post.vector, spec.pre.vector);
    if (overlap.is_zero()) {
        throw std::domain_error("evolve_and_postselect: orthogonal pre/post-selection");
    }

    EigenDecomposition eig = jacobi_eigen_sym16(to_float_matrix(spec.observable.entries));
    std::array<double, 16> pre = to_float_vector(spec.pre.vector);
    std::array<double, 16> post = to_float_vector(spec.post.vector);

    // Group eigencomponents by eigenvalue; each group translates the pointer
    // by g * lambda and carries the weight <post|P_lambda|pre>.
    struct Component {
        double eigenvalue;
        double weight;        // <post|P_lambda|pre>
        double pre_weight_sq; // <pre|P_lambda|pre>, for the joint norm
    };
    std::vector<Component> components;
    for (std::size_t m = 0; m < 16; ++m) {
        double um_pre = 0.0;
        double um_post = 0.0;
        for (std::size_t k = 0; k < 16; ++k) {
            um_pre += eig.vectors[m][k] * pre[k];
            um_post += eig.vectors[m][k] * post[k];
        }
        double lambda = eig.values[m];
        auto it = std::find_if(components.begin(), components.end(), [&](const Component& c) {
            return std::abs(c.eigenvalue - lambda) < 1e-9;
        });
        if (it == components.end()) {
            components.push_back({lambda, um_post * um_pre, um_pre * um_pre});
        } else {
            it->weight += um_post * um_pre;
            it->pre_weight_sq += um_pre * um_pre;
        }
    }

    double max_abs_eig = 0.0;
    for (const Component& c : components)
        max_abs_eig = std::max(max_abs_eig, std::abs(c.eigenvalue));

    EvolveResult result;
    if (spec.g != 0.0 && max_abs_eig > 0.0 &&
        std::abs(spec.g) * max_abs_eig < pointer.dx() / 10.0) {
        result.warnings.push_back("grid too coarse: g*max|eigenvalue| = " +
                                  std::to_string(std::abs(spec.g) * max_abs_eig) +
                                  " is below dx/10 = " + std::to_string(pointer.dx() / 10.0));
    }

    PointerState out = pointer;
    std::fill(out.amplitudes.begin(), out.amplitudes.end(), std::complex<double>(0.0));
    double joint_norm = 0.0;
    for (const Component& c : components) {
        PointerState shifted =
            spec.g == 0.0 ? pointer : translate(pointer, spec.g * c.eigenvalue);
        joint_norm += c.pre_weight_sq * norm_sq(shifted);
        if (c.weight == 0.0) continue;
        for (std::size_t k = 0; k < out.count(); ++k) {
            out.amplitudes[k] += c.weight * shifted.amplitudes[k];
        }
    }
    result.joint_norm_before_postselection = joint_norm;
    result.success_probability = norm_sq(out);
    if (result.success_probability <= 0.0) {
        throw std::domain_error("evolve_and_postselect: post-selection has zero probability");
    }
    renormalize(out);
    result.pointer = std::move(out);
    return result;
}

std::vector<SweepRow> convergence_sweep(const CouplingSpec& spec_without_g,
                                        const std::vector<double>& g_list, double target,
                                        const PointerState& pointer) {
    std::vector<SweepRow> rows;
    rows.reserve(g_list.size());
    for (double g : g_list) {
        if (g <= 0.0) throw std::invalid_argument("convergence_sweep: couplings must be positive");
        CouplingSpec spec = spec_without_g;
        spec.g = g;
        EvolveResult r = evolve_and_postselect(spec, pointer);
        SweepRow row;
        row.g = g;
        row.shift_over_g = mean_position(r.pointer) / g;
        row.abs_error = std::abs(row.shift_over_g - target);
        row.success_probability = r.success_probability;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace cheshire
