#include "cheshire/states.hpp"

#include <stdexcept>

namespace cheshire {

namespace {

const AlgebraicScalar kHalf{Rational(1, 2)};
// sqrt2/4: joint amplitude of one (path, HV|VH) component of the pre-selection.
const AlgebraicScalar kEighthSqrt2{Rational(0), Rational(1, 4)};
// 1/sqrt2 = sqrt2/2.
const AlgebraicScalar kInvSqrt2{Rational(0), Rational(1, 2)};

void add_pol_block(Vec16& v, PathPair path, const AlgebraicScalar& weight, const Vec4& pol) {
    for (PolPair q : kAllPols) v[index_of(path, q)] += weight * pol[static_cast<int>(q)];
}

}  // namespace

std::string to_string(PostSelection post) { return post == PostSelection::phi1 ? "phi1" : "phi2"; }

PostSelection parse_postselection(std::string_view text) {
    if (text == "phi1") return PostSelection::phi1;
    if (text == "phi2") return PostSelection::phi2;
    throw std::invalid_argument("parse_postselection: expected phi1|phi2, got '" + std::string(text) + "'");
}

Vec4 bell_a() {
    Vec4 v;
    v[static_cast<int>(PolPair::HV)] = kInvSqrt2;
    v[static_cast<int>(PolPair::VH)] = kInvSqrt2;
    return v;
}

Vec4 bell_b() {
    Vec4 v;
    v[static_cast<int>(PolPair::HV)] = kInvSqrt2;
    v[static_cast<int>(PolPair::VH)] = -kInvSqrt2;
    return v;
}

Vec4 pol_basis_vector(PolPair pol) {
    Vec4 v;
    v[static_cast<int>(pol)] = AlgebraicScalar(1);
    return v;
}

Vec16 embed_pol_at_path(PathPair path, const Vec4& pol) {
    Vec16 v;
    add_pol_block(v, path, AlgebraicScalar(1), pol);
    return v;
}

NamedState make_preselected() {
    Vec16 v;
    for (PathPair p : kAllPaths) {
        v[index_of(p, PolPair::HV)] = kEighthSqrt2;
        v[index_of(p, PolPair::VH)] = kEighthSqrt2;
    }
    return {"psi", v, true};
}

NamedState make_postselected(PostSelection which) {
    Vec16 v;
    const Vec4 a = bell_a();
    const Vec4 b = bell_b();
    if (which == PostSelection::phi1) {
        add_pol_block(v, PathPair::p13, kHalf, a);
        add_pol_block(v, PathPair::p24, kHalf, a);
        add_pol_block(v, PathPair::p14, kHalf, b);
        add_pol_block(v, PathPair::p23, -kHalf, b);
    } else {
        add_pol_block(v, PathPair::p13, kHalf, a);
        add_pol_block(v, PathPair::p14, kHalf, b);
        add_pol_block(v, PathPair::p23, -kHalf, b);
        add_pol_block(v, PathPair::p24, -kHalf, b);
    }
    return {to_string(which), v, true};
}

Vec4 basis_change_pm(const Vec4& v, PmDirection) {
    // (Hadamard (x) Hadamard) with entries +-1/2; symmetric and involutive.
    static const Mat4 w = [] {
        Mat4 m;
        const AlgebraicScalar half{Rational(1, 2)};
        const int sgn[2][2] = {{1, 1}, {1, -1}};
        for (int r1 = 0; r1 < 2; ++r1)
            for (int r2 = 0; r2 < 2; ++r2)
                for (int c1 = 0; c1 < 2; ++c1)
                    for (int c2 = 0; c2 < 2; ++c2)
                        m(r1 * 2 + r2, c1 * 2 + c2) =
                            sgn[r1][c1] * sgn[r2][c2] > 0 ? half : -half;
        return m;
    }();
    return apply(w, v);
}

ContradictionReport postselection_contradiction_check() {
    Vec4 paths_plus;   // (|14> + |23>)/sqrt2 over the path ranks
    Vec4 paths_minus;  // (|14> - |23>)/sqrt2
    paths_plus[static_cast<int>(PathPair::p14)] = kInvSqrt2;
    paths_plus[static_cast<int>(PathPair::p23)] = kInvSqrt2;
    paths_minus[static_cast<int>(PathPair::p14)] = kInvSqrt2;
    paths_minus[static_cast<int>(PathPair::p23)] = -kInvSqrt2;

    ContradictionReport report;
    report.psi_projection = tensor_embed(paths_plus, bell_a());
    report.phi1_projection = tensor_embed(paths_minus, bell_b());
    report.overlap = inner(report.psi_projection, report.phi1_projection);
    report.orthogonal = report.overlap.is_zero();
    return report;
}

}  // namespace cheshire
