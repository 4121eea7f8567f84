#include "cheshire/observables.hpp"

#include <stdexcept>

namespace cheshire {

namespace {

const AlgebraicScalar kOne{1};
const AlgebraicScalar kHalf{Rational(1, 2)};

Mat4 path_projector(const std::vector<PathPair>& paths) {
    Mat4 m;
    for (PathPair p : paths) m(static_cast<int>(p), static_cast<int>(p)) = kOne;
    return m;
}

int to_integer_checked(const AlgebraicScalar& x, const char* what) {
    if (x.sqrt2_part() != 0 || denominator(x.rational_part()) != 1) {
        throw std::logic_error(std::string("exact_spectrum: non-integer ") + what);
    }
    return x.rational_part().convert_to<int>();
}

}  // namespace

std::string to_string(Convention c) {
    switch (c) {
        case Convention::matrix_literal: return "matrix_literal";
        case Convention::effective_hermitian: return "effective_hermitian";
        case Convention::appendix_oracle: return "appendix_oracle";
    }
    throw std::logic_error("unknown convention");
}

Convention parse_convention(std::string_view text) {
    if (text == "matrix_literal") return Convention::matrix_literal;
    if (text == "effective_hermitian") return Convention::effective_hermitian;
    if (text == "appendix_oracle") return Convention::appendix_oracle;
    throw std::invalid_argument("parse_convention: unknown convention '" + std::string(text) + "'");
}

std::string to_string(OperatorKind k) {
    switch (k) {
        case OperatorKind::position: return "pi";
        case OperatorKind::sigma_zz: return "sigma_zz";
        case OperatorKind::sigma_zx: return "sigma_zx";
    }
    throw std::logic_error("unknown operator kind");
}

OperatorKind parse_operator_kind(std::string_view text) {
    if (text == "pi" || text == "position") return OperatorKind::position;
    if (text == "sigma_zz") return OperatorKind::sigma_zz;
    if (text == "sigma_zx") return OperatorKind::sigma_zx;
    throw std::invalid_argument("parse_operator_kind: expected pi|sigma_zz|sigma_zx, got '" +
                                std::string(text) + "'");
}

const std::vector<ArmSelector>& canonical_selectors() {
    static const std::vector<ArmSelector> sels = {
        {1, 3}, {1, 4}, {2, 3}, {2, 4}, {1, 0}, {2, 0}, {0, 3}, {0, 4},
    };
    return sels;
}

std::string to_string(const ArmSelector& sel) {
    std::string s;
    s += sel.left == 0 ? '.' : char('0' + sel.left);
    s += sel.right == 0 ? '.' : char('0' + sel.right);
    return s;
}

ArmSelector parse_arm_selector(std::string_view text) {
    if (text.size() != 2) throw std::invalid_argument("parse_arm_selector: expected two characters");
    ArmSelector sel;
    sel.left = text[0] == '.' ? 0 : text[0] - '0';
    sel.right = text[1] == '.' ? 0 : text[1] - '0';
    validate(sel);
    return sel;
}

void validate(const ArmSelector& sel) {
    if (sel.left != 0 && sel.left != 1 && sel.left != 2)
        throw std::invalid_argument("ArmSelector: left arm must be 1, 2 or '.'");
    if (sel.right != 0 && sel.right != 3 && sel.right != 4)
        throw std::invalid_argument("ArmSelector: right arm must be 3, 4 or '.'");
    if (sel.left == 0 && sel.right == 0)
        throw std::invalid_argument("ArmSelector: at most one side may be marginal");
}

std::vector<PathPair> covered_paths(const ArmSelector& sel) {
    validate(sel);
    std::vector<PathPair> out;
    for (int left : sel.left == 0 ? std::vector<int>{1, 2} : std::vector<int>{sel.left})
        for (int right : sel.right == 0 ? std::vector<int>{3, 4} : std::vector<int>{sel.right})
            out.push_back(path_from_arms(left, right));
    return out;
}

LinearOperator make_operator(Mat16 entries) {
    bool sym = entries.is_symmetric();
    return {std::move(entries), sym};
}

Mat4 pol_projector_hv_vh() {
    Mat4 m;
    m(static_cast<int>(PolPair::HV), static_cast<int>(PolPair::HV)) = kOne;
    m(static_cast<int>(PolPair::VH), static_cast<int>(PolPair::VH)) = kOne;
    return m;
}

Mat4 pm_conjugate(const Mat4& diag_basis_form) {
    // W maps diagonal-basis coordinates to HV coordinates; W = W^T = W^-1.
    static const Mat4 w = [] {
        Mat4 m;
        const AlgebraicScalar half{Rational(1, 2)};
        const int sgn[2][2] = {{1, 1}, {1, -1}};
        for (int r1 = 0; r1 < 2; ++r1)
            for (int r2 = 0; r2 < 2; ++r2)
                for (int c1 = 0; c1 < 2; ++c1)
                    for (int c2 = 0; c2 < 2; ++c2)
                        m(r1 * 2 + r2, c1 * 2 + c2) = sgn[r1][c1] * sgn[r2][c2] > 0 ? half : -half;
        return m;
    }();
    return w * diag_basis_form * w;
}

Mat4 sigma_zz_matrix_hv() {
    Mat4 d;
    d(0, 0) = kOne;
    d(1, 1) = -kOne;
    d(2, 2) = -kOne;
    d(3, 3) = kOne;
    return pm_conjugate(d);
}

Mat4 sigma_zx_matrix_hv() {
    Mat4 d;
    d(0, 1) = kOne;
    d(1, 0) = kOne;
    d(2, 3) = -kOne;
    d(3, 2) = -kOne;
    return pm_conjugate(d);
}

Mat4 sigma_zx_effective_hv() {
    Mat4 m;
    m(static_cast<int>(PolPair::HH), static_cast<int>(PolPair::HH)) = kOne;
    m(static_cast<int>(PolPair::HV), static_cast<int>(PolPair::HV)) = -kOne;
    m(static_cast<int>(PolPair::VH), static_cast<int>(PolPair::VH)) = kOne;
    m(static_cast<int>(PolPair::VV), static_cast<int>(PolPair::VV)) = -kOne;
    return m;
}

namespace {

/// Reduced action on the pre-selected state: c * sum over covered paths of
/// |ij> (x) |pol>, with (c, pol) = (1/2, A) for position and sigma_zz and
/// (-1/2, B) for sigma_zx.
Vec16 appendix_action(OperatorKind kind, const ArmSelector& sel) {
    const Vec4 pol = kind == OperatorKind::sigma_zx ? bell_b() : bell_a();
    const AlgebraicScalar coeff = kind == OperatorKind::sigma_zx ? -kHalf : kHalf;
    Vec16 v;
    for (PathPair p : covered_paths(sel)) v = v + coeff * embed_pol_at_path(p, pol);
    return v;
}

Observable build(OperatorKind kind, const ArmSelector& sel, Convention conv) {
    validate(sel);
    if (conv == Convention::appendix_oracle) {
        return ActionTable{kind, sel, appendix_action(kind, sel)};
    }
    const Mat4 projector = path_projector(covered_paths(sel));
    Mat4 pol_factor;
    bool expect_hermitian = true;
    switch (kind) {
        case OperatorKind::position:
            pol_factor = pol_projector_hv_vh();
            break;
        case OperatorKind::sigma_zz:
            pol_factor = pol_projector_hv_vh() * sigma_zz_matrix_hv();
            break;
        case OperatorKind::sigma_zx:
            if (conv == Convention::effective_hermitian) {
                pol_factor = pol_projector_hv_vh() * sigma_zx_effective_hv();
            } else {
                // The literal reading does not commute with the HV/VH
                // projector; the composite is a nilpotent, non-symmetric
                // matrix. Kept as-is so the discrepancy is visible.
                pol_factor = pol_projector_hv_vh() * sigma_zx_matrix_hv();
                expect_hermitian = false;
            }
            break;
    }
    LinearOperator op = make_operator(tensor_embed(projector, pol_factor));
    if (expect_hermitian && !op.hermitian) {
        throw std::logic_error("observable construction: expected a symmetric matrix for " +
                               to_string(kind) + "^" + to_string(sel));
    }
    return op;
}

}  // namespace

Observable position_op(const ArmSelector& sel, Convention conv) {
    return build(OperatorKind::position, sel, conv);
}

Observable sigma_op(OperatorKind kind, const ArmSelector& sel, Convention conv) {
    if (kind == OperatorKind::position) {
        throw std::invalid_argument("sigma_op: kind must be sigma_zz or sigma_zx");
    }
    return build(kind, sel, conv);
}

Observable make_observable(OperatorKind kind, const ArmSelector& sel, Convention conv) {
    return build(kind, sel, conv);
}

Vec16 action_on(const Observable& obs, const Vec16& state) {
    if (const auto* op = std::get_if<LinearOperator>(&obs)) {
        return apply(op->entries, state);
    }
    const auto& table = std::get<ActionTable>(obs);
    static const Vec16 psi = make_preselected().vector;
    if (!(state == psi)) {
        throw std::domain_error(
            "action_on: the appendix_oracle convention defines actions only on the canonical "
            "pre-selected state");
    }
    return table.action_on_psi;
}

const LinearOperator* as_matrix(const Observable& obs) { return std::get_if<LinearOperator>(&obs); }

LinearOperator matrix_observable(OperatorKind kind, const ArmSelector& sel, Convention conv) {
    Observable obs = make_observable(kind, sel, conv);
    if (const LinearOperator* m = as_matrix(obs)) return *m;
    throw std::invalid_argument("matrix_observable: " + to_string(conv) +
                                " provides action tables, not matrices");
}

std::optional<Spectrum> exact_spectrum(const LinearOperator& op) {
    const Mat16& m = op.entries;
    if (m.is_zero()) return Spectrum{0, 16, 0};
    const Mat16 m2 = m * m;
    if (m2.is_zero()) return Spectrum{0, 16, 0};  // nilpotent: all eigenvalues vanish
    if (m2 * m == m) {
        // Eigenvalues lie in {-1, 0, +1}; tr M = n+ - n-, tr M^2 = n+ + n-.
        int t1 = to_integer_checked(m.trace(), "trace");
        int t2 = to_integer_checked(m2.trace(), "squared trace");
        if ((t2 + t1) % 2 != 0 || t2 < std::abs(t1) || t2 > 16) {
            throw std::logic_error("exact_spectrum: inconsistent traces");
        }
        Spectrum s;
        s.n_plus = (t2 + t1) / 2;
        s.n_minus = (t2 - t1) / 2;
        s.n_zero = 16 - s.n_plus - s.n_minus;
        return s;
    }
    return std::nullopt;
}

DiscrepancyReport convention_discrepancy_report() {
    static const Vec16 psi = make_preselected().vector;
    static constexpr Convention conventions[] = {Convention::matrix_literal,
                                                 Convention::effective_hermitian,
                                                 Convention::appendix_oracle};
    static constexpr OperatorKind kinds[] = {OperatorKind::position, OperatorKind::sigma_zz,
                                             OperatorKind::sigma_zx};
    DiscrepancyReport report;
    for (OperatorKind kind : kinds) {
        for (const ArmSelector& sel : canonical_selectors()) {
            Vec16 actions[3];
            for (int c = 0; c < 3; ++c) {
                Observable obs = make_observable(kind, sel, conventions[c]);
                actions[c] = action_on(obs, psi);
                if (const LinearOperator* m = as_matrix(obs); m && !m->hermitian) {
                    report.non_hermitian.push_back({kind, sel, conventions[c], false});
                }
            }
            for (int a = 0; a < 3; ++a)
                for (int b = a + 1; b < 3; ++b) {
                    Vec16 diff = actions[a] - actions[b];
                    if (!diff.is_zero()) {
                        report.differences.push_back(
                            {kind, sel, conventions[a], conventions[b], diff});
                    }
                }
        }
    }
    return report;
}

}  // namespace cheshire
