#pragma once

#include <string>

#include "cheshire/linalg.hpp"

namespace cheshire {

struct NamedState {
    std::string name;
    Vec16 vector;
    bool normalized = false;
};

enum class PostSelection { phi1, phi2 };

std::string to_string(PostSelection post);
PostSelection parse_postselection(std::string_view text);

/// Pre-selected state: equal superposition of the four path pairs carrying the
/// symmetric Bell polarization state. Each of the eight (path, HV|VH)
/// amplitudes equals sqrt2/4; the norm is exactly 1.
NamedState make_preselected();

/// Post-selected states phi1 and phi2, exactly normalized.
NamedState make_postselected(PostSelection which);

/// Polarization-space (4-dim) Bell states: A = (HV+VH)/sqrt2, B = (HV-VH)/sqrt2.
Vec4 bell_a();
Vec4 bell_b();

/// Single joint-polarization basis vector |xy>.
Vec4 pol_basis_vector(PolPair pol);

/// |ij> (x) |pol>: a path-definite 16-dim embedding of a polarization state.
Vec16 embed_pol_at_path(PathPair path, const Vec4& pol);

enum class PmDirection { hv_to_pm, pm_to_hv };

/// Change of joint polarization basis between (HH,HV,VH,VV) and the diagonal
/// basis (++,+-,-+,--) built from |+> = (H+V)/sqrt2, |-> = (H-V)/sqrt2.
/// The transform is orthogonal and involutive, so both directions coincide;
/// the direction argument documents intent at call sites.
Vec4 basis_change_pm(const Vec4& v, PmDirection direction);

struct ContradictionReport {
    Vec16 psi_projection;   // (|14> + |23>)/sqrt2 (x) |A>
    Vec16 phi1_projection;  // (|14> - |23>)/sqrt2 (x) |B>
    AlgebraicScalar overlap;
    bool orthogonal = false;
};

/// The "photons on different sides" argument: project the pre- and
/// post-selected states onto the (14)/(23) path sector and show the results
/// are exactly orthogonal, so that sector is never post-selected.
ContradictionReport postselection_contradiction_check();

}  // namespace cheshire
