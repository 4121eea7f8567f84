#include "cheshire/linalg.hpp"

namespace cheshire {

Mat16 tensor_embed(const Mat4& path_factor, const Mat4& pol_factor) {
    Mat16 out;
    for (std::size_t pr = 0; pr < 4; ++pr)
        for (std::size_t pc = 0; pc < 4; ++pc) {
            if (path_factor(pr, pc).is_zero()) continue;
            for (std::size_t qr = 0; qr < 4; ++qr)
                for (std::size_t qc = 0; qc < 4; ++qc)
                    out(pr * 4 + qr, pc * 4 + qc) = path_factor(pr, pc) * pol_factor(qr, qc);
        }
    return out;
}

Vec16 tensor_embed(const Vec4& path_part, const Vec4& pol_part) {
    Vec16 out;
    for (std::size_t p = 0; p < 4; ++p) {
        if (path_part[p].is_zero()) continue;
        for (std::size_t q = 0; q < 4; ++q) out[p * 4 + q] = path_part[p] * pol_part[q];
    }
    return out;
}

}  // namespace cheshire
