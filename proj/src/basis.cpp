#include "cheshire/basis.hpp"

#include <stdexcept>

namespace cheshire {

PathPair path_from_arms(int left, int right) {
    if ((left != 1 && left != 2) || (right != 3 && right != 4)) {
        throw std::invalid_argument("path_from_arms: left must be 1|2 and right 3|4");
    }
    return static_cast<PathPair>((left - 1) * 2 + (right - 3));
}

std::string to_string(PathPair p) {
    return std::to_string(left_arm(p)) + std::to_string(right_arm(p));
}

std::string to_string(PolPair p) {
    static constexpr const char* names[] = {"HH", "HV", "VH", "VV"};
    return names[static_cast<int>(p)];
}

std::string to_string(BasisLabel label) { return to_string(label.path) + "," + to_string(label.pol); }

PathPair parse_path(std::string_view text) {
    if (text.size() == 2 && (text[0] == '1' || text[0] == '2') && (text[1] == '3' || text[1] == '4')) {
        return path_from_arms(text[0] - '0', text[1] - '0');
    }
    throw std::invalid_argument("parse_path: expected one of 13|14|23|24, got '" + std::string(text) + "'");
}

PolPair parse_pol(std::string_view text) {
    for (PolPair p : kAllPols) {
        if (to_string(p) == text) return p;
    }
    throw std::invalid_argument("parse_pol: expected one of HH|HV|VH|VV, got '" + std::string(text) + "'");
}

}  // namespace cheshire
