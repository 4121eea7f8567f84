#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>

namespace cheshire {

/// Two-photon path label: left-interferometer arm (1 or 2) paired with
/// right-interferometer arm (3 or 4). Rank order (13, 14, 23, 24) is normative
/// for all serialization.
enum class PathPair : int { p13 = 0, p14 = 1, p23 = 2, p24 = 3 };

/// Joint polarization label, rank order (HH, HV, VH, VV), normative.
enum class PolPair : int { HH = 0, HV = 1, VH = 2, VV = 3 };

inline constexpr std::array<PathPair, 4> kAllPaths = {PathPair::p13, PathPair::p14, PathPair::p23,
                                                      PathPair::p24};
inline constexpr std::array<PolPair, 4> kAllPols = {PolPair::HH, PolPair::HV, PolPair::VH,
                                                    PolPair::VV};

struct BasisLabel {
    PathPair path;
    PolPair pol;
    bool operator==(const BasisLabel&) const = default;
};

/// index = path_rank * 4 + pol_rank, bijective with 0..15.
constexpr std::size_t index_of(PathPair path, PolPair pol) {
    return static_cast<std::size_t>(path) * 4 + static_cast<std::size_t>(pol);
}
constexpr std::size_t index_of(BasisLabel label) { return index_of(label.path, label.pol); }

constexpr BasisLabel label_of(std::size_t index) {
    return {static_cast<PathPair>(index / 4), static_cast<PolPair>(index % 4)};
}

/// Left arm (1 or 2) and right arm (3 or 4) of a path pair.
constexpr int left_arm(PathPair p) { return static_cast<int>(p) / 2 + 1; }
constexpr int right_arm(PathPair p) { return static_cast<int>(p) % 2 + 3; }

/// Path pair from its arms; arms must be valid (left in {1,2}, right in {3,4}).
PathPair path_from_arms(int left, int right);

std::string to_string(PathPair p);
std::string to_string(PolPair p);
std::string to_string(BasisLabel label);

PathPair parse_path(std::string_view text);
PolPair parse_pol(std::string_view text);

}  // namespace cheshire
