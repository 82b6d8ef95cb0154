#pragma once

#include <array>
#include <compare>
#include <cstdlib>
#include <vector>

namespace psi {

// Axial hex coordinate (pointy-top). Lexicographic (q, r) order is the
// canonical tie-break order everywhere in the simulation.
struct HexCoord {
    int q = 0;
    int r = 0;

    auto operator<=>(const HexCoord&) const = default;
};

inline int hex_distance(HexCoord a, HexCoord b) {
    int dq = a.q - b.q;
    int dr = a.r - b.r;
    int ds = dq + dr;
    return std::max({std::abs(dq), std::abs(dr), std::abs(ds)});
}

// The six neighbor offsets in lexicographic order.
inline constexpr std::array<HexCoord, 6> kHexDirections{{
    {-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0},
}};

inline std::array<HexCoord, 6> hex_neighbors(HexCoord c) {
    std::array<HexCoord, 6> out{};
    for (std::size_t i = 0; i < 6; ++i)
        out[i] = {c.q + kHexDirections[i].q, c.r + kHexDirections[i].r};
    return out;
}

// All coordinates within `radius` of `center` (the center included),
// in lexicographic order. Size is 1 + 3 r (r + 1).
std::vector<HexCoord> hex_disc(HexCoord center, int radius);

// Conversion between axial and odd-r offset coordinates (map files use
// offset col/row; the simulation uses axial).
inline HexCoord offset_to_axial(int col, int row) {
    return {col - (row - (row & 1)) / 2, row};
}

inline void axial_to_offset(HexCoord c, int& col, int& row) {
    col = c.q + (c.r - (c.r & 1)) / 2;
    row = c.r;
}

}  // namespace psi
