#include "psi/hex.hpp"

namespace psi {

std::vector<HexCoord> hex_disc(HexCoord center, int radius) {
    std::vector<HexCoord> out;
    out.reserve(static_cast<std::size_t>(1 + 3 * radius * (radius + 1)));
    for (int dq = -radius; dq <= radius; ++dq) {
        int lo = std::max(-radius, -dq - radius);
        int hi = std::min(radius, -dq + radius);
        for (int dr = lo; dr <= hi; ++dr)
            out.push_back({center.q + dq, center.r + dr});
    }
    return out;
}

}  // namespace psi
