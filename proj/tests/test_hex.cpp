#include "doctest.h"

#include <algorithm>
#include <set>

#include "psi/hex.hpp"

using namespace psi;

TEST_CASE("hex distance") {
    CHECK(hex_distance({0, 0}, {0, 0}) == 0);
    CHECK(hex_distance({0, 0}, {1, 0}) == 1);
    CHECK(hex_distance({0, 0}, {0, 1}) == 1);
    CHECK(hex_distance({0, 0}, {1, -1}) == 1);
    CHECK(hex_distance({0, 0}, {1, 1}) == 2);
    CHECK(hex_distance({0, 0}, {-2, 3}) == 3);
    CHECK(hex_distance({0, 0}, {3, -5}) == 5);
    CHECK(hex_distance({2, -1}, {-1, 2}) == 3);
    // symmetry and translation invariance
    CHECK(hex_distance({4, -2}, {1, 1}) == hex_distance({1, 1}, {4, -2}));
    CHECK(hex_distance({4, -2}, {1, 1}) == hex_distance({3, -3}, {0, 0}));
}

TEST_CASE("neighbors are the six unit-distance tiles, ordered") {
    auto n = hex_neighbors({0, 0});
    REQUIRE(n.size() == 6);
    CHECK(std::is_sorted(n.begin(), n.end()));
    for (HexCoord c : n) CHECK(hex_distance({0, 0}, c) == 1);
    std::set<HexCoord> uniq(n.begin(), n.end());
    CHECK(uniq.size() == 6);

    auto m = hex_neighbors({3, -2});
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(m[i].q == n[i].q + 3);
        CHECK(m[i].r == n[i].r - 2);
    }
}

TEST_CASE("disc sizes follow 1 + 3r(r+1)") {
    for (int r = 0; r <= 4; ++r) {
        auto d = hex_disc({2, 2}, r);
        CHECK(static_cast<int>(d.size()) == 1 + 3 * r * (r + 1));
        CHECK(std::is_sorted(d.begin(), d.end()));
        for (HexCoord c : d) CHECK(hex_distance({2, 2}, c) <= r);
    }
}

TEST_CASE("offset to axial conversion (odd rows shifted)") {
    CHECK(offset_to_axial(0, 0) == HexCoord{0, 0});
    CHECK(offset_to_axial(3, 0) == HexCoord{3, 0});
    CHECK(offset_to_axial(0, 1) == HexCoord{0, 1});
    CHECK(offset_to_axial(0, 2) == HexCoord{-1, 2});
    CHECK(offset_to_axial(5, 4) == HexCoord{3, 4});
    CHECK(offset_to_axial(5, 5) == HexCoord{3, 5});

    // neighbouring offset columns stay adjacent after conversion
    for (int row = 0; row < 4; ++row)
        for (int col = 0; col < 4; ++col) {
            HexCoord a = offset_to_axial(col, row);
            CHECK(hex_distance(a, offset_to_axial(col + 1, row)) == 1);
            CHECK(hex_distance(a, offset_to_axial(col, row + 1)) == 1);
        }
}
