#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "psi/hex.hpp"

namespace psi {

enum class TileKind { Grassland, Mountain, Forest, Ocean };
enum class RegionKind { None, Spawn1, Contested, Spawn2 };

const char* to_string(TileKind t);
const char* to_string(RegionKind r);

// Rectangular hex map in odd-r offset framing. Immutable after load except
// for the per-tile food counts, which only the world stepper mutates.
class WorldMap {
public:
    static WorldMap load(const std::string& path);
    static WorldMap from_json_text(const std::string& text, const std::string& origin);

    const std::string& name() const { return name_; }
    int width() const { return width_; }
    int height() const { return height_; }

    bool in_bounds(HexCoord c) const;
    TileKind tile(HexCoord c) const;  // pre: in_bounds
    // Agents can stand on a tile iff it is in bounds and grassland.
    bool accessible(HexCoord c) const;
    RegionKind region(HexCoord c) const;

    const std::vector<HexCoord>& food_spawn_points() const { return food_points_; }
    // Accessible tiles of one region, lexicographic order.
    std::vector<HexCoord> region_tiles(RegionKind r) const;
    // Disc around `center` clipped to the map bounds, lexicographic order.
    std::vector<HexCoord> tiles_within(HexCoord center, int radius) const;
    std::vector<HexCoord> all_accessible() const;

    // Food on the ground. Mutated exclusively by the world stepper.
    int food_at(HexCoord c) const;
    void add_food(HexCoord c, int units = 1);
    bool take_food(HexCoord c);  // false if the tile was empty
    long total_ground_food() const;
    const std::map<HexCoord, int>& food_tiles() const { return food_present_; }

private:
    struct Rect {
        int col0 = 0, row0 = 0, col1 = -1, row1 = -1;
        bool contains(int col, int row) const {
            return col >= col0 && col <= col1 && row >= row0 && row <= row1;
        }
    };

    void validate() const;
    std::size_t index_of(HexCoord c) const;

    std::string name_;
    int width_ = 0;
    int height_ = 0;
    std::vector<TileKind> tiles_;  // row-major over offset (col, row)
    Rect spawn1_, contested_, spawn2_;
    std::vector<HexCoord> food_points_;
    std::map<HexCoord, int> food_present_;
};

// Shortest path over tiles that are accessible and satisfy `known`;
// BFS expanding neighbors in lexicographic order, so ties resolve
// deterministically. Returns the full tile sequence including `start` and
// `goal`, or nothing if unreachable. `start` is exempt from the predicate.
template <class KnownFn>
std::optional<std::vector<HexCoord>> find_path(const WorldMap& map, KnownFn&& known,
                                               HexCoord start, HexCoord goal) {
    if (!map.accessible(goal) || !known(goal)) return std::nullopt;
    if (start == goal) return std::vector<HexCoord>{start};
    std::map<HexCoord, HexCoord> parent;
    std::vector<HexCoord> frontier{start}, next;
    parent.emplace(start, start);
    while (!frontier.empty()) {
        next.clear();
        for (HexCoord cur : frontier) {
            for (HexCoord n : hex_neighbors(cur)) {
                if (parent.count(n)) continue;
                if (!map.accessible(n) || !known(n)) continue;
                parent.emplace(n, cur);
                if (n == goal) {
                    std::vector<HexCoord> path{goal};
                    for (HexCoord at = cur; at != start; at = parent.at(at))
                        path.push_back(at);
                    path.push_back(start);
                    std::reverse(path.begin(), path.end());
                    return path;
                }
                next.push_back(n);
            }
        }
        std::sort(next.begin(), next.end());  // lex frontier order per level
        frontier.swap(next);
    }
    return std::nullopt;
}

}  // namespace psi
