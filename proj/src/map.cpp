#include "psi/map.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "psi/util.hpp"

namespace psi {

using nlohmann::json;

const char* to_string(TileKind t) {
    switch (t) {
    case TileKind::Grassland: return "grassland";
    case TileKind::Mountain: return "mountain";
    case TileKind::Forest: return "forest";
    case TileKind::Ocean: return "ocean";
    }
    return "?";
}

const char* to_string(RegionKind r) {
    switch (r) {
    case RegionKind::None: return "none";
    case RegionKind::Spawn1: return "spawn1";
    case RegionKind::Contested: return "contested";
    case RegionKind::Spawn2: return "spawn2";
    }
    return "?";
}

namespace {

TileKind tile_from_string(const std::string& s, const std::string& origin) {
    if (s == "grassland") return TileKind::Grassland;
    if (s == "mountain") return TileKind::Mountain;
    if (s == "forest") return TileKind::Forest;
    if (s == "ocean") return TileKind::Ocean;
    throw ConfigError(origin + ": unknown tile kind '" + s + "'");
}

}  // namespace

WorldMap WorldMap::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open map file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str(), path);
}

WorldMap WorldMap::from_json_text(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(origin + ": " + e.what());
    }

    WorldMap m;
    try {
        m.name_ = j.value("name", std::string("unnamed"));
        m.width_ = j.at("width").get<int>();
        m.height_ = j.at("height").get<int>();
        if (m.width_ <= 0 || m.height_ <= 0)
            throw ConfigError(origin + ": non-positive dimensions");
        TileKind fill = tile_from_string(j.value("default_tile", "grassland"), origin);
        m.tiles_.assign(static_cast<std::size_t>(m.width_) * m.height_, fill);

        for (const auto& layer : j.value("terrain", json::array())) {
            TileKind kind = tile_from_string(layer.at("tile").get<std::string>(), origin);
            for (const auto& r : layer.at("rects")) {
                int c0 = r.at(0), r0 = r.at(1), c1 = r.at(2), r1 = r.at(3);
                for (int row = r0; row <= r1; ++row)
                    for (int col = c0; col <= c1; ++col) {
                        if (col < 0 || col >= m.width_ || row < 0 || row >= m.height_)
                            throw ConfigError(origin + ": terrain rect out of bounds");
                        m.tiles_[static_cast<std::size_t>(row) * m.width_ + col] = kind;
                    }
            }
        }

        auto rect = [&](const json& r) {
            Rect out;
            out.col0 = r.at(0);
            out.row0 = r.at(1);
            out.col1 = r.at(2);
            out.row1 = r.at(3);
            return out;
        };
        const auto& regions = j.at("regions");
        m.spawn1_ = rect(regions.at("spawn1"));
        m.contested_ = rect(regions.at("contested"));
        m.spawn2_ = rect(regions.at("spawn2"));

        for (const auto& p : j.at("food_spawn_points")) {
            HexCoord c = offset_to_axial(p.at(0), p.at(1));
            m.food_points_.push_back(c);
        }
        std::sort(m.food_points_.begin(), m.food_points_.end());
    } catch (const json::exception& e) {
        throw ConfigError(origin + ": " + e.what());
    }

    m.validate();
    return m;
}

void WorldMap::validate() const {
    for (HexCoord c : food_points_) {
        if (!in_bounds(c)) throw ConfigError("map: food spawn point out of bounds");
        if (tile(c) != TileKind::Grassland)
            throw ConfigError("map: food spawn point not on grassland");
    }
    for (std::size_t i = 1; i < food_points_.size(); ++i)
        if (food_points_[i] == food_points_[i - 1])
            throw ConfigError("map: duplicate food spawn point");

    int spawn1 = 0, spawn2 = 0;
    for (int row = 0; row < height_; ++row)
        for (int col = 0; col < width_; ++col) {
            int overlap = spawn1_.contains(col, row) + contested_.contains(col, row) +
                          spawn2_.contains(col, row);
            if (overlap > 1) throw ConfigError("map: overlapping regions");
            HexCoord c = offset_to_axial(col, row);
            if (spawn1_.contains(col, row) && accessible(c)) ++spawn1;
            if (spawn2_.contains(col, row) && accessible(c)) ++spawn2;
        }
    if (spawn1 == 0 || spawn2 == 0)
        throw ConfigError("map: spawn region has no accessible tile");
}

std::size_t WorldMap::index_of(HexCoord c) const {
    int col, row;
    axial_to_offset(c, col, row);
    return static_cast<std::size_t>(row) * width_ + col;
}

bool WorldMap::in_bounds(HexCoord c) const {
    int col, row;
    axial_to_offset(c, col, row);
    return col >= 0 && col < width_ && row >= 0 && row < height_;
}

TileKind WorldMap::tile(HexCoord c) const { return tiles_[index_of(c)]; }

bool WorldMap::accessible(HexCoord c) const {
    return in_bounds(c) && tile(c) == TileKind::Grassland;
}

RegionKind WorldMap::region(HexCoord c) const {
    if (!in_bounds(c)) return RegionKind::None;
    int col, row;
    axial_to_offset(c, col, row);
    if (spawn1_.contains(col, row)) return RegionKind::Spawn1;
    if (contested_.contains(col, row)) return RegionKind::Contested;
    if (spawn2_.contains(col, row)) return RegionKind::Spawn2;
    return RegionKind::None;
}

std::vector<HexCoord> WorldMap::region_tiles(RegionKind r) const {
    std::vector<HexCoord> out;
    for (int row = 0; row < height_; ++row)
        for (int col = 0; col < width_; ++col) {
            HexCoord c = offset_to_axial(col, row);
            if (region(c) == r && accessible(c)) out.push_back(c);
        }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<HexCoord> WorldMap::tiles_within(HexCoord center, int radius) const {
    std::vector<HexCoord> out;
    for (HexCoord c : hex_disc(center, radius))
        if (in_bounds(c)) out.push_back(c);
    return out;
}

std::vector<HexCoord> WorldMap::all_accessible() const {
    std::vector<HexCoord> out;
    for (int row = 0; row < height_; ++row)
        for (int col = 0; col < width_; ++col) {
            HexCoord c = offset_to_axial(col, row);
            if (accessible(c)) out.push_back(c);
        }
    std::sort(out.begin(), out.end());
    return out;
}

int WorldMap::food_at(HexCoord c) const {
    auto it = food_present_.find(c);
    return it == food_present_.end() ? 0 : it->second;
}

void WorldMap::add_food(HexCoord c, int units) { food_present_[c] += units; }

bool WorldMap::take_food(HexCoord c) {
    auto it = food_present_.find(c);
    if (it == food_present_.end() || it->second <= 0) return false;
    if (--it->second == 0) food_present_.erase(it);
    return true;
}

long WorldMap::total_ground_food() const {
    long sum = 0;
    for (const auto& [c, n] : food_present_) sum += n;
    return sum;
}

}  // namespace psi
