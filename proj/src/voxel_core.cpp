#include "ortho/voxel_core.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include <nlohmann/json.hpp>

namespace ortho {

using json = nlohmann::json;

const std::string& color_name(Color c) {
    static const std::array<std::string, 6> names = {"red",    "blue",   "green",
                                                     "yellow", "purple", "orange"};
    return names[static_cast<std::size_t>(c)];
}

std::optional<Color> color_from_name(const std::string& name) {
    for (int i = 0; i < kPaletteSize; ++i)
        if (color_name(kPalette[i]) == name) return kPalette[i];
    return std::nullopt;
}

const std::string& view_name(View v) {
    static const std::array<std::string, 3> names = {"front", "left", "top"};
    return names[static_cast<std::size_t>(v)];
}

HeightMap HeightMap::from_rows(const std::vector<std::vector<int>>& rows) {
    if (rows.empty() || rows[0].empty())
        throw std::invalid_argument("HeightMap: empty row data");
    const int width = static_cast<int>(rows.size());
    const int depth = static_cast<int>(rows[0].size());
    std::vector<int> flat;
    flat.reserve(static_cast<std::size_t>(width) * static_cast<std::size_t>(depth));
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != depth)
            throw std::invalid_argument("HeightMap: ragged row data");
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return HeightMap(width, depth, std::move(flat));
}

int HeightMap::total_blocks() const {
    return std::accumulate(heights_.begin(), heights_.end(), 0);
}

int HeightMap::max_height() const {
    return heights_.empty() ? 0 : *std::max_element(heights_.begin(), heights_.end());
}

BlockScene::BlockScene(HeightMap hm, std::vector<Color> colors)
    : hm_(std::move(hm)), colors_(std::move(colors)) {
    const std::size_t total = static_cast<std::size_t>(hm_.total_blocks());
    if (colors_.size() != total)
        throw std::invalid_argument("BlockScene: color count must equal voxel count");
    offsets_.reserve(hm_.raw().size() + 1);
    std::size_t acc = 0;
    for (int h : hm_.raw()) {
        offsets_.push_back(acc);
        acc += static_cast<std::size_t>(h);
    }
    offsets_.push_back(acc);
}

BlockScene BlockScene::uniform(HeightMap hm, Color c) {
    std::vector<Color> colors(static_cast<std::size_t>(hm.total_blocks()), c);
    return BlockScene(std::move(hm), std::move(colors));
}

std::size_t BlockScene::voxel_index(int x, int y, int z) const {
    if (!occupied(x, y, z)) throw std::out_of_range("BlockScene: voxel not occupied");
    const std::size_t cell = static_cast<std::size_t>(x) * static_cast<std::size_t>(hm_.depth()) +
                             static_cast<std::size_t>(y);
    return offsets_[cell] + static_cast<std::size_t>(z);
}

Color BlockScene::color_at(int x, int y, int z) const {
    return colors_[voxel_index(x, y, z)];
}

OrthoViews project_views(const HeightMap& hm) {
    OrthoViews v;
    v.width = hm.width();
    v.depth = hm.depth();
    v.top.assign(static_cast<std::size_t>(v.width) * static_cast<std::size_t>(v.depth), false);
    v.front.assign(static_cast<std::size_t>(v.width), 0);
    v.side.assign(static_cast<std::size_t>(v.depth), 0);
    for (int x = 0; x < v.width; ++x) {
        for (int y = 0; y < v.depth; ++y) {
            const int h = hm.at(x, y);
            v.top[static_cast<std::size_t>(x) * static_cast<std::size_t>(v.depth) +
                  static_cast<std::size_t>(y)] = h > 0;
            v.front[static_cast<std::size_t>(x)] = std::max(v.front[static_cast<std::size_t>(x)], h);
            v.side[static_cast<std::size_t>(y)] = std::max(v.side[static_cast<std::size_t>(y)], h);
        }
    }
    return v;
}

int total_count(const BlockScene& scene) {
    return scene.heightmap().total_blocks();
}

std::vector<VoxelRecord> visible_voxels(const BlockScene& scene, View view) {
    const HeightMap& hm = scene.heightmap();
    std::vector<VoxelRecord> out;
    out.reserve(static_cast<std::size_t>(hm.total_blocks()));
    for (int x = 0; x < hm.width(); ++x) {
        for (int y = 0; y < hm.depth(); ++y) {
            const int h = hm.at(x, y);
            for (int z = 0; z < h; ++z) {
                bool visible = false;
                switch (view) {
                    case View::Top:
                        visible = (z == h - 1);
                        break;
                    case View::Front: {
                        // Nearest along +y among occupied voxels sharing (x, z).
                        visible = true;
                        for (int y2 = y + 1; y2 < hm.depth(); ++y2)
                            if (hm.at(x, y2) > z) { visible = false; break; }
                        break;
                    }
                    case View::Left: {
                        // Nearest along +x among occupied voxels sharing (y, z).
                        visible = true;
                        for (int x2 = x + 1; x2 < hm.width(); ++x2)
                            if (hm.at(x2, y) > z) { visible = false; break; }
                        break;
                    }
                }
                out.push_back({x, y, z, scene.color_at(x, y, z), visible});
            }
        }
    }
    return out;
}

std::string serialize_scene(const BlockScene& scene) {
    const HeightMap& hm = scene.heightmap();
    json j;
    j["width"] = hm.width();
    j["depth"] = hm.depth();
    json heights = json::array();
    for (int x = 0; x < hm.width(); ++x) {
        json row = json::array();
        for (int y = 0; y < hm.depth(); ++y) row.push_back(hm.at(x, y));
        heights.push_back(std::move(row));
    }
    j["heights"] = std::move(heights);
    json colors = json::array();
    for (int x = 0; x < hm.width(); ++x)
        for (int y = 0; y < hm.depth(); ++y)
            for (int z = 0; z < hm.at(x, y); ++z)
                colors.push_back(json::array({x, y, z, color_name(scene.color_at(x, y, z))}));
    j["colors"] = std::move(colors);
    return j.dump();
}

BlockScene parse_scene(const std::string& text) {
    const json j = json::parse(text);
    const int width = j.at("width").get<int>();
    const int depth = j.at("depth").get<int>();
    std::vector<std::vector<int>> rows;
    for (const auto& row : j.at("heights")) rows.push_back(row.get<std::vector<int>>());
    if (static_cast<int>(rows.size()) != width)
        throw std::invalid_argument("scene: heights shape mismatch");
    HeightMap hm = HeightMap::from_rows(rows);
    if (hm.depth() != depth) throw std::invalid_argument("scene: depth mismatch");

    BlockScene scene = BlockScene::uniform(hm, Color::Red);
    std::vector<Color> colors(static_cast<std::size_t>(hm.total_blocks()), Color::Red);
    std::vector<bool> seen(colors.size(), false);
    // Re-derive the voxel index the same way BlockScene lays colors out.
    std::vector<std::size_t> offsets;
    std::size_t acc = 0;
    for (int h : hm.raw()) { offsets.push_back(acc); acc += static_cast<std::size_t>(h); }
    for (const auto& entry : j.at("colors")) {
        const int x = entry.at(0).get<int>();
        const int y = entry.at(1).get<int>();
        const int z = entry.at(2).get<int>();
        auto c = color_from_name(entry.at(3).get<std::string>());
        if (!c) throw std::invalid_argument("scene: unknown color tag");
        if (z < 0 || z >= hm.at(x, y)) throw std::invalid_argument("scene: color on empty voxel");
        const std::size_t idx =
            offsets[static_cast<std::size_t>(x) * static_cast<std::size_t>(depth) +
                    static_cast<std::size_t>(y)] + static_cast<std::size_t>(z);
        colors[idx] = *c;
        seen[idx] = true;
    }
    for (bool s : seen)
        if (!s) throw std::invalid_argument("scene: missing color for occupied voxel");
    return BlockScene(std::move(hm), std::move(colors));
}

std::string serialize_views(const OrthoViews& v) {
    json j;
    json top = json::array();
    for (int x = 0; x < v.width; ++x) {
        json row = json::array();
        for (int y = 0; y < v.depth; ++y) row.push_back(v.top_at(x, y));
        top.push_back(std::move(row));
    }
    j["top"] = std::move(top);
    j["front"] = v.front;
    j["side"] = v.side;
    return j.dump();
}

OrthoViews parse_views(const std::string& text) {
    const json j = json::parse(text);
    OrthoViews v;
    v.front = j.at("front").get<std::vector<int>>();
    v.side = j.at("side").get<std::vector<int>>();
    v.width = static_cast<int>(v.front.size());
    v.depth = static_cast<int>(v.side.size());
    const auto& top = j.at("top");
    if (static_cast<int>(top.size()) != v.width)
        throw std::invalid_argument("views: top shape mismatch");
    for (const auto& row : top) {
        if (static_cast<int>(row.size()) != v.depth)
            throw std::invalid_argument("views: top shape mismatch");
        for (const auto& cell : row) v.top.push_back(cell.get<bool>());
    }
    return v;
}

}  // namespace ortho
