#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ortho {

// Axis convention (shared by every module):
//   larger x = further left, larger y = further front, larger z = higher.
// A column of height H occupies z = 0 .. H-1 (blocks never float).

inline constexpr int kDefaultMaxHeight = 5;

enum class Color { Red, Blue, Green, Yellow, Purple, Orange };

inline constexpr Color kPalette[] = {Color::Red,    Color::Blue,   Color::Green,
                                     Color::Yellow, Color::Purple, Color::Orange};
inline constexpr int kPaletteSize = 6;

const std::string& color_name(Color c);
std::optional<Color> color_from_name(const std::string& name);

// W x L grid of stack heights, stored x-major (heights[x*depth + y]).
class HeightMap {
public:
    HeightMap(int width, int depth)
        : width_(width), depth_(depth),
          heights_(static_cast<std::size_t>(width) * static_cast<std::size_t>(depth), 0) {
        if (width <= 0 || depth <= 0)
            throw std::invalid_argument("HeightMap: extents must be positive");
    }

    HeightMap(int width, int depth, std::vector<int> heights)
        : width_(width), depth_(depth), heights_(std::move(heights)) {
        if (width <= 0 || depth <= 0)
            throw std::invalid_argument("HeightMap: extents must be positive");
        if (heights_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(depth))
            throw std::invalid_argument("HeightMap: height array shape mismatch");
        for (int h : heights_)
            if (h < 0) throw std::invalid_argument("HeightMap: negative height");
    }

    // Convenience: rows[x][y], x-major.
    static HeightMap from_rows(const std::vector<std::vector<int>>& rows);

    int width() const { return width_; }
    int depth() const { return depth_; }

    int at(int x, int y) const { return heights_[index(x, y)]; }
    void set(int x, int y, int h) {
        if (h < 0) throw std::invalid_argument("HeightMap: negative height");
        heights_[index(x, y)] = h;
    }

    const std::vector<int>& raw() const { return heights_; }

    int total_blocks() const;
    int max_height() const;

    bool operator==(const HeightMap& other) const = default;

private:
    std::size_t index(int x, int y) const {
        if (x < 0 || x >= width_ || y < 0 || y >= depth_)
            throw std::out_of_range("HeightMap: cell out of range");
        return static_cast<std::size_t>(x) * static_cast<std::size_t>(depth_) +
               static_cast<std::size_t>(y);
    }

    int width_;
    int depth_;
    std::vector<int> heights_;
};

// HeightMap plus a per-voxel color; the color domain is exactly the set of
// occupied voxels.
class BlockScene {
public:
    BlockScene(HeightMap hm, std::vector<Color> colors);

    // All voxels take a single color.
    static BlockScene uniform(HeightMap hm, Color c);

    const HeightMap& heightmap() const { return hm_; }
    int width() const { return hm_.width(); }
    int depth() const { return hm_.depth(); }

    bool occupied(int x, int y, int z) const {
        return z >= 0 && z < hm_.at(x, y);
    }

    Color color_at(int x, int y, int z) const;

    // Colors in (x, y, z) lexicographic voxel order.
    const std::vector<Color>& colors() const { return colors_; }

    bool operator==(const BlockScene& other) const = default;

private:
    std::size_t voxel_index(int x, int y, int z) const;

    HeightMap hm_;
    std::vector<Color> colors_;        // ordered by (x, y, z)
    std::vector<std::size_t> offsets_; // per-cell start into colors_
};

// The three orthographic views V(H): top occupancy, per-column front
// maxima, per-row side maxima.
struct OrthoViews {
    int width = 0;
    int depth = 0;
    std::vector<bool> top;  // x-major occupancy, size W*L
    std::vector<int> front; // length W, M^c_x
    std::vector<int> side;  // length L, M^r_y

    bool top_at(int x, int y) const {
        return top[static_cast<std::size_t>(x) * static_cast<std::size_t>(depth) +
                   static_cast<std::size_t>(y)];
    }

    bool operator==(const OrthoViews& other) const = default;
};

enum class View { Front, Left, Top };

const std::string& view_name(View v);

struct VoxelRecord {
    int x = 0;
    int y = 0;
    int z = 0;
    Color color = Color::Red;
    bool visible = true;

    bool operator==(const VoxelRecord& other) const = default;
};

OrthoViews project_views(const HeightMap& hm);
inline OrthoViews project_views(const BlockScene& scene) {
    return project_views(scene.heightmap());
}

int total_count(const BlockScene& scene);

// Every occupied voxel exactly once; visible=true iff the voxel is nearest
// to the camera along the view's depth axis (front: max y per (x,z);
// left: max x per (y,z); top: z = H-1).
std::vector<VoxelRecord> visible_voxels(const BlockScene& scene, View view);

// --- serialization (canonical JSON, lexicographic keys) ---
std::string serialize_scene(const BlockScene& scene);
BlockScene parse_scene(const std::string& text);

std::string serialize_views(const OrthoViews& views);
OrthoViews parse_views(const std::string& text);

}  // namespace ortho
