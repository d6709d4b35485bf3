#include "ortho/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <nlohmann/json.hpp>

#include "ortho/hash.hpp"
#include "ortho/rng.hpp"
#include "ortho/uniqueness.hpp"

namespace ortho {

using json = nlohmann::json;

const std::string& shape_name(Shape s) {
    static const std::array<std::string, 6> names = {"cube",     "sphere",  "cone",
                                                     "cylinder", "pyramid", "cuboid"};
    return names[static_cast<std::size_t>(s)];
}

const std::string& size_name(Size s) {
    static const std::array<std::string, 3> names = {"small", "medium", "large"};
    return names[static_cast<std::size_t>(s)];
}

// Sector order: counterclockwise from the front axis toward left.
const std::string& direction_name(Direction d) {
    static const std::array<std::string, 8> names = {
        "front", "front-left", "left", "back-left",
        "back",  "back-right", "right", "front-right"};
    return names[static_cast<std::size_t>(d)];
}

std::optional<Direction> direction_from_name(const std::string& name) {
    for (int i = 0; i < 8; ++i) {
        const Direction d = static_cast<Direction>(i);
        if (direction_name(d) == name) return d;
    }
    return std::nullopt;
}

Direction opposite_direction(Direction d) {
    return static_cast<Direction>((static_cast<int>(d) + 4) % 8);
}

bool DirectionLabelSet::contains(Direction d) const {
    return std::find(valid.begin(), valid.end(), d) != valid.end();
}

void SynthesisConfig::validate() const {
    if (grid_width <= 0 || grid_depth <= 0)
        throw std::invalid_argument("config: grid extents must be positive");
    if (max_height <= 0) throw std::invalid_argument("config: max_height must be positive");
    if (min_blocks < 0 || min_blocks > effective_max_blocks())
        throw std::invalid_argument("config: empty block count range");
    if (min_objects < 1 || min_objects > max_objects)
        throw std::invalid_argument("config: empty object count range");
    if (arena_extent <= 0.0) throw std::invalid_argument("config: arena extent must be positive");
    if (min_separation < 0.0) throw std::invalid_argument("config: negative separation");
    if (margin_degrees < 0.0 || margin_degrees >= 22.5)
        throw std::invalid_argument("config: margin_degrees must be in [0, 22.5)");
    if (max_attempts < 1) throw std::invalid_argument("config: max_attempts must be >= 1");
}

std::string SynthesisConfig::canonical() const {
    json j;
    j["arena_extent"] = arena_extent;
    j["distinct_attributes"] = distinct_attributes;
    j["grid_depth"] = grid_depth;
    j["grid_width"] = grid_width;
    j["margin_degrees"] = margin_degrees;
    j["max_attempts"] = max_attempts;
    j["max_blocks"] = max_blocks;
    j["max_height"] = max_height;
    j["max_objects"] = max_objects;
    j["min_blocks"] = min_blocks;
    j["min_objects"] = min_objects;
    j["min_separation"] = min_separation;
    j["seed"] = seed;
    return j.dump();
}

std::string SynthesisConfig::fingerprint() const {
    return content_hash(canonical());
}

BlockScene gen_block_scene(const SynthesisConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    const int cells = cfg.grid_width * cfg.grid_depth;
    for (int attempt = 0; attempt < cfg.max_attempts; ++attempt) {
        Rng rng(seed, "block-scene", static_cast<std::uint64_t>(attempt));
        // Sampling the density per proposal keeps both sparse and dense
        // scenes reachable; the uniqueness filter then thins the dense end.
        const double density = rng.uniform_real(0.1, 0.9);
        HeightMap hm(cfg.grid_width, cfg.grid_depth);
        int total = 0;
        for (int x = 0; x < cfg.grid_width; ++x) {
            for (int y = 0; y < cfg.grid_depth; ++y) {
                if (rng.uniform_real() >= density) continue;
                const int h = static_cast<int>(rng.uniform_int(1, cfg.max_height));
                hm.set(x, y, h);
                total += h;
            }
        }
        if (total < cfg.min_blocks || total > cfg.effective_max_blocks()) continue;
        if (!check_uniqueness(hm).unique_by_condition) continue;

        Rng crng(seed, "block-colors", static_cast<std::uint64_t>(attempt));
        std::vector<Color> colors;
        colors.reserve(static_cast<std::size_t>(total));
        for (int i = 0; i < total; ++i)
            colors.push_back(kPalette[crng.uniform_int(0, kPaletteSize - 1)]);
        return BlockScene(std::move(hm), std::move(colors));
    }
    throw SynthesisError("gen_block_scene: no accepted proposal within attempt budget (" +
                         std::to_string(cfg.max_attempts) + " attempts, " +
                         std::to_string(cells) + " cells)");
}

ObjectScene gen_object_scene(const SynthesisConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    for (int attempt = 0; attempt < cfg.max_attempts; ++attempt) {
        Rng rng(seed, "object-scene", static_cast<std::uint64_t>(attempt));
        const int n = static_cast<int>(rng.uniform_int(cfg.min_objects, cfg.max_objects));
        ObjectScene scene;
        scene.arena_extent = cfg.arena_extent;
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            ObjectInstance inst;
            inst.id = "obj" + std::to_string(i);
            bool placed = false;
            for (int t = 0; t < 100 && !placed; ++t) {
                inst.x = rng.uniform_real(0.0, cfg.arena_extent);
                inst.y = rng.uniform_real(0.0, cfg.arena_extent);
                placed = true;
                for (const auto& other : scene.instances) {
                    const double dx = inst.x - other.x;
                    const double dy = inst.y - other.y;
                    if (std::sqrt(dx * dx + dy * dy) < cfg.min_separation) {
                        placed = false;
                        break;
                    }
                }
            }
            if (!placed) { ok = false; break; }
            bool attrs_ok = false;
            for (int t = 0; t < 100 && !attrs_ok; ++t) {
                inst.shape = kShapes[rng.uniform_int(0, 5)];
                inst.color = kPalette[rng.uniform_int(0, kPaletteSize - 1)];
                inst.size = kSizes[rng.uniform_int(0, 2)];
                attrs_ok = true;
                if (cfg.distinct_attributes) {
                    for (const auto& other : scene.instances) {
                        if (other.shape == inst.shape && other.color == inst.color &&
                            other.size == inst.size) {
                            attrs_ok = false;
                            break;
                        }
                    }
                }
            }
            if (!attrs_ok) { ok = false; break; }
            scene.instances.push_back(std::move(inst));
        }
        if (ok) return scene;
    }
    throw SynthesisError("gen_object_scene: no accepted proposal within attempt budget");
}

DirectionLabelSet direction_labels(double ax, double ay, double bx, double by,
                                   double margin_degrees) {
    const double dx = ax - bx;
    const double dy = ay - by;
    if (dx == 0.0 && dy == 0.0)
        throw std::invalid_argument("direction_labels: coincident positions");
    // 0 degrees at +y (front), increasing toward +x (left); range (-180, 180].
    const double theta = std::atan2(dx, dy) * 180.0 / std::numbers::pi;
    const double shifted = theta + 22.5;
    const double sector = std::floor(shifted / 45.0);
    const int idx = ((static_cast<int>(sector) % 8) + 8) % 8;
    DirectionLabelSet out;
    out.primary = static_cast<Direction>(idx);
    out.valid.push_back(out.primary);
    const double t = shifted - sector * 45.0;  // offset into the sector, [0, 45)
    if (t <= margin_degrees) {
        out.valid.push_back(static_cast<Direction>((idx + 7) % 8));
    } else if (45.0 - t <= margin_degrees) {
        out.valid.push_back(static_cast<Direction>((idx + 1) % 8));
    }
    return out;
}

std::string serialize_object_scene(const ObjectScene& scene) {
    json j;
    j["arena_extent"] = scene.arena_extent;
    json instances = json::array();
    for (const auto& inst : scene.instances) {
        json e;
        e["color"] = color_name(inst.color);
        e["id"] = inst.id;
        e["shape"] = shape_name(inst.shape);
        e["size"] = size_name(inst.size);
        e["x"] = inst.x;
        e["y"] = inst.y;
        instances.push_back(std::move(e));
    }
    j["instances"] = std::move(instances);
    return j.dump();
}

ObjectScene parse_object_scene(const std::string& text) {
    const json j = json::parse(text);
    ObjectScene scene;
    scene.arena_extent = j.at("arena_extent").get<double>();
    for (const auto& e : j.at("instances")) {
        ObjectInstance inst;
        inst.id = e.at("id").get<std::string>();
        const auto color = color_from_name(e.at("color").get<std::string>());
        if (!color) throw std::invalid_argument("object scene: unknown color");
        inst.color = *color;
        const std::string shape = e.at("shape").get<std::string>();
        const std::string size = e.at("size").get<std::string>();
        bool found = false;
        for (Shape s : kShapes)
            if (shape_name(s) == shape) { inst.shape = s; found = true; }
        if (!found) throw std::invalid_argument("object scene: unknown shape");
        found = false;
        for (Size s : kSizes)
            if (size_name(s) == size) { inst.size = s; found = true; }
        if (!found) throw std::invalid_argument("object scene: unknown size");
        inst.x = e.at("x").get<double>();
        inst.y = e.at("y").get<double>();
        scene.instances.push_back(std::move(inst));
    }
    return scene;
}

}  // namespace ortho
