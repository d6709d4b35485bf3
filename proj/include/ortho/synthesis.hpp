#pragma once

#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "ortho/voxel_core.hpp"

namespace ortho {

enum class Shape { Cube, Sphere, Cone, Cylinder, Pyramid, Cuboid };
enum class Size { Small, Medium, Large };

inline constexpr Shape kShapes[] = {Shape::Cube,     Shape::Sphere,  Shape::Cone,
                                    Shape::Cylinder, Shape::Pyramid, Shape::Cuboid};
inline constexpr Size kSizes[] = {Size::Small, Size::Medium, Size::Large};

const std::string& shape_name(Shape s);
const std::string& size_name(Size s);

enum class Direction {
    Front, FrontLeft, Left, BackLeft, Back, BackRight, Right, FrontRight
};

// Canonical hyphenated tag, e.g. "front-left".
const std::string& direction_name(Direction d);
std::optional<Direction> direction_from_name(const std::string& name);
Direction opposite_direction(Direction d);

struct DirectionLabelSet {
    Direction primary = Direction::Front;
    std::vector<Direction> valid;  // contains primary; size 1 or 2

    bool contains(Direction d) const;
    bool operator==(const DirectionLabelSet& other) const = default;
};

struct SynthesisConfig {
    int grid_width = 5;
    int grid_depth = 5;
    int max_height = kDefaultMaxHeight;
    int min_blocks = 1;
    int max_blocks = 0;           // 0 = grid capacity
    int min_objects = 2;
    int max_objects = 6;
    double arena_extent = 10.0;   // positions in [0, arena_extent)^2
    double min_separation = 1.5;
    double margin_degrees = 5.0;
    bool distinct_attributes = false;  // pairwise-distinct (shape,color,size)
    int max_attempts = 10'000;
    std::uint64_t seed = 0;

    int effective_max_blocks() const {
        return max_blocks > 0 ? max_blocks : grid_width * grid_depth * max_height;
    }
    void validate() const;
    std::string fingerprint() const;  // stable hash of the canonical form
    std::string canonical() const;
};

struct ObjectInstance {
    std::string id;
    Shape shape = Shape::Cube;
    Color color = Color::Red;
    Size size = Size::Medium;
    double x = 0.0;
    double y = 0.0;

    bool operator==(const ObjectInstance& other) const = default;
};

struct ObjectScene {
    double arena_extent = 0.0;
    std::vector<ObjectInstance> instances;

    bool operator==(const ObjectScene& other) const = default;
};

struct SynthesisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Rejection-sampled block scene: heights are proposed at random and kept
// only when the per-cell uniqueness condition and the block-count range
// hold. Pure function of (cfg, seed). Throws SynthesisError after
// cfg.max_attempts rejected proposals.
BlockScene gen_block_scene(const SynthesisConfig& cfg, std::uint64_t seed);

// Planar object scene: N instances on the ground plane with pairwise
// separation >= cfg.min_separation. Deterministic per (cfg, seed).
ObjectScene gen_object_scene(const SynthesisConfig& cfg, std::uint64_t seed);

// Relative direction of a as seen from b. Angle 0 is the +y (front) axis,
// increasing toward +x (left); eight 45-degree sectors, half-open
// boundaries. Within margin_degrees of a sector boundary the adjacent
// sector's tag is also valid. Throws on coincident positions.
DirectionLabelSet direction_labels(double ax, double ay, double bx, double by,
                                   double margin_degrees);

std::string serialize_object_scene(const ObjectScene& scene);
ObjectScene parse_object_scene(const std::string& text);

}  // namespace ortho
