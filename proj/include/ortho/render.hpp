#pragma once

#include <string>

#include "ortho/synthesis.hpp"
#include "ortho/voxel_core.hpp"

namespace ortho {

enum class Projection { Isometric, TopDown };

struct CameraSpec {
    Projection projection = Projection::Isometric;
    double scale = 32.0;  // pixels per unit
    int canvas_width = 640;
    int canvas_height = 480;

    void validate() const;
};

// Isometric SVG of a block scene: each voxel drawn as three shaded faces in
// painter's order (back to front), fixed 2:1 dimetric camera.
// Byte-deterministic. Throws when the canvas cannot hold the scene extent.
std::string render_block_svg(const BlockScene& scene, const CameraSpec& cam);

// Top-down SVG of an object scene: shape-coded, color-filled, size-scaled
// glyph per instance plus an id legend.
std::string render_object_svg(const ObjectScene& scene, const CameraSpec& cam);

}  // namespace ortho
