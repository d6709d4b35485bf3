#include "ortho/render.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace ortho {

namespace {

struct Rgb {
    int r = 0, g = 0, b = 0;
};

Rgb base_rgb(Color c) {
    switch (c) {
        case Color::Red: return {204, 61, 61};
        case Color::Blue: return {61, 101, 204};
        case Color::Green: return {61, 163, 82};
        case Color::Yellow: return {214, 184, 48};
        case Color::Purple: return {140, 82, 184};
        case Color::Orange: return {224, 133, 41};
    }
    return {0, 0, 0};
}

std::string hex_color(Rgb c, double brightness) {
    auto scale = [&](int v) {
        const int out = static_cast<int>(v * brightness + 0.5);
        return std::clamp(out, 0, 255);
    };
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", scale(c.r), scale(c.g), scale(c.b));
    return buf;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", v);
    return buf;
}

// Fixed 2:1 dimetric camera looking at the front-left-top corner.
struct IsoProjector {
    double s;   // pixels per unit
    double ox;
    double oy;

    std::pair<double, double> map(double x, double y, double z) const {
        return {ox + (y - x) * s, oy + (x + y) * s * 0.5 - z * s};
    }
};

void polygon(std::ostringstream& out, const IsoProjector& p,
             const std::vector<std::array<double, 3>>& corners, const std::string& fill) {
    out << "<polygon points=\"";
    for (std::size_t i = 0; i < corners.size(); ++i) {
        const auto [sx, sy] = p.map(corners[i][0], corners[i][1], corners[i][2]);
        out << (i ? " " : "") << num(sx) << "," << num(sy);
    }
    out << "\" fill=\"" << fill << "\" stroke=\"#303030\" stroke-width=\"0.5\"/>\n";
}

}  // namespace

void CameraSpec::validate() const {
    if (scale <= 0.0) throw std::invalid_argument("camera: scale must be positive");
    if (canvas_width <= 0 || canvas_height <= 0)
        throw std::invalid_argument("camera: canvas must be positive");
}

std::string render_block_svg(const BlockScene& scene, const CameraSpec& cam) {
    cam.validate();
    const HeightMap& hm = scene.heightmap();
    const int W = hm.width();
    const int L = hm.depth();
    const int max_h = std::max(1, hm.max_height());

    IsoProjector p{cam.scale, 0.0, 0.0};
    // Projected bounding box of the scene volume, before centering.
    double min_x = 1e300, max_x = -1e300, min_y = 1e300, max_y = -1e300;
    for (int cx : {0, W}) {
        for (int cy : {0, L}) {
            for (int cz : {0, max_h}) {
                const auto [sx, sy] = p.map(cx, cy, cz);
                min_x = std::min(min_x, sx);
                max_x = std::max(max_x, sx);
                min_y = std::min(min_y, sy);
                max_y = std::max(max_y, sy);
            }
        }
    }
    const double pad = cam.scale * 0.25;
    if (max_x - min_x + 2 * pad > cam.canvas_width ||
        max_y - min_y + 2 * pad > cam.canvas_height)
        throw std::invalid_argument("render_block_svg: canvas too small for scene extent");
    p.ox = (cam.canvas_width - (max_x - min_x)) / 2.0 - min_x;
    p.oy = (cam.canvas_height - (max_y - min_y)) / 2.0 - min_y;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << cam.canvas_width
        << "\" height=\"" << cam.canvas_height << "\">\n";

    // Ground grid.
    out << "<g id=\"ground\">\n";
    for (int x = 0; x <= W; ++x) {
        const auto [ax, ay] = p.map(x, 0, 0);
        const auto [bx, by] = p.map(x, L, 0);
        out << "<line x1=\"" << num(ax) << "\" y1=\"" << num(ay) << "\" x2=\"" << num(bx)
            << "\" y2=\"" << num(by) << "\" stroke=\"#c0c0c0\" stroke-width=\"0.5\"/>\n";
    }
    for (int y = 0; y <= L; ++y) {
        const auto [ax, ay] = p.map(0, y, 0);
        const auto [bx, by] = p.map(W, y, 0);
        out << "<line x1=\"" << num(ax) << "\" y1=\"" << num(ay) << "\" x2=\"" << num(bx)
            << "\" y2=\"" << num(by) << "\" stroke=\"#c0c0c0\" stroke-width=\"0.5\"/>\n";
    }
    out << "</g>\n";

    // Painter's order: farther voxels (smaller x+y) first, bottom to top.
    struct Voxel { int x, y, z; };
    std::vector<Voxel> voxels;
    for (int x = 0; x < W; ++x)
        for (int y = 0; y < L; ++y)
            for (int z = 0; z < hm.at(x, y); ++z) voxels.push_back({x, y, z});
    std::sort(voxels.begin(), voxels.end(), [](const Voxel& a, const Voxel& b) {
        return std::tuple(a.x + a.y, a.z, a.x) < std::tuple(b.x + b.y, b.z, b.x);
    });

    out << "<g id=\"blocks\">\n";
    for (const Voxel& v : voxels) {
        const Rgb rgb = base_rgb(scene.color_at(v.x, v.y, v.z));
        const double x = v.x, y = v.y, z = v.z;
        // Three faces toward the camera: top, +y, +x.
        polygon(out, p,
                {{{x, y, z + 1}, {x + 1, y, z + 1}, {x + 1, y + 1, z + 1}, {x, y + 1, z + 1}}},
                hex_color(rgb, 1.15));
        polygon(out, p,
                {{{x, y + 1, z}, {x + 1, y + 1, z}, {x + 1, y + 1, z + 1}, {x, y + 1, z + 1}}},
                hex_color(rgb, 0.95));
        polygon(out, p,
                {{{x + 1, y, z}, {x + 1, y + 1, z}, {x + 1, y + 1, z + 1}, {x + 1, y, z + 1}}},
                hex_color(rgb, 0.72));
    }
    out << "</g>\n</svg>\n";
    return out.str();
}

std::string render_object_svg(const ObjectScene& scene, const CameraSpec& cam) {
    cam.validate();
    const double margin = 24.0;
    const double extent = scene.arena_extent;
    // Larger x is further left; larger y (front) is further up.
    auto map_x = [&](double x) { return margin + (extent - x) * cam.scale; };
    auto map_y = [&](double y) { return margin + (extent - y) * cam.scale; };

    auto size_units = [](Size s) {
        switch (s) {
            case Size::Small: return 0.30;
            case Size::Medium: return 0.45;
            case Size::Large: return 0.60;
        }
        return 0.45;
    };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << cam.canvas_width
        << "\" height=\"" << cam.canvas_height << "\">\n";
    out << "<rect x=\"" << num(margin) << "\" y=\"" << num(margin) << "\" width=\""
        << num(extent * cam.scale) << "\" height=\"" << num(extent * cam.scale)
        << "\" fill=\"#f7f7f2\" stroke=\"#909090\"/>\n";

    out << "<g id=\"objects\">\n";
    for (const auto& inst : scene.instances) {
        const double cx = map_x(inst.x);
        const double cy = map_y(inst.y);
        const double r = size_units(inst.size) * cam.scale;
        const std::string fill = hex_color(base_rgb(inst.color), 1.0);
        const std::string common = "\" fill=\"" + fill + "\" stroke=\"#303030\"/>\n";
        switch (inst.shape) {
            case Shape::Sphere:
                out << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\""
                    << num(r) << common;
                break;
            case Shape::Cylinder:
                out << "<rect x=\"" << num(cx - r) << "\" y=\"" << num(cy - r) << "\" width=\""
                    << num(2 * r) << "\" height=\"" << num(2 * r) << "\" rx=\"" << num(r * 0.5)
                    << common;
                break;
            case Shape::Cube:
                out << "<rect x=\"" << num(cx - r) << "\" y=\"" << num(cy - r) << "\" width=\""
                    << num(2 * r) << "\" height=\"" << num(2 * r) << common;
                break;
            case Shape::Cuboid:
                out << "<rect x=\"" << num(cx - 1.4 * r) << "\" y=\"" << num(cy - 0.7 * r)
                    << "\" width=\"" << num(2.8 * r) << "\" height=\"" << num(1.4 * r) << common;
                break;
            case Shape::Cone:
                out << "<polygon points=\"" << num(cx) << "," << num(cy - r) << " "
                    << num(cx - r) << "," << num(cy + r) << " " << num(cx + r) << ","
                    << num(cy + r) << common;
                break;
            case Shape::Pyramid:
                out << "<polygon points=\"" << num(cx) << "," << num(cy - r) << " "
                    << num(cx + r) << "," << num(cy) << " " << num(cx) << "," << num(cy + r)
                    << " " << num(cx - r) << "," << num(cy) << common;
                break;
        }
        out << "<text x=\"" << num(cx) << "\" y=\"" << num(cy + 3.0)
            << "\" font-size=\"10\" text-anchor=\"middle\">" << inst.id << "</text>\n";
    }
    out << "</g>\n<g id=\"legend\">\n";
    double ly = margin + extent * cam.scale + 16.0;
    for (const auto& inst : scene.instances) {
        out << "<text x=\"" << num(margin) << "\" y=\"" << num(ly)
            << "\" font-size=\"11\">" << inst.id << ": " << size_name(inst.size) << " "
            << color_name(inst.color) << " " << shape_name(inst.shape) << "</text>\n";
        ly += 13.0;
    }
    out << "</g>\n</svg>\n";
    return out.str();
}

}  // namespace ortho
