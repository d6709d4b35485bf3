#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "ortho/rng.hpp"
#include "ortho/voxel_core.hpp"

using namespace ortho;

namespace {

// Random scene generator for property tests (independent of the synthesis
// module's filtered generator).
BlockScene random_scene(std::uint64_t seed, int max_extent = 4, int max_height = 4) {
    Rng rng(seed, "test-scene");
    const int w = static_cast<int>(rng.uniform_int(1, max_extent));
    const int l = static_cast<int>(rng.uniform_int(1, max_extent));
    HeightMap hm(w, l);
    for (int x = 0; x < w; ++x)
        for (int y = 0; y < l; ++y)
            hm.set(x, y, static_cast<int>(rng.uniform_int(0, max_height)));
    std::vector<Color> colors;
    for (int i = 0; i < hm.total_blocks(); ++i)
        colors.push_back(kPalette[rng.uniform_int(0, kPaletteSize - 1)]);
    return BlockScene(std::move(hm), std::move(colors));
}

}  // namespace

TEST_CASE("project_views on hand examples") {
    SUBCASE("single cell") {
        const OrthoViews v = project_views(HeightMap::from_rows({{1}}));
        CHECK(v.top == std::vector<bool>{true});
        CHECK(v.front == std::vector<int>{1});
        CHECK(v.side == std::vector<int>{1});
    }
    SUBCASE("2x2 mixed heights") {
        const OrthoViews v = project_views(HeightMap::from_rows({{2, 1}, {1, 1}}));
        CHECK(v.top == std::vector<bool>{true, true, true, true});
        CHECK(v.front == std::vector<int>{2, 1});
        CHECK(v.side == std::vector<int>{2, 1});
    }
    SUBCASE("empty scene") {
        const OrthoViews v = project_views(HeightMap::from_rows({{0, 0}, {0, 0}}));
        CHECK(v.top == std::vector<bool>{false, false, false, false});
        CHECK(v.front == std::vector<int>{0, 0});
        CHECK(v.side == std::vector<int>{0, 0});
    }
}

TEST_CASE("total_count") {
    CHECK(total_count(BlockScene::uniform(HeightMap::from_rows({{2, 1}, {1, 1}}), Color::Red)) == 5);
    CHECK(total_count(BlockScene::uniform(HeightMap::from_rows({{0}}), Color::Red)) == 0);
    CHECK(total_count(BlockScene::uniform(HeightMap::from_rows({{3}}), Color::Red)) == 3);
}

TEST_CASE("visible_voxels occlusion rules") {
    // Two stacks of height 1: (0,0) red behind, (0,1) blue in front.
    HeightMap hm(1, 2);
    hm.set(0, 0, 1);
    hm.set(0, 1, 1);
    const BlockScene scene(std::move(hm), {Color::Red, Color::Blue});

    SUBCASE("front view hides the back voxel") {
        const auto records = visible_voxels(scene, View::Front);
        REQUIRE(records.size() == 2);
        for (const auto& r : records) {
            if (r.y == 1) {
                CHECK(r.color == Color::Blue);
                CHECK(r.visible);
            } else {
                CHECK(r.color == Color::Red);
                CHECK_FALSE(r.visible);
            }
        }
    }
    SUBCASE("top view sees both") {
        for (const auto& r : visible_voxels(scene, View::Top)) CHECK(r.visible);
    }
    SUBCASE("single voxel visible from every view") {
        const BlockScene one = BlockScene::uniform(HeightMap::from_rows({{1}}), Color::Green);
        for (View view : {View::Front, View::Left, View::Top}) {
            const auto records = visible_voxels(one, view);
            REQUIRE(records.size() == 1);
            CHECK(records[0].visible);
        }
    }
}

TEST_CASE("visibility properties over random scenes") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const BlockScene scene = random_scene(seed);
        const HeightMap& hm = scene.heightmap();

        int occupied_cells = 0;
        for (int x = 0; x < hm.width(); ++x)
            for (int y = 0; y < hm.depth(); ++y)
                if (hm.at(x, y) > 0) ++occupied_cells;

        // Top-view visible voxels = occupied cells.
        const auto top = visible_voxels(scene, View::Top);
        int top_visible = 0;
        for (const auto& r : top)
            if (r.visible) ++top_visible;
        CHECK(top_visible == occupied_cells);
        CHECK(static_cast<int>(top.size()) == hm.total_blocks());

        // Exactly one front-visible voxel per occupied (x, z) line.
        const auto front = visible_voxels(scene, View::Front);
        std::set<std::pair<int, int>> lines, visible_lines;
        for (const auto& r : front) {
            lines.insert({r.x, r.z});
            if (r.visible) CHECK(visible_lines.insert({r.x, r.z}).second);
        }
        CHECK(lines == visible_lines);

        // Profile consistency: front_profile[x] = max z+1 of front-visible
        // voxels in column x.
        const OrthoViews views = project_views(scene);
        std::vector<int> max_z(static_cast<std::size_t>(hm.width()), 0);
        for (const auto& r : front)
            if (r.visible)
                max_z[static_cast<std::size_t>(r.x)] =
                    std::max(max_z[static_cast<std::size_t>(r.x)], r.z + 1);
        CHECK(max_z == views.front);

        // Purity.
        CHECK(project_views(scene) == views);
    }
}

TEST_CASE("scene serialization round trip") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const BlockScene scene = random_scene(seed);
        const std::string text = serialize_scene(scene);
        CHECK(parse_scene(text) == scene);
        CHECK(serialize_scene(parse_scene(text)) == text);
    }
}

TEST_CASE("views serialization round trip") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const OrthoViews views = project_views(random_scene(seed));
        CHECK(parse_views(serialize_views(views)) == views);
    }
}

TEST_CASE("invalid constructions are rejected") {
    CHECK_THROWS_AS(HeightMap(0, 3), std::invalid_argument);
    CHECK_THROWS_AS(HeightMap(2, 2, {1, 2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(HeightMap(1, 1, {-1}), std::invalid_argument);
    CHECK_THROWS_AS(BlockScene(HeightMap::from_rows({{2}}), {Color::Red}),
                    std::invalid_argument);
}
