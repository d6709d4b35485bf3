#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "ortho/rng.hpp"
#include "ortho/synthesis.hpp"
#include "ortho/view_description.hpp"

using namespace ortho;

namespace {

BlockScene random_scene(std::uint64_t seed) {
    Rng rng(seed, "desc-scene");
    const int w = static_cast<int>(rng.uniform_int(1, 4));
    const int l = static_cast<int>(rng.uniform_int(1, 4));
    HeightMap hm(w, l);
    for (int x = 0; x < w; ++x)
        for (int y = 0; y < l; ++y)
            hm.set(x, y, static_cast<int>(rng.uniform_int(0, 3)));
    std::vector<Color> colors;
    for (int i = 0; i < hm.total_blocks(); ++i)
        colors.push_back(kPalette[rng.uniform_int(0, kPaletteSize - 1)]);
    return BlockScene(std::move(hm), std::move(colors));
}

std::set<std::tuple<int, int, int>> voxel_set(const std::vector<VoxelRecord>& records) {
    std::set<std::tuple<int, int, int>> out;
    for (const auto& r : records) out.insert({r.x, r.y, r.z});
    return out;
}

}  // namespace

TEST_CASE("block description lists every voxel in every view") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const BlockScene scene = random_scene(seed);
        const ViewDescription vd = describe_block_views(scene);
        CHECK(vd.format == DescriptionFormat::BlockList);

        std::set<std::tuple<int, int, int>> all;
        const HeightMap& hm = scene.heightmap();
        for (int x = 0; x < hm.width(); ++x)
            for (int y = 0; y < hm.depth(); ++y)
                for (int z = 0; z < hm.at(x, y); ++z) all.insert({x, y, z});

        CHECK(voxel_set(vd.front_blocks) == all);
        CHECK(voxel_set(vd.left_blocks) == all);
        CHECK(voxel_set(vd.top_blocks) == all);

        // Colors and visibility agree with the scene and the occlusion
        // predicate view by view.
        for (const auto* blocks : {&vd.front_blocks, &vd.left_blocks, &vd.top_blocks})
            for (const auto& r : *blocks)
                CHECK(r.color == scene.color_at(r.x, r.y, r.z));
    }
}

TEST_CASE("block description ordering is view-depth descending") {
    // Front view: nearer (larger y) first; ties by ascending x, then z.
    HeightMap hm(2, 2);
    hm.set(0, 0, 1);
    hm.set(0, 1, 2);
    hm.set(1, 0, 1);
    hm.set(1, 1, 1);
    const BlockScene scene = BlockScene::uniform(std::move(hm), Color::Red);
    const ViewDescription vd = describe_block_views(scene);

    REQUIRE(vd.front_blocks.size() == 5);
    for (std::size_t i = 1; i < vd.front_blocks.size(); ++i) {
        const auto& a = vd.front_blocks[i - 1];
        const auto& b = vd.front_blocks[i];
        CHECK(std::make_tuple(-a.y, a.x, a.z) < std::make_tuple(-b.y, b.x, b.z));
    }
    CHECK(vd.front_blocks[0].y == 1);  // front row first

    for (std::size_t i = 1; i < vd.left_blocks.size(); ++i) {
        const auto& a = vd.left_blocks[i - 1];
        const auto& b = vd.left_blocks[i];
        CHECK(std::make_tuple(-a.x, a.y, a.z) < std::make_tuple(-b.x, b.y, b.z));
    }
    for (std::size_t i = 1; i < vd.top_blocks.size(); ++i) {
        const auto& a = vd.top_blocks[i - 1];
        const auto& b = vd.top_blocks[i];
        CHECK(std::make_tuple(-a.z, a.x, a.y) < std::make_tuple(-b.z, b.x, b.y));
    }
}

TEST_CASE("block description round trip") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const ViewDescription vd = describe_block_views(random_scene(seed));
        const std::string text = serialize_description(vd);
        CHECK(parse_description(text) == vd);
        CHECK(serialize_description(parse_description(text)) == text);
    }
}

TEST_CASE("serialized block description format") {
    const BlockScene scene = BlockScene::uniform(HeightMap::from_rows({{1}}), Color::Red);
    const std::string text = serialize_description(describe_block_views(scene));
    CHECK(text.find("format: block-list") == 0);
    CHECK(text.find("== front view ==") != std::string::npos);
    CHECK(text.find("== left view ==") != std::string::npos);
    CHECK(text.find("== top view ==") != std::string::npos);
    CHECK(text.find("{x:0,y:0,z:0,color:red,visible:true}") != std::string::npos);
}

TEST_CASE("object description scans") {
    ObjectScene scene;
    scene.arena_extent = 10.0;
    // Ids chosen so lexicographic tie-break is observable.
    scene.instances = {
        {"a", Shape::Cube, Color::Red, Size::Small, 8.0, 2.0},      // far left, back
        {"b", Shape::Sphere, Color::Blue, Size::Medium, 2.0, 5.0},  // right, middle
        {"c", Shape::Cone, Color::Green, Size::Large, 5.0, 8.0},    // center, front
    };
    const ViewDescription vd = describe_object_views(scene);
    CHECK(vd.format == DescriptionFormat::OrderedScan);

    // Front view scans left to right: descending x.
    REQUIRE(vd.front_scans.size() == 1);
    CHECK(vd.front_scans[0].axis == "from-left-to-right");
    CHECK(vd.front_scans[0].ids == std::vector<std::string>{"a", "c", "b"});

    // Left view scans back to front: ascending y.
    REQUIRE(vd.left_scans.size() == 1);
    CHECK(vd.left_scans[0].axis == "from-back-to-front");
    CHECK(vd.left_scans[0].ids == std::vector<std::string>{"a", "b", "c"});

    // Top view carries both orderings plus grid cells.
    REQUIRE(vd.top_scans.size() == 2);
    CHECK(vd.top_scans[0].axis == "from-left-to-right");
    CHECK(vd.top_scans[0].ids == std::vector<std::string>{"a", "c", "b"});
    CHECK(vd.top_scans[1].axis == "from-back-to-front");
    CHECK(vd.top_scans[1].ids == std::vector<std::string>{"a", "b", "c"});
    CHECK(vd.top_cells.at("a") == std::pair<int, int>{8, 2});
    CHECK(vd.top_cells.at("b") == std::pair<int, int>{2, 5});
    CHECK(vd.top_cells.at("c") == std::pair<int, int>{5, 8});
}

TEST_CASE("object description is invariant under instance permutation") {
    SynthesisConfig cfg;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        ObjectScene scene = gen_object_scene(cfg, seed);
        const ViewDescription base = describe_object_views(scene);
        Rng rng(seed, "shuffle");
        for (std::size_t i = scene.instances.size(); i > 1; --i)
            std::swap(scene.instances[i - 1],
                      scene.instances[rng.uniform_int(0, i - 1)]);
        CHECK(describe_object_views(scene) == base);
    }
}

TEST_CASE("object description round trip") {
    SynthesisConfig cfg;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const ViewDescription vd = describe_object_views(gen_object_scene(cfg, seed));
        const std::string text = serialize_description(vd);
        CHECK(parse_description(text) == vd);
        CHECK(serialize_description(parse_description(text)) == text);
        CHECK(text.find("format: ordered-scan") == 0);
        CHECK(text.find("from-left-to-right:") != std::string::npos);
        CHECK(text.find("cell:") != std::string::npos);
    }
}

TEST_CASE("parse_description skips comment lines") {
    const BlockScene scene = BlockScene::uniform(HeightMap::from_rows({{1}}), Color::Red);
    const ViewDescription vd = describe_block_views(scene);
    const std::string stamped =
        "# fingerprint: abc seed: 0\n" + serialize_description(vd);
    CHECK(parse_description(stamped) == vd);
}

TEST_CASE("parse_description rejects malformed input") {
    CHECK_THROWS_AS(parse_description(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_description("format: nonsense\n"), std::invalid_argument);
    CHECK_THROWS_AS(
        parse_description("format: block-list\n== front view ==\n{x:0,y:0}\n"),
        std::invalid_argument);
}
