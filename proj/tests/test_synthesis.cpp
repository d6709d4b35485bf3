#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "ortho/rng.hpp"
#include "ortho/synthesis.hpp"
#include "ortho/uniqueness.hpp"

using namespace ortho;

TEST_CASE("gen_block_scene outputs pass the uniqueness filter") {
    SynthesisConfig cfg;
    cfg.grid_width = 3;
    cfg.grid_depth = 3;
    cfg.max_height = 3;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const BlockScene scene = gen_block_scene(cfg, seed);
        CHECK(check_uniqueness(scene.heightmap()).unique_by_condition);
        // Cross-check with the brute-force oracle.
        const EnumerationResult result =
            enumerate_consistent(project_views(scene), cfg.max_height);
        CHECK(result.solutions.size() == 1);
    }
}

TEST_CASE("gen_block_scene trivial 1x1 grid") {
    SynthesisConfig cfg;
    cfg.grid_width = 1;
    cfg.grid_depth = 1;
    cfg.max_height = 3;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const BlockScene scene = gen_block_scene(cfg, seed);
        CHECK(check_uniqueness(scene.heightmap()).unique_by_condition);
        CHECK(total_count(scene) >= 1);
        CHECK(total_count(scene) <= 3);
    }
}

TEST_CASE("gen_block_scene determinism") {
    SynthesisConfig cfg;
    const BlockScene a = gen_block_scene(cfg, 42);
    const BlockScene b = gen_block_scene(cfg, 42);
    CHECK(serialize_scene(a) == serialize_scene(b));
    CHECK(a == b);
}

TEST_CASE("gen_block_scene respects the count range") {
    SynthesisConfig cfg;
    cfg.grid_width = 3;
    cfg.grid_depth = 3;
    cfg.min_blocks = 4;
    cfg.max_blocks = 8;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const int total = total_count(gen_block_scene(cfg, seed));
        CHECK(total >= 4);
        CHECK(total <= 8);
    }
}

TEST_CASE("gen_block_scene fails cleanly on unsatisfiable constraints") {
    SynthesisConfig cfg;
    cfg.grid_width = 2;
    cfg.grid_depth = 2;
    cfg.max_height = 2;
    cfg.min_blocks = 8;  // forces the all-twos map, which is never unique
    cfg.max_attempts = 200;
    CHECK_THROWS_AS(gen_block_scene(cfg, 0), SynthesisError);
}

TEST_CASE("gen_object_scene constraints and determinism") {
    SynthesisConfig cfg;
    cfg.min_objects = 2;
    cfg.max_objects = 6;

    std::set<int> seen_counts;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const ObjectScene scene = gen_object_scene(cfg, seed);
        const int n = static_cast<int>(scene.instances.size());
        CHECK(n >= 2);
        CHECK(n <= 6);
        seen_counts.insert(n);
        std::set<std::string> ids;
        for (std::size_t i = 0; i < scene.instances.size(); ++i) {
            const auto& a = scene.instances[i];
            CHECK(ids.insert(a.id).second);
            CHECK(a.x >= 0.0);
            CHECK(a.x < cfg.arena_extent);
            CHECK(a.y >= 0.0);
            CHECK(a.y < cfg.arena_extent);
            for (std::size_t j = i + 1; j < scene.instances.size(); ++j) {
                const auto& b = scene.instances[j];
                const double d = std::hypot(a.x - b.x, a.y - b.y);
                CHECK(d >= cfg.min_separation);
            }
        }
    }
    // The generator reaches every object count in the configured range.
    CHECK(seen_counts == std::set<int>{2, 3, 4, 5, 6});

    CHECK(gen_object_scene(cfg, 7) == gen_object_scene(cfg, 7));
}

TEST_CASE("gen_object_scene pinned pair at minimum separation") {
    SynthesisConfig cfg;
    cfg.min_objects = 2;
    cfg.max_objects = 2;
    cfg.min_separation = 3.0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const ObjectScene scene = gen_object_scene(cfg, seed);
        REQUIRE(scene.instances.size() == 2);
        const auto& a = scene.instances[0];
        const auto& b = scene.instances[1];
        CHECK(std::hypot(a.x - b.x, a.y - b.y) >= 3.0);
    }
}

TEST_CASE("gen_object_scene distinct attribute mode") {
    SynthesisConfig cfg;
    cfg.distinct_attributes = true;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const ObjectScene scene = gen_object_scene(cfg, seed);
        std::set<std::tuple<Shape, Color, Size>> triples;
        for (const auto& inst : scene.instances)
            CHECK(triples.insert({inst.shape, inst.color, inst.size}).second);
    }
}

TEST_CASE("direction_labels worked examples") {
    SUBCASE("on-axis front") {
        const DirectionLabelSet d = direction_labels(0, 1, 0, 0, 5.0);
        CHECK(d.primary == Direction::Front);
        CHECK(d.valid == std::vector<Direction>{Direction::Front});
    }
    SUBCASE("45 degrees is front-left, single label") {
        const DirectionLabelSet d = direction_labels(1, 1, 0, 0, 5.0);
        CHECK(d.primary == Direction::FrontLeft);
        CHECK(d.valid == std::vector<Direction>{Direction::FrontLeft});
    }
    SUBCASE("20 degrees sits within the margin of the 22.5 boundary") {
        const double x = std::tan(20.0 * std::numbers::pi / 180.0);
        const DirectionLabelSet d = direction_labels(x, 1, 0, 0, 5.0);
        CHECK(d.primary == Direction::Front);
        REQUIRE(d.valid.size() == 2);
        CHECK(d.contains(Direction::Front));
        CHECK(d.contains(Direction::FrontLeft));
    }
    SUBCASE("margin zero never yields two labels") {
        const double x = std::tan(20.0 * std::numbers::pi / 180.0);
        const DirectionLabelSet d = direction_labels(x, 1, 0, 0, 0.0);
        CHECK(d.valid.size() == 1);
    }
    SUBCASE("all eight sector centers") {
        struct Case { double dx, dy; Direction want; };
        const Case cases[] = {
            {0, 1, Direction::Front},      {1, 1, Direction::FrontLeft},
            {1, 0, Direction::Left},       {1, -1, Direction::BackLeft},
            {0, -1, Direction::Back},      {-1, -1, Direction::BackRight},
            {-1, 0, Direction::Right},     {-1, 1, Direction::FrontRight},
        };
        for (const auto& c : cases)
            CHECK(direction_labels(c.dx, c.dy, 0, 0, 5.0).primary == c.want);
    }
}

TEST_CASE("direction_labels rejects coincident positions") {
    CHECK_THROWS_AS(direction_labels(1, 2, 1, 2, 5.0), std::invalid_argument);
}

TEST_CASE("direction_labels antisymmetry property") {
    for (std::uint64_t seed = 0; seed < 10'000; ++seed) {
        Rng rng(seed, "antisym");
        const double ax = rng.uniform_real(-10, 10), ay = rng.uniform_real(-10, 10);
        const double bx = rng.uniform_real(-10, 10), by = rng.uniform_real(-10, 10);
        if (ax == bx && ay == by) continue;
        const DirectionLabelSet fwd = direction_labels(ax, ay, bx, by, 5.0);
        const DirectionLabelSet rev = direction_labels(bx, by, ax, ay, 5.0);
        CHECK(rev.primary == opposite_direction(fwd.primary));
        REQUIRE(rev.valid.size() == fwd.valid.size());
        for (Direction d : fwd.valid) CHECK(rev.contains(opposite_direction(d)));
        CHECK(fwd.valid.size() >= 1);
        CHECK(fwd.valid.size() <= 2);
    }
}

TEST_CASE("object scene serialization round trip") {
    SynthesisConfig cfg;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const ObjectScene scene = gen_object_scene(cfg, seed);
        const std::string text = serialize_object_scene(scene);
        CHECK(parse_object_scene(text) == scene);
        CHECK(serialize_object_scene(parse_object_scene(text)) == text);
    }
}

TEST_CASE("config validation") {
    SynthesisConfig cfg;
    cfg.margin_degrees = 30.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = SynthesisConfig{};
    cfg.min_objects = 5;
    cfg.max_objects = 2;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = SynthesisConfig{};
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.fingerprint().size() == 16);
}
