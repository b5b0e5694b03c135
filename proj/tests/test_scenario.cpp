#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "cover/error.hpp"
#include "cover/scenario.hpp"
#include "test_support.hpp"

using namespace cover;
using namespace cover::scenario;

namespace {

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
    const auto dir = std::filesystem::temp_directory_path() / "cover_scenario_tests";
    std::filesystem::create_directories(dir);
    const auto path = dir / name;
    std::ofstream(path, std::ios::binary) << content;
    return path;
}

GenSpec spec_with(std::uint64_t seed, std::size_t m, std::size_t n = 30) {
    GenSpec s;
    s.seed = seed;
    s.n_vertices = m;
    s.n_circles = n;
    return s;
}

}  // namespace

TEST(GenPolygon, TriangleHasRequestedDiameter) {
    const Polygon p = gen_polygon(spec_with(42, 3));
    EXPECT_EQ(p.size(), 3u);
    EXPECT_NEAR(polygon_diameter(p), 10.0, 1e-9);
}

TEST(GenPolygon, DiameterSimpleCcwForAllSizes) {
    for (std::size_t m = 3; m <= 50; ++m) {
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const Polygon p = gen_polygon(spec_with(seed, m));
            ASSERT_EQ(p.size(), m);
            EXPECT_NEAR(polygon_diameter(p), 10.0, 1e-9 * 10.0);
            EXPECT_GT(oracle::shoelace(p.vertices), 0.0);
        }
    }
}

TEST(GenPolygon, FiftyVerticesHaveNoCrossingEdges) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        EXPECT_TRUE(oracle::simple_ring(gen_polygon(spec_with(seed, 50)).vertices)) << "seed " << seed;
    }
}

TEST(GenPolygon, Deterministic) {
    EXPECT_EQ(gen_polygon(spec_with(7, 30)).vertices, gen_polygon(spec_with(7, 30)).vertices);
    EXPECT_NE(gen_polygon(spec_with(7, 30)).vertices, gen_polygon(spec_with(8, 30)).vertices);
}

TEST(GenPolygon, RejectsBadSpec) {
    EXPECT_THROW(gen_polygon(spec_with(1, 2)), std::invalid_argument);
    GenSpec s;
    s.radius_min = 3;
    s.radius_max = 2;
    EXPECT_THROW(gen_circles(s), std::invalid_argument);
}

TEST(GenCircles, DefaultsMatchCaseSetup) {
    const auto circles = gen_circles(spec_with(42, 50, 30));
    ASSERT_EQ(circles.size(), 30u);
    for (const Circle& c : circles) {
        EXPECT_GE(c.center.x, -4.0);
        EXPECT_LE(c.center.x, 4.0);
        EXPECT_GE(c.center.y, -4.0);
        EXPECT_LE(c.center.y, 4.0);
        EXPECT_GE(c.radius, 1.0);
        EXPECT_LE(c.radius, 2.5);
    }
    EXPECT_TRUE(gen_circles(spec_with(42, 50, 0)).empty());
    EXPECT_EQ(gen_circles(spec_with(5, 50)), gen_circles(spec_with(5, 50)));
}

TEST(GenScene, SatisfiesSceneInvariants) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const Scene s = gen_scene(spec_with(seed, 3 + seed, seed));
        EXPECT_GT(signed_area(s.polygon), 0.0);
        EXPECT_TRUE(is_simple(s.polygon));
        for (const Point& v : s.polygon.vertices) EXPECT_TRUE(s.bbox.contains(v));
        for (const Circle& c : s.circles) {
            EXPECT_TRUE(s.bbox.contains(c.center + Point{c.radius, c.radius}));
            EXPECT_TRUE(s.bbox.contains(c.center - Point{c.radius, c.radius}));
        }
    }
}

TEST(SceneFile, RoundTrip) {
    const Scene s = gen_scene(spec_with(3, 12, 5));
    const auto path = temp_file("roundtrip.json", scene_to_json(s));
    const LoadedScene loaded = load_scene(path);
    EXPECT_TRUE(loaded.notes.empty());
    EXPECT_EQ(loaded.scene.polygon.vertices, s.polygon.vertices);
    EXPECT_EQ(loaded.scene.circles, s.circles);
    EXPECT_EQ(scene_to_json(loaded.scene), scene_to_json(s));
    save_scene(loaded.scene, path);
    EXPECT_EQ(scene_to_json(load_scene(path).scene), scene_to_json(s));
}

TEST(SceneFile, ClockwiseIsReversedWithNote) {
    const auto loaded =
        parse_scene(R"({"polygon": [[0,0],[0,1],[1,1],[1,0]], "circles": [{"cx": 0, "cy": 0, "r": 1}]})");
    EXPECT_GT(signed_area(loaded.scene.polygon), 0.0);
    ASSERT_EQ(loaded.notes.size(), 1u);
    EXPECT_NE(loaded.notes[0].find("clockwise"), std::string::npos);
}

TEST(SceneFile, ClosingVertexIsDropped) {
    const auto loaded = parse_scene(R"({"polygon": [[0,0],[1,0],[1,1],[0,1],[0,0]], "circles": []})");
    EXPECT_EQ(loaded.scene.polygon.size(), 4u);
    EXPECT_EQ(loaded.notes.size(), 1u);
}

TEST(SceneFile, DistinctErrorKinds) {
    EXPECT_THROW(parse_scene(R"({"polygon": [[0,0],[1,0],[0,1]], "circles": [{"cx": 0, "cy": 0, "r": 0}]})"),
                 InvalidRadius);
    EXPECT_THROW(parse_scene(R"({"polygon": [[0,0],[1,1],[1,0],[0,1]], "circles": []})"), InvalidPolygon);
    EXPECT_THROW(parse_scene("{not json"), ParseError);
    EXPECT_THROW(parse_scene(R"({"polygon": [[0,0],[1,0],[0,1]]})"), ParseError);
    EXPECT_THROW(parse_scene(R"({"polygon": [[0,0],[1,0],["a",1]], "circles": []})"), ParseError);
    EXPECT_THROW(parse_scene(R"({"polygon": [[0,0],[1,0],[0,1]], "circles": [{"cx": 0, "r": 1}]})"), ParseError);
    EXPECT_THROW(load_scene("/nonexistent/scene.json"), ParseError);
}

TEST(RingSelectorParse, Forms) {
    EXPECT_TRUE(RingSelector::parse("largest").largest);
    const RingSelector two = RingSelector::parse("2");
    EXPECT_FALSE(two.largest);
    EXPECT_EQ(two.index, 2u);
    EXPECT_THROW(RingSelector::parse("biggest"), std::invalid_argument);
    EXPECT_THROW(RingSelector::parse("-1"), std::invalid_argument);
}

TEST(GeoJson, SquareRingDropsClosingVertex) {
    const auto path = temp_file("square.geojson", R"({"type": "FeatureCollection", "features": [
        {"type": "Feature", "properties": {}, "geometry": {"type": "Polygon",
         "coordinates": [[[0,0],[2,0],[2,2],[0,2],[0,0]], [[0.5,0.5],[1,0.5],[1,1],[0.5,0.5]]]}}]})");
    const Polygon p = ingest_geojson(path);
    EXPECT_EQ(p.size(), 4u);
    EXPECT_DOUBLE_EQ(signed_area(p), 4.0);
}

TEST(GeoJson, MultiPolygonLargestAndIndex) {
    const std::string doc = R"({"type": "MultiPolygon", "coordinates": [
        [[[0,0],[1,0],[1,1],[0,1],[0,0]]],
        [[[10,10],[10,13],[13,13],[13,10],[10,10]]]]})";
    const Polygon big = parse_geojson(doc);
    EXPECT_DOUBLE_EQ(signed_area(big), 9.0);  // CW input, reversed
    EXPECT_EQ(big.size(), 4u);
    EXPECT_DOUBLE_EQ(signed_area(parse_geojson(doc, RingSelector::parse("0"))), 1.0);
    EXPECT_THROW(parse_geojson(doc, RingSelector::parse("5")), ParseError);
}

TEST(GeoJson, Errors) {
    EXPECT_THROW(parse_geojson(R"({"type": "Point", "coordinates": [0, 0]})"), ParseError);
    EXPECT_THROW(parse_geojson(R"({"type": "Polygon", "coordinates": [[[0,0],[1,0],[0,0]]]})"), InvalidPolygon);
    EXPECT_THROW(parse_geojson("[1,2"), ParseError);
}

TEST(GeoJson, LargeRingVertexCount) {
    // A 1285-point closed ring (1284 distinct vertices) like a coastline extract.
    std::string coords;
    const int n = 1284;
    for (int i = 0; i <= n; ++i) {
        const double t = 2 * std::numbers::pi * (i % n) / n;
        const double r = 1.0 + 0.2 * std::sin(7 * t);
        coords += (i ? "," : "") + std::string("[") + std::to_string(-80 + r * std::cos(t)) + "," +
                  std::to_string(21 + 0.5 * r * std::sin(t)) + "]";
    }
    const Polygon p =
        parse_geojson(R"({"type": "Feature", "geometry": {"type": "Polygon", "coordinates": [[)" + coords + "]]}}");
    EXPECT_EQ(p.size(), 1284u);
    EXPECT_NO_THROW(make_scene(p, {}));
}

TEST(Deployment, CaribbeanPreset) {
    const auto regions = caribbean_regions();
    ASSERT_EQ(regions.size(), 5u);
    std::size_t total = 0;
    for (const auto& r : regions) total += r.nodes;
    EXPECT_EQ(total, 71u);
    EXPECT_EQ(regions[0].name, "Cuba");
    EXPECT_EQ(regions[0].nodes, 15u);
    EXPECT_EQ(regions[0].r_min_km, 30.0);
    EXPECT_EQ(regions[0].r_max_km, 120.0);

    const auto circles = deploy_circles(regions, 42);
    ASSERT_EQ(circles.size(), 71u);
    std::size_t i = 0;
    for (const auto& r : regions) {
        for (std::size_t k = 0; k < r.nodes; ++k, ++i) {
            EXPECT_TRUE(r.box.contains(circles[i].center));
            EXPECT_GE(circles[i].radius, r.r_min_km * kDegreesPerKm);
            EXPECT_LE(circles[i].radius, r.r_max_km * kDegreesPerKm);
        }
    }
    EXPECT_EQ(deploy_circles(regions, 42), circles);
    const auto doubled = deploy_circles(regions, 42, 2 * kDegreesPerKm);
    EXPECT_DOUBLE_EQ(doubled[0].radius, 2 * circles[0].radius);
}
