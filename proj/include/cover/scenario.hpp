#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "cover/geometry.hpp"

namespace cover::scenario {

/// Parameters of the synthetic generator.
struct GenSpec {
    std::size_t n_vertices = 50;
    std::size_t n_circles = 30;
    double diameter = 10.0;
    Rect center_box{-4.0, 4.0, -4.0, 4.0};
    double radius_min = 1.0;
    double radius_max = 2.5;
    std::uint64_t seed = 42;

    void validate() const;
};

/// Star-shaped polygon about the origin: sorted uniform angles, radii uniform in
/// [0.3, 1]·diameter/2, rescaled so the vertex diameter equals spec.diameter. Simple and CCW.
Polygon gen_polygon(const GenSpec& spec);

std::vector<Circle> gen_circles(const GenSpec& spec);

Scene gen_scene(const GenSpec& spec);

// Scene JSON: {"polygon": [[x,y], ...], "circles": [{"cx": x, "cy": y, "r": r}, ...]}

struct LoadedScene {
    Scene scene;
    std::vector<std::string> notes;  // normalizations applied while loading
};

/// Throws ParseError, InvalidPolygon (including self-intersection) or InvalidRadius.
LoadedScene parse_scene(const std::string& json_text);
LoadedScene load_scene(const std::filesystem::path& path);

std::string scene_to_json(const Scene& scene);
void save_scene(const Scene& scene, const std::filesystem::path& path);

/// Which exterior ring to take from a GeoJSON document: "largest" (by absolute area)
/// or a zero-based index into the exterior rings in document order.
struct RingSelector {
    bool largest = true;
    std::size_t index = 0;

    static RingSelector parse(const std::string& text);
};

/// Exterior ring of a Polygon/MultiPolygon (bare geometry, Feature or FeatureCollection).
/// Coordinates are used as planar; the closing vertex is dropped and the ring is made CCW.
Polygon parse_geojson(const std::string& json_text, RingSelector selector = {});
Polygon ingest_geojson(const std::filesystem::path& path, RingSelector selector = {});

/// Sensor deployment region: uniform centers in `box`, radii uniform in [r_min_km, r_max_km].
struct DeploymentRegion {
    std::string name;
    Rect box;  // degrees, longitude east-positive
    std::size_t nodes = 0;
    double r_min_km = 0.0;
    double r_max_km = 0.0;
};

inline constexpr double kDegreesPerKm = 1.0 / 111.32;

/// The five-region Caribbean deployment (71 nodes).
std::vector<DeploymentRegion> caribbean_regions();

/// Circles for a deployment; radii are converted to degrees with `degrees_per_km`.
std::vector<Circle> deploy_circles(const std::vector<DeploymentRegion>& regions, std::uint64_t seed,
                                   double degrees_per_km = kDegreesPerKm);

}  // namespace cover::scenario
