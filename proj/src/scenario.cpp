#include "cover/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "cover/error.hpp"
#include "cover/rng.hpp"

namespace cover::scenario {

using nlohmann::json;

void GenSpec::validate() const {
    if (n_vertices < 3) throw std::invalid_argument("n_vertices must be >= 3");
    if (!(diameter > 0.0)) throw std::invalid_argument("diameter must be positive");
    if (!(radius_min > 0.0) || radius_min > radius_max) {
        throw std::invalid_argument("radius range must satisfy 0 < min <= max");
    }
    if (!(center_box.x_max >= center_box.x_min && center_box.y_max >= center_box.y_min)) {
        throw std::invalid_argument("center box is inverted");
    }
}

Polygon gen_polygon(const GenSpec& spec) {
    spec.validate();
    Stream stream(derive_seed(spec.seed, 1));
    const std::size_t n = spec.n_vertices;
    std::vector<double> angles(n);
    // Gaps below π keep the origin in the kernel, which makes the ring simple.
    for (;;) {
        for (double& a : angles) a = stream.uniform(0.0, kTwoPi);
        std::sort(angles.begin(), angles.end());
        double max_gap = angles.front() + kTwoPi - angles.back();
        bool distinct = true;
        for (std::size_t i = 1; i < n; ++i) {
            max_gap = std::max(max_gap, angles[i] - angles[i - 1]);
            distinct = distinct && angles[i] > angles[i - 1];
        }
        if (distinct && max_gap < kPi) break;
    }
    Polygon poly;
    poly.vertices.reserve(n);
    for (double a : angles) {
        const double r = stream.uniform(0.3, 1.0) * 0.5 * spec.diameter;
        poly.vertices.push_back({r * std::cos(a), r * std::sin(a)});
    }
    const double scale = spec.diameter / polygon_diameter(poly);
    for (Point& p : poly.vertices) p = scale * p;
    return poly;
}

std::vector<Circle> gen_circles(const GenSpec& spec) {
    spec.validate();
    Stream stream(derive_seed(spec.seed, 2));
    std::vector<Circle> circles;
    circles.reserve(spec.n_circles);
    const Rect& box = spec.center_box;
    for (std::size_t i = 0; i < spec.n_circles; ++i) {
        const double x = stream.uniform(box.x_min, box.x_max);
        const double y = stream.uniform(box.y_min, box.y_max);
        const double r = stream.uniform(spec.radius_min, spec.radius_max);
        circles.push_back({{x, y}, r});
    }
    return circles;
}

Scene gen_scene(const GenSpec& spec) { return make_scene(gen_polygon(spec), gen_circles(spec)); }

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

double number_at(const json& j, const char* what) {
    if (!j.is_number()) throw ParseError(std::string("expected a number for ") + what);
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ParseError(std::string("non-finite number for ") + what);
    return v;
}

Point point_at(const json& j) {
    if (!j.is_array() || j.size() < 2) throw ParseError("expected an [x, y] coordinate pair");
    return {number_at(j[0], "x"), number_at(j[1], "y")};
}

// Drops a repeated closing vertex and consecutive duplicates. Returns the number removed.
std::size_t open_ring(std::vector<Point>& ring) {
    const std::size_t before = ring.size();
    ring.erase(std::unique(ring.begin(), ring.end()), ring.end());
    while (ring.size() > 1 && ring.front() == ring.back()) ring.pop_back();
    return before - ring.size();
}

}  // namespace

LoadedScene parse_scene(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("scene JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("polygon") || !doc.contains("circles")) {
        throw ParseError("scene JSON needs \"polygon\" and \"circles\"");
    }
    const json& jp = doc["polygon"];
    const json& jc = doc["circles"];
    if (!jp.is_array() || !jc.is_array()) throw ParseError("\"polygon\" and \"circles\" must be arrays");

    LoadedScene loaded;
    Polygon poly;
    for (const json& v : jp) poly.vertices.push_back(point_at(v));
    if (const std::size_t removed = open_ring(poly.vertices); removed > 0) {
        loaded.notes.push_back("dropped " + std::to_string(removed) + " repeated vertices");
    }
    std::vector<Circle> circles;
    for (const json& c : jc) {
        if (!c.is_object() || !c.contains("cx") || !c.contains("cy") || !c.contains("r")) {
            throw ParseError("circle entries need \"cx\", \"cy\" and \"r\"");
        }
        circles.push_back({{number_at(c["cx"], "cx"), number_at(c["cy"], "cy")}, number_at(c["r"], "r")});
    }
    validate_polygon(poly);
    if (signed_area(poly) < 0.0) loaded.notes.push_back("polygon was clockwise; reversed to counterclockwise");
    loaded.scene = make_scene(std::move(poly), std::move(circles));
    return loaded;
}

LoadedScene load_scene(const std::filesystem::path& path) { return parse_scene(read_file(path)); }

std::string scene_to_json(const Scene& scene) {
    json doc;
    doc["polygon"] = json::array();
    for (const Point& p : scene.polygon.vertices) doc["polygon"].push_back({p.x, p.y});
    doc["circles"] = json::array();
    for (const Circle& c : scene.circles) {
        doc["circles"].push_back({{"cx", c.center.x}, {"cy", c.center.y}, {"r", c.radius}});
    }
    return doc.dump(2) + "\n";
}

void save_scene(const Scene& scene, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << scene_to_json(scene);
}

RingSelector RingSelector::parse(const std::string& text) {
    if (text.empty() || text == "largest") return {};
    std::size_t pos = 0;
    unsigned long long idx = 0;
    try {
        idx = std::stoull(text, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != text.size() || text.front() == '-') {
        throw std::invalid_argument("ring selector must be \"largest\" or a ring index, got \"" + text + "\"");
    }
    return {false, static_cast<std::size_t>(idx)};
}

namespace {

void collect_rings(const json& node, std::vector<std::vector<Point>>& rings) {
    if (!node.is_object() || !node.contains("type")) return;
    const std::string type = node["type"].get<std::string>();
    auto ring_of = [](const json& coords) {
        std::vector<Point> ring;
        for (const json& c : coords) ring.push_back(point_at(c));
        return ring;
    };
    if (type == "FeatureCollection") {
        for (const json& f : node.value("features", json::array())) collect_rings(f, rings);
    } else if (type == "Feature") {
        if (node.contains("geometry")) collect_rings(node["geometry"], rings);
    } else if (type == "GeometryCollection") {
        for (const json& g : node.value("geometries", json::array())) collect_rings(g, rings);
    } else if (type == "Polygon") {
        const json& coords = node.at("coordinates");
        if (!coords.empty()) rings.push_back(ring_of(coords[0]));
    } else if (type == "MultiPolygon") {
        for (const json& poly : node.at("coordinates")) {
            if (!poly.empty()) rings.push_back(ring_of(poly[0]));
        }
    }
}

}  // namespace

Polygon parse_geojson(const std::string& json_text, RingSelector selector) {
    std::vector<std::vector<Point>> rings;
    try {
        collect_rings(json::parse(json_text), rings);
    } catch (const json::exception& e) {
        throw ParseError(std::string("GeoJSON: ") + e.what());
    }
    if (rings.empty()) throw ParseError("GeoJSON contains no Polygon or MultiPolygon");
    std::size_t pick = selector.index;
    if (selector.largest) {
        double best = -1.0;
        for (std::size_t i = 0; i < rings.size(); ++i) {
            const double a = rings[i].size() >= 3 ? std::abs(signed_area(rings[i])) : 0.0;
            if (a > best) {
                best = a;
                pick = i;
            }
        }
    } else if (pick >= rings.size()) {
        throw ParseError("ring index " + std::to_string(pick) + " out of range (" + std::to_string(rings.size()) +
                         " rings)");
    }
    Polygon poly{std::move(rings[pick])};
    open_ring(poly.vertices);
    if (poly.size() < 3) throw InvalidPolygon("selected ring has fewer than 3 distinct vertices");
    if (signed_area(poly) < 0.0) std::reverse(poly.vertices.begin(), poly.vertices.end());
    return poly;
}

Polygon ingest_geojson(const std::filesystem::path& path, RingSelector selector) {
    return parse_geojson(read_file(path), selector);
}

std::vector<DeploymentRegion> caribbean_regions() {
    return {
        {"Cuba", {-85.0, -74.0, 19.5, 23.5}, 15, 30.0, 120.0},
        {"Hispaniola", {-75.0, -68.0, 17.5, 20.0}, 12, 25.0, 100.0},
        {"Trinidad", {-62.0, -60.5, 10.0, 11.0}, 9, 20.0, 80.0},
        {"Area A", {-87.0, -83.0, 13.0, 17.0}, 15, 40.0, 100.0},
        {"Area B", {-75.0, -65.0, 9.5, 10.5}, 20, 35.0, 90.0},
    };
}

std::vector<Circle> deploy_circles(const std::vector<DeploymentRegion>& regions, std::uint64_t seed,
                                   double degrees_per_km) {
    std::vector<Circle> circles;
    for (std::size_t r = 0; r < regions.size(); ++r) {
        const DeploymentRegion& region = regions[r];
        Stream stream(derive_seed(seed, 100 + r));
        for (std::size_t i = 0; i < region.nodes; ++i) {
            const double x = stream.uniform(region.box.x_min, region.box.x_max);
            const double y = stream.uniform(region.box.y_min, region.box.y_max);
            const double km = stream.uniform(region.r_min_km, region.r_max_km);
            circles.push_back({{x, y}, km * degrees_per_km});
        }
    }
    return circles;
}

}  // namespace cover::scenario
