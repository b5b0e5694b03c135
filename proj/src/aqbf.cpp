#include "cover/aqbf.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cover/error.hpp"
#include "cover/parallel.hpp"
#include "cover/rng.hpp"

namespace cover::aqbf {

void AqbfParams::validate() const {
    if (!(epsilon_partition > 0.0 && epsilon_partition <= 1.0)) {
        throw std::invalid_argument("epsilon_partition must lie in (0, 1]");
    }
    if (!(epsilon_sampling > 0.0 && epsilon_sampling <= 1.0)) {
        throw std::invalid_argument("epsilon_sampling must lie in (0, 1]");
    }
    if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("C must be positive");
    if (n_min < 1) throw std::invalid_argument("N_min must be at least 1");
    if (n_max < n_min) throw std::invalid_argument("N_max must be >= N_min");
}

NormalizedScene normalize_scene(const Scene& scene) {
    const double diameter = polygon_diameter(scene.polygon);
    if (!(diameter > 0.0) || !std::isfinite(diameter)) throw InvalidScene("polygon has zero diameter");
    const Rect pb = bounding_box(scene.polygon);
    const Point origin{pb.x_min, pb.y_min};
    const double inv = 1.0 / diameter;

    NormalizedScene out;
    out.scale = diameter;
    out.origin = origin;
    out.scene.polygon.vertices.reserve(scene.polygon.size());
    for (const Point& p : scene.polygon.vertices) out.scene.polygon.vertices.push_back(inv * (p - origin));
    out.scene.circles.reserve(scene.circles.size());
    for (const Circle& c : scene.circles) out.scene.circles.push_back({inv * (c.center - origin), inv * c.radius});
    out.scene.bbox = bounding_box(out.scene.polygon, out.scene.circles);
    return out;
}

RegionClass classify_cell(const Cell& cell, const Scene& scene) {
    bool any_inside = false;
    bool any_boundary = false;
    for (const Circle& c : scene.circles) {
        switch (classify_cell_vs_circle(cell, c)) {
            case RegionClass::Inside: any_inside = true; break;
            case RegionClass::Boundary: any_boundary = true; break;
            case RegionClass::Outside: break;
        }
    }
    if (!any_inside && !any_boundary) return RegionClass::Outside;
    const RegionClass pc = classify_cell_vs_polygon(cell, scene.polygon);
    if (pc == RegionClass::Outside) return RegionClass::Outside;
    if (pc == RegionClass::Inside && any_inside && !any_boundary) return RegionClass::Inside;
    return RegionClass::Boundary;
}

std::vector<std::size_t> QuadTree::leaves() const {
    std::vector<std::size_t> out;
    if (nodes.empty()) return out;
    std::vector<std::size_t> stack{0};
    while (!stack.empty()) {
        const std::size_t i = stack.back();
        stack.pop_back();
        const QuadNode& node = nodes[i];
        if (node.is_leaf()) {
            out.push_back(i);
            continue;
        }
        for (int q = 3; q >= 0; --q) stack.push_back(static_cast<std::size_t>(node.first_child) + q);
    }
    return out;
}

int QuadTree::max_depth() const {
    int d = 0;
    for (const auto& n : nodes) d = std::max(d, n.depth);
    return d;
}

std::size_t QuadTree::count_leaves(RegionClass c) const {
    return static_cast<std::size_t>(
        std::count_if(nodes.begin(), nodes.end(), [c](const QuadNode& n) { return n.is_leaf() && n.classification == c; }));
}

int depth_bound(double epsilon_partition) {
    return static_cast<int>(std::ceil(std::log2(1.0 / std::sqrt(epsilon_partition)) - 1e-12));
}

namespace {

void subdivide(QuadTree& tree, std::size_t index, const Scene& scene) {
    QuadNode& node = tree.nodes[index];
    node.classification = classify_cell(node.cell, scene);
    if (node.classification == RegionClass::Outside) return;
    if (node.classification == RegionClass::Inside || node.cell.width() <= tree.delta) return;

    const Cell c = node.cell;
    const int depth = node.depth + 1;
    const std::uint64_t code = node.path_code;
    const double xm = 0.5 * (c.x_min + c.x_max);
    const double ym = 0.5 * (c.y_min + c.y_max);
    const std::size_t first = tree.nodes.size();
    node.first_child = static_cast<std::int64_t>(first);
    // `node` may dangle after the pushes below.
    const Cell quadrants[4] = {{c.x_min, xm, c.y_min, ym}, {xm, c.x_max, c.y_min, ym},
                               {c.x_min, xm, ym, c.y_max}, {xm, c.x_max, ym, c.y_max}};
    for (std::uint64_t q = 0; q < 4; ++q) {
        QuadNode child;
        child.cell = quadrants[q];
        child.depth = depth;
        child.path_code = mix64(code ^ (q + 1));
        tree.nodes.push_back(child);
    }
    for (std::size_t q = 0; q < 4; ++q) subdivide(tree, first + q, scene);
}

}  // namespace

QuadTree partition(const NormalizedScene& normalized, const AqbfParams& params) {
    params.validate();
    const Scene& scene = normalized.scene;
    const Rect pb = bounding_box(scene.polygon);
    const double side = std::max({1.0, pb.width(), pb.height()});

    QuadTree tree;
    tree.delta = std::sqrt(params.epsilon_partition);
    QuadNode root;
    root.cell = {pb.x_min, pb.x_min + side, pb.y_min, pb.y_min + side};
    root.path_code = mix64(0);
    tree.nodes.push_back(root);
    subdivide(tree, 0, scene);
    return tree;
}

CellCoverageInfo coverage_info(const Cell& cell, const Scene& scene) {
    CellCoverageInfo info;
    for (std::size_t k = 0; k < scene.circles.size(); ++k) {
        switch (classify_cell_vs_circle(cell, scene.circles[k])) {
            case RegionClass::Inside: info.inside.push_back(k); break;
            case RegionClass::Boundary:
                info.boundary.push_back(k);
                info.kappa_sum += 1.0 / scene.circles[k].radius;
                break;
            case RegionClass::Outside: break;
        }
    }
    info.multiplicity = info.boundary.size();
    info.polygon_class = classify_cell_vs_polygon(cell, scene.polygon);
    switch (info.polygon_class) {
        case RegionClass::Inside: info.area_in_polygon = cell.area(); break;
        case RegionClass::Outside: info.area_in_polygon = 0.0; break;
        case RegionClass::Boundary: {
            const auto ring = clip_ring_to_rect(scene.polygon.vertices, cell);
            info.area_in_polygon = ring.size() < 3 ? 0.0 : std::clamp(signed_area(ring), 0.0, cell.area());
            break;
        }
    }
    return info;
}

std::uint64_t subsample_count(const CellCoverageInfo& info, const Cell& cell, const AqbfParams& params) {
    const double eps2 = params.epsilon_sampling * params.epsilon_sampling;
    const double raw =
        params.c * static_cast<double>(info.multiplicity) * info.kappa_sum * cell.area() / eps2;
    // Shave a relative 1e-12 so products that are integral in exact arithmetic do not round up.
    const double wanted = std::ceil(raw * (1.0 - 1e-12));
    if (!(wanted < static_cast<double>(params.n_max))) return params.n_max;
    const auto n = static_cast<std::uint64_t>(std::max(0.0, wanted));
    return std::clamp(n, params.n_min, params.n_max);
}

CellContribution cell_contribution(const Cell& cell, RegionClass classification, const Scene& scene,
                                   const AqbfParams& params, std::uint64_t stream_seed) {
    if (classification == RegionClass::Inside) return {cell.area(), 0, Route::Interior};
    if (classification == RegionClass::Outside) return {0.0, 0, Route::Exterior};

    const CellCoverageInfo info = coverage_info(cell, scene);
    if (!info.inside.empty()) {
        const double weight = params.multiplicity_weighted ? static_cast<double>(info.inside.size()) : 1.0;
        return {weight * info.area_in_polygon, 0, Route::Covered};
    }
    if (info.boundary.empty() || info.area_in_polygon <= 0.0) return {0.0, 0, Route::Empty};

    std::vector<Point> ring = info.polygon_class == RegionClass::Inside
                                  ? cell.as_polygon().vertices
                                  : clip_ring_to_rect(scene.polygon.vertices, cell);
    if (info.boundary.size() == 1) {
        return {polygon_circle_area(ring, scene.circles[info.boundary.front()]), 0, Route::Analytic};
    }

    const std::uint64_t n = subsample_count(info, cell, params);
    const bool test_polygon = info.polygon_class != RegionClass::Inside;
    Stream stream(stream_seed);
    std::uint64_t hits = 0;
    for (std::uint64_t s = 0; s < n; ++s) {
        const Point p{stream.uniform(cell.x_min, cell.x_max), stream.uniform(cell.y_min, cell.y_max)};
        bool covered = false;
        for (std::size_t k : info.boundary) {
            if (scene.circles[k].contains(p)) {
                covered = true;
                break;
            }
        }
        if (covered && (!test_polygon || point_in_polygon(p, ring))) ++hits;
    }
    return {cell.area() * static_cast<double>(hits) / static_cast<double>(n), n, Route::Sampled};
}

AreaResult compute_area(const Scene& scene, const AqbfParams& params) {
    const auto start = std::chrono::steady_clock::now();
    params.validate();
    const NormalizedScene normalized = normalize_scene(scene);
    const QuadTree tree = partition(normalized, params);
    const std::vector<std::size_t> leaves = tree.leaves();

    std::vector<CellContribution> parts(leaves.size());
    parallel_for(leaves.size(), params.threads, [&](std::size_t i) {
        const QuadNode& node = tree.nodes[leaves[i]];
        parts[i] = cell_contribution(node.cell, node.classification, normalized.scene, params,
                                     derive_seed(params.seed, node.path_code));
    });

    AreaResult result;
    double sum = 0.0;
    for (std::size_t i = 0; i < leaves.size(); ++i) {
        const CellContribution& part = parts[i];
        sum += part.area;
        result.total_subsamples += part.samples;
        switch (part.route) {
            case Route::Interior: ++result.n_interior; break;
            case Route::Exterior: ++result.n_exterior; break;
            case Route::Analytic: ++result.n_analytic; break;
            case Route::Sampled: ++result.n_sampled; break;
            default: break;
        }
    }
    result.n_leaf = leaves.size();
    result.n_boundary = result.n_leaf - result.n_interior - result.n_exterior;
    result.n_classified = tree.nodes.size();
    result.max_depth_reached = tree.max_depth();
    result.area = normalized.scale * normalized.scale * sum;
    result.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace cover::aqbf
