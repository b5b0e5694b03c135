#include "cover/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "cover/error.hpp"
#include "cover/parallel.hpp"
#include "cover/rng.hpp"

namespace cover::baselines {

namespace {

constexpr std::uint64_t kMcBlock = 1u << 16;

// Like aqbf::classify_cell, but a cell inside P and inside any single circle is interior
// even when other circle boundaries cross it. Those crossings are not part of ∂Ω, and
// treating them as boundary would bias the half-area rule below.
RegionClass classify_region(const Cell& cell, const Scene& scene) {
    bool any_inside = false;
    bool any_boundary = false;
    for (const Circle& c : scene.circles) {
        const RegionClass rc = classify_cell_vs_circle(cell, c);
        any_inside = any_inside || rc == RegionClass::Inside;
        any_boundary = any_boundary || rc == RegionClass::Boundary;
    }
    if (!any_inside && !any_boundary) return RegionClass::Outside;
    RegionClass pc = classify_cell_vs_polygon(cell, scene.polygon);
    if (pc == RegionClass::Boundary) {
        // Edges that only touch the cell's sides leave it fully in or out.
        const double inside = clip_polygon_to_cell(scene.polygon, cell);
        if (inside <= 0.0) pc = RegionClass::Outside;
        if (inside >= cell.area()) pc = RegionClass::Inside;
    }
    if (pc == RegionClass::Outside) return RegionClass::Outside;
    if (pc == RegionClass::Inside && any_inside) return RegionClass::Inside;
    return RegionClass::Boundary;
}

}  // namespace

McEstimate monte_carlo(const Scene& scene, std::uint64_t n_samples, std::uint64_t seed, unsigned threads) {
    if (n_samples < 1) throw std::invalid_argument("monte_carlo needs at least one sample");
    const Rect box = scene.bbox;
    const std::uint64_t blocks = (n_samples + kMcBlock - 1) / kMcBlock;
    std::vector<std::uint64_t> hits(blocks, 0);
    parallel_for(
        blocks, threads,
        [&](std::size_t b) {
            Stream stream(derive_seed(seed, b));
            const std::uint64_t count = std::min(kMcBlock, n_samples - b * kMcBlock);
            std::uint64_t h = 0;
            for (std::uint64_t s = 0; s < count; ++s) {
                const Point p{stream.uniform(box.x_min, box.x_max), stream.uniform(box.y_min, box.y_max)};
                h += in_region(p, scene);
            }
            hits[b] = h;
        },
        1);
    McEstimate est;
    est.n_samples = n_samples;
    est.n_inside = std::accumulate(hits.begin(), hits.end(), std::uint64_t{0});
    const double bbox_area = box.area();
    est.area = bbox_area * static_cast<double>(est.n_inside) / static_cast<double>(n_samples);
    est.half_width = kZ975 * bbox_area / (2.0 * std::sqrt(static_cast<double>(n_samples)));
    return est;
}

double uniform_grid(const Scene& scene, std::size_t resolution, unsigned threads) {
    if (resolution < 1) throw std::invalid_argument("uniform_grid resolution must be >= 1");
    const Rect root = square_hull(scene.bbox);
    const double h = root.width() / static_cast<double>(resolution);
    std::vector<std::uint64_t> row_hits(resolution, 0);
    parallel_for(
        resolution, threads,
        [&](std::size_t j) {
            const double y = root.y_min + (static_cast<double>(j) + 0.5) * h;
            std::uint64_t count = 0;
            for (std::size_t i = 0; i < resolution; ++i) {
                count += in_region({root.x_min + (static_cast<double>(i) + 0.5) * h, y}, scene);
            }
            row_hits[j] = count;
        },
        4);
    const auto total = std::accumulate(row_hits.begin(), row_hits.end(), std::uint64_t{0});
    return static_cast<double>(total) * h * h;
}

double grid_integration(const Scene& scene, std::size_t resolution, unsigned threads) {
    if (resolution < 1) throw std::invalid_argument("grid_integration resolution must be >= 1");
    constexpr int kStencil = 5;
    const Rect root = square_hull(scene.bbox);
    const double h = root.width() / static_cast<double>(resolution);
    std::vector<double> row_area(resolution, 0.0);
    parallel_for(
        resolution, threads,
        [&](std::size_t j) {
            double acc = 0.0;
            for (std::size_t i = 0; i < resolution; ++i) {
                const Cell cell{root.x_min + static_cast<double>(i) * h, root.x_min + static_cast<double>(i + 1) * h,
                                root.y_min + static_cast<double>(j) * h, root.y_min + static_cast<double>(j + 1) * h};
                switch (classify_region(cell, scene)) {
                    case RegionClass::Inside: acc += cell.area(); break;
                    case RegionClass::Outside: break;
                    case RegionClass::Boundary: {
                        int inside = 0;
                        for (int sy = 0; sy < kStencil; ++sy) {
                            for (int sx = 0; sx < kStencil; ++sx) {
                                const Point p{cell.x_min + (sx + 0.5) * cell.width() / kStencil,
                                              cell.y_min + (sy + 0.5) * cell.height() / kStencil};
                                inside += in_region(p, scene);
                            }
                        }
                        acc += cell.area() * inside / (kStencil * kStencil);
                        break;
                    }
                }
            }
            row_area[j] = acc;
        },
        4);
    return std::accumulate(row_area.begin(), row_area.end(), 0.0);
}

namespace {

double subdivide(const Cell& cell, const Scene& scene, int depth, int max_depth) {
    switch (classify_region(cell, scene)) {
        case RegionClass::Inside: return cell.area();
        case RegionClass::Outside: return 0.0;
        case RegionClass::Boundary: break;
    }
    if (depth >= max_depth) return 0.5 * cell.area();
    const double xm = 0.5 * (cell.x_min + cell.x_max);
    const double ym = 0.5 * (cell.y_min + cell.y_max);
    return subdivide({cell.x_min, xm, cell.y_min, ym}, scene, depth + 1, max_depth) +
           subdivide({xm, cell.x_max, cell.y_min, ym}, scene, depth + 1, max_depth) +
           subdivide({cell.x_min, xm, ym, cell.y_max}, scene, depth + 1, max_depth) +
           subdivide({xm, cell.x_max, ym, cell.y_max}, scene, depth + 1, max_depth);
}

}  // namespace

double adaptive_subdivision(const Scene& scene, int max_depth) {
    if (max_depth < 0) throw std::invalid_argument("adaptive_subdivision max_depth must be >= 0");
    const Rect pb = bounding_box(scene.polygon);
    const double side = std::max(pb.width(), pb.height());
    return subdivide({pb.x_min, pb.x_min + side, pb.y_min, pb.y_min + side}, scene, 0, max_depth);
}

namespace {

bool inside_triangle(Point p, Point a, Point b, Point c) {
    return cross(b - a, p - a) >= 0.0 && cross(c - b, p - b) >= 0.0 && cross(a - c, p - c) >= 0.0;
}

}  // namespace

std::vector<Triangle> ear_clip(const Polygon& polygon) {
    if (polygon.size() < 3) throw InvalidPolygon("triangulation needs at least 3 vertices");
    if (signed_area(polygon) == 0.0) throw InvalidPolygon("triangulation of a zero-area polygon");
    std::vector<Point> v = polygon.vertices;
    if (signed_area(v) < 0.0) std::reverse(v.begin(), v.end());
    std::vector<Triangle> out;
    out.reserve(v.size() - 2);
    while (v.size() > 3) {
        const std::size_t m = v.size();
        bool clipped = false;
        for (std::size_t i = 0; i < m; ++i) {
            const Point a = v[(i + m - 1) % m];
            const Point b = v[i];
            const Point c = v[(i + 1) % m];
            if (cross(b - a, c - b) <= 0.0) continue;  // reflex or flat
            bool blocked = false;
            for (std::size_t j = 0; j < m && !blocked; ++j) {
                const Point p = v[j];
                if (p == a || p == b || p == c) continue;
                blocked = inside_triangle(p, a, b, c);
            }
            if (blocked) continue;
            out.push_back({a, b, c});
            v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
            clipped = true;
            break;
        }
        if (!clipped) throw InvalidPolygon("ear clipping found no ear; polygon is degenerate");
    }
    out.push_back({v[0], v[1], v[2]});
    return out;
}

double triangulation(const Scene& scene) {
    double total = 0.0;
    for (const Triangle& t : ear_clip(scene.polygon)) {
        const double tri_area = std::abs(signed_area(t));
        double covered = 0.0;
        for (const Circle& c : scene.circles) covered += polygon_circle_area(t, c);
        total += std::min(tri_area, covered);
    }
    return total;
}

}  // namespace cover::baselines
