#include "cover/exact_boundary.hpp"

#include <algorithm>

namespace cover::exact {

namespace {

bool duplicate_of(const Scene& scene, std::size_t a, std::size_t b) {
    return a != b && scene.circles[a] == scene.circles[b];
}

bool in_other_open_disk(Point p, const Scene& scene, std::size_t k) {
    for (std::size_t j = 0; j < scene.circles.size(); ++j) {
        if (j == k || duplicate_of(scene, j, k)) continue;
        const Circle& c = scene.circles[j];
        const Point d = p - c.center;
        if (dot(d, d) < c.radius * c.radius) return true;
    }
    return false;
}

bool in_any_closed_disk(Point p, const Scene& scene) {
    return std::any_of(scene.circles.begin(), scene.circles.end(), [p](const Circle& c) { return c.contains(p); });
}

void sort_unique(std::vector<double>& v, double tol) {
    std::sort(v.begin(), v.end());
    std::vector<double> out;
    out.reserve(v.size());
    for (double x : v) {
        if (out.empty() || x - out.back() > tol) out.push_back(x);
    }
    v = std::move(out);
}

bool circle_arc_point_kept(Point p, const Scene& scene, std::size_t k) {
    return point_in_polygon(p, scene.polygon) && !in_other_open_disk(p, scene, k);
}

}  // namespace

std::vector<ArcInterval> circle_boundary_arcs(std::size_t k, const Scene& scene) {
    const Circle& circle = scene.circles.at(k);
    for (std::size_t j = 0; j < k; ++j) {
        if (duplicate_of(scene, j, k)) return {};
    }
    const double tol = scene_tolerance(scene);
    const Polygon& poly = scene.polygon;

    std::vector<double> angles;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point a = poly[i];
        const Point d = poly.next(i) - a;
        for (double t : segment_circle_intersections(a, poly.next(i), circle, tol)) {
            const Point q = a + t * d - circle.center;
            angles.push_back(normalize_angle(std::atan2(q.y, q.x)));
        }
    }
    for (std::size_t j = 0; j < scene.circles.size(); ++j) {
        if (j == k || duplicate_of(scene, j, k)) continue;
        const auto crossing = circle_circle_intersection_angles(circle, scene.circles[j], tol);
        for (int s = 0; s < crossing.count; ++s) angles.push_back(crossing.angles[s]);
        // Tangent circles touch at one point; cutting there keeps the probe away from it.
        const Circle& other = scene.circles[j];
        const Point d = other.center - circle.center;
        const double dist = norm(d);
        if (crossing.count == 0 && dist > tol) {
            if (std::abs(dist - (circle.radius + other.radius)) <= tol || std::abs(dist - (circle.radius - other.radius)) <= tol) {
                angles.push_back(normalize_angle(std::atan2(d.y, d.x)));
            } else if (std::abs(dist - (other.radius - circle.radius)) <= tol) {
                angles.push_back(normalize_angle(std::atan2(-d.y, -d.x)));
            }
        }
    }
    const double angle_tol = tol / circle.radius;
    sort_unique(angles, angle_tol);
    auto on_circle = [&](double theta) {
        return circle.center + circle.radius * Point{std::cos(theta), std::sin(theta)};
    };

    if (angles.empty()) {
        if (circle_arc_point_kept(on_circle(0.0), scene, k)) return {{k, 0.0, kTwoPi}};
        return {};
    }

    // Kept intervals in unwrapped form [start, end), end possibly beyond 2π.
    std::vector<std::pair<double, double>> kept;
    const std::size_t n = angles.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double start = angles[i];
        const double end = (i + 1 < n) ? angles[i + 1] : angles[0] + kTwoPi;
        if (end - start <= angle_tol) continue;
        if (!circle_arc_point_kept(on_circle(0.5 * (start + end)), scene, k)) continue;
        if (!kept.empty() && std::abs(kept.back().second - start) <= angle_tol) {
            kept.back().second = end;
        } else {
            kept.emplace_back(start, end);
        }
    }
    // The last interval may continue into the first one across angles[0].
    if (kept.size() >= 2 && std::abs(kept.back().second - (kept.front().first + kTwoPi)) <= angle_tol) {
        kept.front().first = kept.back().first - kTwoPi;
        kept.pop_back();
    }
    if (kept.size() == 1 && kept.front().second - kept.front().first >= kTwoPi - angle_tol) {
        return {{k, 0.0, kTwoPi}};
    }

    std::vector<ArcInterval> arcs;
    for (auto [start, end] : kept) {
        if (start < 0.0) {
            arcs.push_back({k, start + kTwoPi, kTwoPi});
            arcs.push_back({k, 0.0, end});
        } else if (end > kTwoPi) {
            arcs.push_back({k, start, kTwoPi});
            arcs.push_back({k, 0.0, end - kTwoPi});
        } else {
            arcs.push_back({k, start, end});
        }
    }
    std::erase_if(arcs, [&](const ArcInterval& a) { return a.theta_end - a.theta_start <= 0.0; });
    std::sort(arcs.begin(), arcs.end(),
              [](const ArcInterval& a, const ArcInterval& b) { return a.theta_start < b.theta_start; });
    return arcs;
}

std::vector<EdgePiece> polygon_edge_pieces_in_union(const Scene& scene) {
    const double tol = scene_tolerance(scene);
    const Polygon& poly = scene.polygon;
    std::vector<EdgePiece> pieces;
    std::vector<double> cuts;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point a = poly[i];
        const Point b = poly.next(i);
        const Point d = b - a;
        const double t_tol = tol / norm(d);
        cuts.assign({0.0, 1.0});
        for (const auto& c : scene.circles) {
            const auto ts = segment_circle_intersections(a, b, c, tol);
            cuts.insert(cuts.end(), ts.begin(), ts.end());
        }
        sort_unique(cuts, t_tol);
        if (cuts.back() < 1.0) cuts.back() = 1.0;
        bool open = false;
        for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
            const double t0 = cuts[s];
            const double t1 = cuts[s + 1];
            if (t1 - t0 <= 0.0) continue;
            if (!in_any_closed_disk(a + (0.5 * (t0 + t1)) * d, scene)) {
                open = false;
                continue;
            }
            if (open) {
                pieces.back().t_end = t1;
            } else {
                pieces.push_back({i, t0, t1});
                open = true;
            }
        }
    }
    return pieces;
}

namespace {

bool has_tangency(const Scene& scene, double tol) {
    const auto& circles = scene.circles;
    for (std::size_t i = 0; i < circles.size(); ++i) {
        for (std::size_t j = i + 1; j < circles.size(); ++j) {
            if (circles[i] == circles[j]) continue;
            const double d = norm(circles[j].center - circles[i].center);
            const double r1 = circles[i].radius;
            const double r2 = circles[j].radius;
            if (std::abs(d - (r1 + r2)) <= tol || std::abs(d - std::abs(r1 - r2)) <= tol) return true;
        }
    }
    const Polygon& poly = scene.polygon;
    for (const auto& c : circles) {
        for (std::size_t i = 0; i < poly.size(); ++i) {
            if (std::abs(norm(poly[i] - c.center) - c.radius) <= tol) return true;
            const Point a = poly[i];
            const Point d = poly.next(i) - a;
            const double t = std::clamp(dot(c.center - a, d) / dot(d, d), 0.0, 1.0);
            if (std::abs(norm(a + t * d - c.center) - c.radius) <= tol && t > 0.0 && t < 1.0) {
                // Only a tangency if the circle does not cross the edge there.
                if (segment_circle_intersections(a, poly.next(i), c, tol).size() == 1 &&
                    norm(a - c.center) > c.radius && norm(poly.next(i) - c.center) > c.radius) {
                    return true;
                }
            }
        }
    }
    return false;
}

}  // namespace

BoundaryIntegral integrate_boundary(const Scene& scene) {
    BoundaryIntegral result;
    if (scene.circles.empty()) return result;
    const double tol = scene_tolerance(scene);
    // Integrate about the bbox center to keep the cross terms small.
    const Point origin = scene.bbox.center();
    const Polygon& poly = scene.polygon;

    double total = 0.0;
    const auto pieces = polygon_edge_pieces_in_union(scene);
    for (const auto& piece : pieces) {
        const Point a = poly[piece.edge_index] - origin;
        const Point d = poly.next(piece.edge_index) - poly[piece.edge_index];
        total += green_segment(a + piece.t_start * d, a + piece.t_end * d);
    }
    std::size_t n_arcs = 0;
    for (std::size_t k = 0; k < scene.circles.size(); ++k) {
        const Circle& c = scene.circles[k];
        for (const auto& arc : circle_boundary_arcs(k, scene)) {
            total += green_arc(c.center - origin, c.radius, arc.theta_start, arc.theta_end);
            ++n_arcs;
        }
    }
    result.area = std::max(0.0, total);
    result.n_arcs = n_arcs;
    result.n_pieces = pieces.size();
    result.tangency_warning = has_tangency(scene, tol);
    return result;
}

}  // namespace cover::exact
