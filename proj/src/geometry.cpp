#include "cover/geometry.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "cover/error.hpp"
#include "cover/exact_boundary.hpp"

namespace cover {

const char* to_string(RegionClass c) {
    switch (c) {
        case RegionClass::Inside: return "INT";
        case RegionClass::Outside: return "EXT";
        case RegionClass::Boundary: return "BDY";
    }
    return "?";
}

namespace {

bool finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

int orientation_sign(Point a, Point b, Point c) {
    const double v = cross(b - a, c - a);
    return (v > 0.0) - (v < 0.0);
}

bool on_segment_collinear(Point a, Point b, Point p) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
}

}  // namespace

void validate_circle(const Circle& circle) {
    if (!finite(circle.center) || !std::isfinite(circle.radius)) {
        throw InvalidRadius("circle has non-finite center or radius");
    }
    if (!(circle.radius > 0.0)) {
        throw InvalidRadius("circle radius must be positive, got " + std::to_string(circle.radius));
    }
}

void validate_polygon(const Polygon& polygon) {
    const std::size_t m = polygon.size();
    if (m < 3) throw InvalidPolygon("polygon needs at least 3 vertices");
    for (std::size_t i = 0; i < m; ++i) {
        if (!finite(polygon[i])) throw InvalidPolygon("polygon vertex " + std::to_string(i) + " is not finite");
        if (polygon[i] == polygon.next(i)) {
            throw InvalidPolygon("polygon has repeated consecutive vertex at index " + std::to_string(i));
        }
    }
    if (signed_area(polygon) == 0.0) throw InvalidPolygon("polygon has zero area");
    if (!is_simple(polygon)) throw InvalidPolygon("polygon is self-intersecting");
}

Scene make_scene(Polygon polygon, std::vector<Circle> circles) {
    validate_polygon(polygon);
    for (const auto& c : circles) validate_circle(c);
    if (signed_area(polygon) < 0.0) std::reverse(polygon.vertices.begin(), polygon.vertices.end());
    Scene scene{std::move(polygon), std::move(circles), {}};
    scene.bbox = bounding_box(scene.polygon, scene.circles);
    return scene;
}

Rect bounding_box(std::span<const Point> points) {
    Rect r{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
           std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const Point& p : points) {
        r.x_min = std::min(r.x_min, p.x);
        r.x_max = std::max(r.x_max, p.x);
        r.y_min = std::min(r.y_min, p.y);
        r.y_max = std::max(r.y_max, p.y);
    }
    return r;
}

Rect bounding_box(const Polygon& polygon) { return bounding_box(polygon.vertices); }

Rect bounding_box(const Polygon& polygon, std::span<const Circle> circles) {
    Rect r = bounding_box(polygon);
    for (const auto& c : circles) {
        r.x_min = std::min(r.x_min, c.center.x - c.radius);
        r.x_max = std::max(r.x_max, c.center.x + c.radius);
        r.y_min = std::min(r.y_min, c.center.y - c.radius);
        r.y_max = std::max(r.y_max, c.center.y + c.radius);
    }
    return r;
}

Rect square_hull(const Rect& rect) {
    const double side = std::max(rect.width(), rect.height());
    return {rect.x_min, rect.x_min + side, rect.y_min, rect.y_min + side};
}

double scene_tolerance(const Scene& scene) {
    return kRelativeTolerance * std::hypot(scene.bbox.width(), scene.bbox.height());
}

double signed_area(std::span<const Point> ring) {
    const std::size_t m = ring.size();
    if (m < 3) throw InvalidPolygon("signed area needs at least 3 vertices");
    // Shoelace relative to the first vertex to limit cancellation far from the origin.
    const Point o = ring[0];
    double twice = 0.0;
    for (std::size_t i = 1; i + 1 < m; ++i) twice += cross(ring[i] - o, ring[i + 1] - o);
    return 0.5 * twice;
}

double polygon_diameter(const Polygon& polygon) {
    double best = 0.0;
    for (std::size_t i = 0; i < polygon.size(); ++i) {
        for (std::size_t j = i + 1; j < polygon.size(); ++j) {
            const Point d = polygon[i] - polygon[j];
            best = std::max(best, dot(d, d));
        }
    }
    return std::sqrt(best);
}

double perimeter(const Polygon& polygon) {
    double total = 0.0;
    for (std::size_t i = 0; i < polygon.size(); ++i) total += norm(polygon.next(i) - polygon[i]);
    return total;
}

bool point_in_polygon(Point p, std::span<const Point> ring, double tol) {
    const std::size_t m = ring.size();
    bool inside = false;
    for (std::size_t i = 0, j = m - 1; i < m; j = i++) {
        const Point a = ring[j];
        const Point b = ring[i];
        if (p.y < std::min(a.y, b.y) - tol || p.y > std::max(a.y, b.y) + tol) continue;
        if (p.x >= std::min(a.x, b.x) - tol && p.x <= std::max(a.x, b.x) + tol) {
            const double c = cross(b - a, p - a);
            if (tol > 0.0 ? std::abs(c) <= tol * norm(b - a) : c == 0.0) return true;
        }
        if ((a.y > p.y) != (b.y > p.y)) {
            const double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < x_cross) inside = !inside;
        }
    }
    return inside;
}

bool in_region(Point p, const Scene& scene) {
    const bool covered =
        std::any_of(scene.circles.begin(), scene.circles.end(), [p](const Circle& c) { return c.contains(p); });
    return covered && point_in_polygon(p, scene.polygon);
}

bool segments_intersect(Point a, Point b, Point c, Point d) {
    const int o1 = orientation_sign(a, b, c);
    const int o2 = orientation_sign(a, b, d);
    const int o3 = orientation_sign(c, d, a);
    const int o4 = orientation_sign(c, d, b);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment_collinear(a, b, c)) return true;
    if (o2 == 0 && on_segment_collinear(a, b, d)) return true;
    if (o3 == 0 && on_segment_collinear(c, d, a)) return true;
    if (o4 == 0 && on_segment_collinear(c, d, b)) return true;
    return false;
}

bool segment_intersects_rect(Point a, Point b, const Rect& rect) {
    if (std::max(a.x, b.x) < rect.x_min || std::min(a.x, b.x) > rect.x_max || std::max(a.y, b.y) < rect.y_min ||
        std::min(a.y, b.y) > rect.y_max) {
        return false;
    }
    if (rect.contains(a) || rect.contains(b)) return true;
    // Bounding boxes overlap: the segment meets the rectangle iff its supporting line does.
    int pos = 0;
    int neg = 0;
    for (const Point& c : rect.corners()) {
        const int s = orientation_sign(a, b, c);
        pos += s > 0;
        neg += s < 0;
    }
    return !(pos == 4 || neg == 4);
}

bool is_simple(const Polygon& polygon) {
    const std::size_t m = polygon.size();
    for (std::size_t i = 0; i < m; ++i) {
        const Point a = polygon[i];
        const Point b = polygon.next(i);
        for (std::size_t j = i + 1; j < m; ++j) {
            const bool adjacent = (j == i + 1) || (i == 0 && j == m - 1);
            const Point c = polygon[j];
            const Point d = polygon.next(j);
            if (adjacent) {
                // Adjacent edges share one vertex; they must not overlap beyond it.
                const Point shared = (j == i + 1) ? b : a;
                const Point other_ij = (j == i + 1) ? a : b;
                const Point other_j = (j == i + 1) ? d : c;
                if (orientation_sign(shared, other_ij, other_j) == 0 &&
                    dot(other_ij - shared, other_j - shared) > 0.0) {
                    return false;
                }
                continue;
            }
            if (segments_intersect(a, b, c, d)) return false;
        }
    }
    return true;
}

RegionClass classify_cell_vs_circle(const Cell& cell, const Circle& circle) {
    const Point c = circle.center;
    const double r2 = circle.radius * circle.radius;
    const double nx = std::clamp(c.x, cell.x_min, cell.x_max) - c.x;
    const double ny = std::clamp(c.y, cell.y_min, cell.y_max) - c.y;
    if (nx * nx + ny * ny >= r2) return RegionClass::Outside;
    const double fx = std::max(std::abs(cell.x_min - c.x), std::abs(cell.x_max - c.x));
    const double fy = std::max(std::abs(cell.y_min - c.y), std::abs(cell.y_max - c.y));
    if (fx * fx + fy * fy <= r2) return RegionClass::Inside;
    return RegionClass::Boundary;
}

RegionClass classify_cell_vs_polygon(const Cell& cell, const Polygon& polygon) {
    for (std::size_t i = 0; i < polygon.size(); ++i) {
        if (segment_intersects_rect(polygon[i], polygon.next(i), cell)) return RegionClass::Boundary;
    }
    // No edge touches the closed cell, so every point of it shares the center's status.
    return point_in_polygon(cell.center(), polygon) ? RegionClass::Inside : RegionClass::Outside;
}

namespace {

// One Sutherland–Hodgman pass against an axis-aligned half-plane.
// axis 0 clips on x, 1 on y; keep_above keeps coordinates >= bound.
std::vector<Point> clip_half_plane(const std::vector<Point>& in, int axis, double bound, bool keep_above) {
    std::vector<Point> out;
    if (in.empty()) return out;
    out.reserve(in.size() + 4);
    auto coord = [axis](Point p) { return axis == 0 ? p.x : p.y; };
    auto inside = [&](Point p) { return keep_above ? coord(p) >= bound : coord(p) <= bound; };
    auto crossing = [&](Point a, Point b) {
        const double t = (bound - coord(a)) / (coord(b) - coord(a));
        Point q = a + t * (b - a);
        (axis == 0 ? q.x : q.y) = bound;
        return q;
    };
    Point prev = in.back();
    bool prev_in = inside(prev);
    for (const Point& cur : in) {
        const bool cur_in = inside(cur);
        if (cur_in) {
            if (!prev_in) out.push_back(crossing(prev, cur));
            out.push_back(cur);
        } else if (prev_in) {
            out.push_back(crossing(prev, cur));
        }
        prev = cur;
        prev_in = cur_in;
    }
    return out;
}

}  // namespace

std::vector<Point> clip_ring_to_rect(std::span<const Point> ring, const Rect& rect) {
    std::vector<Point> poly(ring.begin(), ring.end());
    poly = clip_half_plane(poly, 0, rect.x_min, true);
    poly = clip_half_plane(poly, 0, rect.x_max, false);
    poly = clip_half_plane(poly, 1, rect.y_min, true);
    poly = clip_half_plane(poly, 1, rect.y_max, false);
    return poly;
}

double clip_polygon_to_cell(const Polygon& polygon, const Cell& cell) {
    const auto clipped = clip_ring_to_rect(polygon.vertices, cell);
    if (clipped.size() < 3) return 0.0;
    return std::max(0.0, signed_area(clipped));
}

std::vector<double> segment_circle_intersections(Point p1, Point p2, const Circle& circle, double tol) {
    const Point d = p2 - p1;
    const Point f = p1 - circle.center;
    const double a = dot(d, d);
    if (a == 0.0) return {};
    const double len = std::sqrt(a);
    if (tol <= 0.0) tol = kRelativeTolerance * (circle.radius + len);
    const double t0 = -dot(f, d) / a;
    const Point closest = f + t0 * d;
    const double h = norm(closest);
    const double r = circle.radius;
    const double t_tol = tol / len;
    std::vector<double> ts;
    auto keep = [&](double t) {
        if (t >= -t_tol && t <= 1.0 + t_tol) ts.push_back(std::clamp(t, 0.0, 1.0));
    };
    if (std::abs(h - r) <= tol) {
        keep(t0);
    } else if (h < r) {
        const double half = std::sqrt((r - h) * (r + h)) / len;
        keep(t0 - half);
        keep(t0 + half);
    }
    return ts;
}

double normalize_angle(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    if (t >= kTwoPi) t = 0.0;
    return t;
}

CircleCrossing circle_circle_intersection_angles(const Circle& c1, const Circle& c2, double tol) {
    CircleCrossing out;
    const Point v = c2.center - c1.center;
    const double d = norm(v);
    const double r1 = c1.radius;
    const double r2 = c2.radius;
    if (tol <= 0.0) tol = kRelativeTolerance * (r1 + r2 + d);
    if (d <= tol && std::abs(r1 - r2) <= tol) {
        out.degenerate = true;
        return out;
    }
    if (d >= r1 + r2 - tol || d <= std::abs(r1 - r2) + tol) return out;
    const double cos_alpha = std::clamp((r1 * r1 + d * d - r2 * r2) / (2.0 * r1 * d), -1.0, 1.0);
    const double alpha = std::acos(cos_alpha);
    const double phi = std::atan2(v.y, v.x);
    double lo = normalize_angle(phi - alpha);
    double hi = normalize_angle(phi + alpha);
    if (lo > hi) std::swap(lo, hi);
    out.angles = {lo, hi};
    out.count = 2;
    return out;
}

namespace {

// Rounding can push the sum a few ulps outside [0, min(Area(P), πr²)].
double clamp_area(double total, std::span<const Point> ring, double r) {
    const double upper = std::min(std::max(0.0, signed_area(ring)), kPi * r * r);
    return std::clamp(total, 0.0, upper);
}

}  // namespace

double polygon_circle_area(std::span<const Point> ring, const Circle& circle) {
    const std::size_t m = ring.size();
    if (m < 3) return 0.0;
    if (signed_area(ring) < 0.0) {
        const std::vector<Point> ccw(ring.rbegin(), ring.rend());
        return polygon_circle_area(ccw, circle);
    }
    const double r = circle.radius;
    const double r2 = r * r;
    // Work relative to the center: arcs then reduce to ½ r² Δθ.
    std::vector<Point> local(m);
    double extent = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        local[i] = ring[i] - circle.center;
        extent = std::max({extent, std::abs(local[i].x), std::abs(local[i].y)});
    }
    const Circle origin_circle{{0.0, 0.0}, r};
    const double tol = kRelativeTolerance * std::max(extent, r);

    double total = 0.0;
    std::vector<double> angles;
    std::vector<double> cuts;
    for (std::size_t i = 0; i < m; ++i) {
        const Point a = local[i];
        const Point b = local[(i + 1) % m];
        if (a == b) continue;
        const auto ts = segment_circle_intersections(a, b, origin_circle, tol);
        cuts.assign({0.0});
        cuts.insert(cuts.end(), ts.begin(), ts.end());
        cuts.push_back(1.0);
        const Point d = b - a;
        for (double t : ts) {
            const Point q = a + t * d;
            angles.push_back(normalize_angle(std::atan2(q.y, q.x)));
        }
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
            const double t0 = cuts[k];
            const double t1 = cuts[k + 1];
            if (t1 <= t0) continue;
            const Point mid = a + (0.5 * (t0 + t1)) * d;
            if (dot(mid, mid) <= r2) total += exact::green_segment(a + t0 * d, a + t1 * d);
        }
    }

    const std::span<const Point> local_ring(local);
    if (angles.empty()) {
        if (point_in_polygon(Point{r, 0.0}, local_ring)) total += kPi * r2;
        return clamp_area(total, ring, r);
    }
    std::sort(angles.begin(), angles.end());
    const double angle_tol = tol / r;
    const std::size_t n = angles.size();
    for (std::size_t k = 0; k < n; ++k) {
        const double start = angles[k];
        const double end = (k + 1 < n) ? angles[k + 1] : angles[0] + kTwoPi;
        if (end - start <= angle_tol) continue;
        const double mid = 0.5 * (start + end);
        if (point_in_polygon(Point{r * std::cos(mid), r * std::sin(mid)}, local_ring)) {
            total += 0.5 * r2 * (end - start);
        }
    }
    return clamp_area(total, ring, r);
}

}  // namespace cover
