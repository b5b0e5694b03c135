#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace cover {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Relative geometric tolerance; absolute tolerances are this times a scene length scale.
inline constexpr double kRelativeTolerance = 1e-12;

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
    friend constexpr bool operator==(Point a, Point b) = default;
};

constexpr double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }

struct Circle {
    Point center;
    double radius = 0.0;

    /// Closed-disk membership; boundary points count as inside.
    bool contains(Point p) const {
        const Point d = p - center;
        return dot(d, d) <= radius * radius;
    }
    double area() const { return kPi * radius * radius; }
    friend bool operator==(const Circle&, const Circle&) = default;
};

/// Simple polygon given as an open ring (no repeated closing vertex).
struct Polygon {
    std::vector<Point> vertices;

    std::size_t size() const { return vertices.size(); }
    const Point& operator[](std::size_t i) const { return vertices[i]; }
    const Point& next(std::size_t i) const { return vertices[(i + 1) % vertices.size()]; }
};

/// Axis-aligned rectangle. Quadtree cells are squares.
struct Rect {
    double x_min = 0.0;
    double x_max = 0.0;
    double y_min = 0.0;
    double y_max = 0.0;

    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }
    double area() const { return width() * height(); }
    Point center() const { return {0.5 * (x_min + x_max), 0.5 * (y_min + y_max)}; }
    bool contains(Point p) const { return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max; }
    std::array<Point, 4> corners() const {
        return {Point{x_min, y_min}, Point{x_max, y_min}, Point{x_max, y_max}, Point{x_min, y_max}};
    }
    /// Counterclockwise boundary ring.
    Polygon as_polygon() const {
        const auto c = corners();
        return Polygon{{c.begin(), c.end()}};
    }
};

using Cell = Rect;

enum class RegionClass { Inside, Outside, Boundary };

const char* to_string(RegionClass c);

/// Problem instance: polygon, circles and a box covering both.
struct Scene {
    Polygon polygon;
    std::vector<Circle> circles;
    Rect bbox;
};

/// Validates inputs, reorients a clockwise polygon and fills the bounding box.
/// Throws InvalidPolygon / InvalidRadius.
Scene make_scene(Polygon polygon, std::vector<Circle> circles);

/// Structural checks: >= 3 vertices, finite coordinates, no repeated consecutive vertices,
/// non-zero area, no self-intersection. Orientation is not checked.
void validate_polygon(const Polygon& polygon);
void validate_circle(const Circle& circle);

Rect bounding_box(std::span<const Point> points);
Rect bounding_box(const Polygon& polygon);
Rect bounding_box(const Polygon& polygon, std::span<const Circle> circles);

/// Smallest square anchored at the rectangle's min corner that contains it.
Rect square_hull(const Rect& rect);

/// Absolute tolerance for a scene: kRelativeTolerance times its bbox diagonal.
double scene_tolerance(const Scene& scene);

double signed_area(std::span<const Point> ring);
inline double signed_area(const Polygon& polygon) { return signed_area(polygon.vertices); }

double polygon_diameter(const Polygon& polygon);
double perimeter(const Polygon& polygon);

/// Crossing-number test; points within `tol` of an edge count as inside.
bool point_in_polygon(Point p, std::span<const Point> ring, double tol = 0.0);
inline bool point_in_polygon(Point p, const Polygon& polygon, double tol = 0.0) {
    return point_in_polygon(p, polygon.vertices, tol);
}

/// Membership in P ∩ (∪ C_k).
bool in_region(Point p, const Scene& scene);

bool segments_intersect(Point a, Point b, Point c, Point d);
bool segment_intersects_rect(Point a, Point b, const Rect& rect);
bool is_simple(const Polygon& polygon);

RegionClass classify_cell_vs_circle(const Cell& cell, const Circle& circle);
RegionClass classify_cell_vs_polygon(const Cell& cell, const Polygon& polygon);

/// Sutherland–Hodgman clip of a ring against a rectangle. The result may contain
/// zero-area bridge edges when the input is non-convex.
std::vector<Point> clip_ring_to_rect(std::span<const Point> ring, const Rect& rect);

/// Area(cell ∩ polygon).
double clip_polygon_to_cell(const Polygon& polygon, const Cell& cell);

/// Parameters t in [0,1] where p1 + t (p2 - p1) meets the circle, ascending.
/// A tangency within `tol` yields a single parameter. `tol` <= 0 picks a scale-relative default.
std::vector<double> segment_circle_intersections(Point p1, Point p2, const Circle& circle, double tol = 0.0);

struct CircleCrossing {
    std::array<double, 2> angles{};  // on the first circle, in [0, 2π), ascending
    int count = 0;                   // 0 or 2
    bool degenerate = false;         // identical circles
};

CircleCrossing circle_circle_intersection_angles(const Circle& c1, const Circle& c2, double tol = 0.0);

/// Maps an angle into [0, 2π).
double normalize_angle(double theta);

/// Exact Area(ring ∩ circle) by boundary integration. The ring must be counterclockwise but
/// may be degenerate (e.g. a Sutherland–Hodgman output).
double polygon_circle_area(std::span<const Point> ring, const Circle& circle);
inline double polygon_circle_area(const Polygon& polygon, const Circle& circle) {
    return polygon_circle_area(polygon.vertices, circle);
}

}  // namespace cover
