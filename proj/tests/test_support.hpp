#pragma once

// Reference implementations that share no code with the library. They are slow and
// simple on purpose.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "cover/geometry.hpp"

namespace oracle {

using cover::Circle;
using cover::Point;
using cover::Polygon;
using cover::Scene;

// Winding number; points on an edge count as inside.
inline bool inside_polygon(Point p, const std::vector<Point>& ring) {
    int winding = 0;
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point a = ring[i];
        const Point b = ring[(i + 1) % n];
        const double c = (b.x - a.x) * (p.y - a.y) - (p.x - a.x) * (b.y - a.y);
        const bool on_segment = c == 0.0 && std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
                                std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
        if (on_segment) return true;
        if (a.y <= p.y) {
            if (b.y > p.y && c > 0.0) ++winding;
        } else if (b.y <= p.y && c < 0.0) {
            --winding;
        }
    }
    return winding != 0;
}

inline bool in_disk(Point p, const Circle& c) {
    const double dx = p.x - c.center.x;
    const double dy = p.y - c.center.y;
    return dx * dx + dy * dy <= c.radius * c.radius;
}

inline bool in_omega(Point p, const std::vector<Point>& ring, const std::vector<Circle>& circles) {
    bool covered = false;
    for (const Circle& c : circles) covered = covered || in_disk(p, c);
    return covered && inside_polygon(p, ring);
}

struct Box {
    double x0, x1, y0, y1;
};

inline Box ring_box(const std::vector<Point>& ring) {
    Box b{ring[0].x, ring[0].x, ring[0].y, ring[0].y};
    for (const Point& p : ring) {
        b.x0 = std::min(b.x0, p.x);
        b.x1 = std::max(b.x1, p.x);
        b.y0 = std::min(b.y0, p.y);
        b.y1 = std::max(b.y1, p.y);
    }
    return b;
}

// Midpoint rule on an n × n grid over the polygon bbox.
inline double grid_area(const std::vector<Point>& ring, const std::vector<Circle>& circles, int n) {
    const Box b = ring_box(ring);
    const double hx = (b.x1 - b.x0) / n;
    const double hy = (b.y1 - b.y0) / n;
    std::int64_t hits = 0;
    for (int j = 0; j < n; ++j) {
        const double y = b.y0 + (j + 0.5) * hy;
        for (int i = 0; i < n; ++i) hits += in_omega({b.x0 + (i + 0.5) * hx, y}, ring, circles);
    }
    return static_cast<double>(hits) * hx * hy;
}

inline double shoelace(const std::vector<Point>& ring) {
    double s = 0.0;
    for (std::size_t i = 0; i < ring.size(); ++i) {
        const Point a = ring[i];
        const Point b = ring[(i + 1) % ring.size()];
        s += a.x * b.y - b.x * a.y;
    }
    return 0.5 * s;
}

inline double perimeter(const std::vector<Point>& ring) {
    double s = 0.0;
    for (std::size_t i = 0; i < ring.size(); ++i) {
        const Point d = ring[(i + 1) % ring.size()] - ring[i];
        s += std::hypot(d.x, d.y);
    }
    return s;
}

// Area of the union of two equal disks of radius r whose centers are d apart (d < 2r).
inline double two_disk_union(double r, double d) {
    const double lens = 2.0 * r * r * std::acos(d / (2.0 * r)) - 0.5 * d * std::sqrt(4.0 * r * r - d * d);
    return 2.0 * std::numbers::pi * r * r - lens;
}

// Orientation-based proper-or-touching segment intersection.
inline bool segments_cross(Point a, Point b, Point c, Point d) {
    auto orient = [](Point p, Point q, Point r) {
        const double v = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
        return (v > 0) - (v < 0);
    };
    auto on = [](Point p, Point q, Point r) {
        return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) && std::min(p.y, q.y) <= r.y &&
               r.y <= std::max(p.y, q.y);
    };
    const int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
    if (o1 != o2 && o3 != o4) return true;
    return (o1 == 0 && on(a, b, c)) || (o2 == 0 && on(a, b, d)) || (o3 == 0 && on(c, d, a)) ||
           (o4 == 0 && on(c, d, b));
}

// O(m²) check over non-adjacent edge pairs.
inline bool simple_ring(const std::vector<Point>& ring) {
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (j == i + 1 || (i == 0 && j == n - 1)) continue;
            if (segments_cross(ring[i], ring[(i + 1) % n], ring[j], ring[(j + 1) % n])) return false;
        }
    }
    return true;
}

// Simpson's rule.
template <typename F>
double integrate(F f, double a, double b, int n = 20000) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

// Least-squares slope of y on x.
inline double slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Two-sided Wilcoxon p by counting sign patterns with a dynamic program over doubled ranks.
inline double wilcoxon_exact_p(const std::vector<double>& ranks, double w) {
    std::vector<int> r2;
    int total = 0;
    for (double r : ranks) {
        r2.push_back(static_cast<int>(std::lround(2.0 * r)));
        total += r2.back();
    }
    std::vector<double> ways(static_cast<std::size_t>(total) + 1, 0.0);
    ways[0] = 1.0;
    for (int r : r2) {
        for (int s = total; s >= r; --s) ways[s] += ways[s - r];
    }
    const int w2 = static_cast<int>(std::lround(2.0 * w));
    double count = 0.0;
    for (int s = 0; s <= total; ++s) {
        if (std::min(s, total - s) <= w2) count += ways[s];
    }
    return count / std::ldexp(1.0, static_cast<int>(ranks.size()));
}

}  // namespace oracle

namespace fixtures {

using cover::Circle;
using cover::Point;
using cover::Polygon;

inline Polygon unit_square() { return Polygon{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}}; }
inline Polygon square(double x0, double y0, double side) {
    return Polygon{{{x0, y0}, {x0 + side, y0}, {x0 + side, y0 + side}, {x0, y0 + side}}};
}
inline Polygon l_shape() { return Polygon{{{0, 0}, {2, 0}, {2, 2}, {1, 2}, {1, 1}, {0, 1}}}; }

inline cover::Scene quarter_disk() { return cover::make_scene(square(0, 0, 10), {{{0, 0}, 1.0}}); }
// Two unit disks whose centers are `d` apart inside the square [-10, 10]².
inline cover::Scene lens_union(double d = 0.5) {
    return cover::make_scene(square(-10, -10, 20), {{{0, 0}, 1.0}, {{d, 0}, 1.0}});
}

}  // namespace fixtures
