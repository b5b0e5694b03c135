#pragma once

// Exact area of P ∩ (∪ C_k) by line integration of ½(x dy − y dx) over the
// boundary, decomposed into polygon-edge pieces and circular arcs.

#include <cmath>
#include <cstddef>
#include <vector>

#include "cover/geometry.hpp"

namespace cover::exact {

/// ½ ∫ (x dy − y dx) along the straight segment a → b.
inline double green_segment(Point a, Point b) { return 0.5 * (a.x * b.y - b.x * a.y); }

/// ½ ∫ (x dy − y dx) along the counterclockwise arc θ1 → θ2 of the circle (center, r).
inline double green_arc(Point center, double r, double theta1, double theta2) {
    return 0.5 * (r * r * (theta2 - theta1) + center.x * r * (std::sin(theta2) - std::sin(theta1)) -
                  center.y * r * (std::cos(theta2) - std::cos(theta1)));
}

/// Angle interval on one circle's boundary; never wraps past 2π.
struct ArcInterval {
    std::size_t circle_index = 0;
    double theta_start = 0.0;
    double theta_end = 0.0;
};

/// Sub-segment [t_start, t_end] of polygon edge `edge_index` (vertex i → i+1).
struct EdgePiece {
    std::size_t edge_index = 0;
    double t_start = 0.0;
    double t_end = 0.0;
};

/// Arcs of ∂C_k lying inside P and outside every other open disk, sorted and disjoint.
/// A circle that duplicates a lower-indexed one owns nothing.
std::vector<ArcInterval> circle_boundary_arcs(std::size_t k, const Scene& scene);

/// Maximal portions of polygon edges inside at least one closed disk.
std::vector<EdgePiece> polygon_edge_pieces_in_union(const Scene& scene);

struct BoundaryIntegral {
    double area = 0.0;
    std::size_t n_arcs = 0;
    std::size_t n_pieces = 0;
    /// Set when some tangency or vertex-on-circle event was snapped within tolerance.
    bool tangency_warning = false;
};

BoundaryIntegral integrate_boundary(const Scene& scene);

inline double exact_area(const Scene& scene) { return integrate_boundary(scene).area; }

}  // namespace cover::exact
