#pragma once

// Reference methods the quadtree is compared against.

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "cover/geometry.hpp"

namespace cover::baselines {

/// Upper 2.5% quantile of the standard normal.
inline constexpr double kZ975 = 1.959964;

struct McEstimate {
    double area = 0.0;
    double half_width = 0.0;  // z·A_bbox / (2√N)
    std::uint64_t n_samples = 0;
    std::uint64_t n_inside = 0;
};

/// Plain hit-or-miss estimate over the scene bbox. Samples are drawn in fixed blocks, each
/// from its own substream, so the result does not depend on `threads`.
McEstimate monte_carlo(const Scene& scene, std::uint64_t n_samples, std::uint64_t seed, unsigned threads = 0);

/// Midpoint rule on a resolution × resolution grid over the square hull of the scene bbox.
double uniform_grid(const Scene& scene, std::size_t resolution, unsigned threads = 0);

/// Like uniform_grid, but cells classified INT/EXT take their exact value and mixed cells
/// use a 5×5 midpoint stencil.
double grid_integration(const Scene& scene, std::size_t resolution, unsigned threads = 0);

/// Recursive INT/EXT/BDY subdivision; boundary cells at max_depth count half their area.
/// The root is the square hull of the polygon bbox, anchored at its min corner.
double adaptive_subdivision(const Scene& scene, int max_depth);

using Triangle = std::array<Point, 3>;

/// Ear clipping of a simple counterclockwise polygon. Throws InvalidPolygon when no ear exists.
std::vector<Triangle> ear_clip(const Polygon& polygon);

/// Per triangle: min(Area(T), Σ_k Area(T ∩ C_k)). Overlapping circles are counted twice
/// up to the triangle's area.
double triangulation(const Scene& scene);

}  // namespace cover::baselines
