#pragma once

// Adaptive quadtree with boundary focusing.
//
// The scene is first normalized so the polygon diameter is 1. The quadtree root is the
// square of side 1 anchored at the polygon's bbox min corner (Ω ⊆ P, so nothing outside
// it contributes). Cells are split until they are exterior, interior, or no larger than
// δ = sqrt(epsilon_partition). Boundary leaves are then resolved by:
//   - full coverage when some circle contains the whole cell,
//   - exact boundary integration when exactly one circle boundary crosses the cell,
//   - Monte Carlo subsampling with N_sub = max(N_min, ceil(C·m·κ·Area/ε²)) otherwise.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cover/geometry.hpp"

namespace cover::aqbf {

struct AqbfParams {
    double epsilon_partition = 1e-6;
    double epsilon_sampling = 1e-4;
    double c = 4.0;
    std::uint64_t n_min = 450;
    std::uint64_t n_max = 1'000'000;
    std::uint64_t seed = 42;
    /// Literal multi-coverage weighting |I|·A_E for fully covered boundary cells.
    bool multiplicity_weighted = false;
    /// Worker threads for leaf evaluation; 0 = hardware concurrency. Results do not depend on it.
    unsigned threads = 0;

    /// Throws std::invalid_argument on out-of-range values.
    void validate() const;
};

/// Scene rescaled so the polygon diameter is 1 and its bbox min corner is the origin.
/// original = origin + scale · normalized; areas map back by scale².
struct NormalizedScene {
    Scene scene;
    double scale = 1.0;
    Point origin;
};

/// Throws InvalidScene for a zero-diameter polygon.
NormalizedScene normalize_scene(const Scene& scene);

/// INT, EXT or BDY with respect to Ω = P ∩ (∪ C_k).
RegionClass classify_cell(const Cell& cell, const Scene& scene);

struct QuadNode {
    Cell cell;
    RegionClass classification = RegionClass::Boundary;
    int depth = 0;
    /// Index of the first of four consecutive children, or -1 for a leaf.
    std::int64_t first_child = -1;
    /// Hash of the quadrant path from the root; keys the cell's random substream.
    std::uint64_t path_code = 0;

    bool is_leaf() const { return first_child < 0; }
};

struct QuadTree {
    std::vector<QuadNode> nodes;  // nodes[0] is the root
    double delta = 0.0;

    /// Leaf indices in depth-first, quadrant order.
    std::vector<std::size_t> leaves() const;
    int max_depth() const;
    std::size_t count_leaves(RegionClass c) const;
};

/// Depth bound ceil(log2(1/sqrt(epsilon_partition))).
int depth_bound(double epsilon_partition);

QuadTree partition(const NormalizedScene& scene, const AqbfParams& params);

/// Per-cell circle bookkeeping for boundary leaves.
struct CellCoverageInfo {
    std::vector<std::size_t> inside;    // I: circles containing the cell
    std::vector<std::size_t> boundary;  // B: circles whose boundary crosses the cell
    std::size_t multiplicity = 0;       // m = |B|
    double kappa_sum = 0.0;             // Σ_{k∈B} 1/R_k
    double area_in_polygon = 0.0;       // A_E = Area(E ∩ P)
    RegionClass polygon_class = RegionClass::Boundary;
};

CellCoverageInfo coverage_info(const Cell& cell, const Scene& scene);

std::uint64_t subsample_count(const CellCoverageInfo& info, const Cell& cell, const AqbfParams& params);

enum class Route { Interior, Exterior, Covered, Empty, Analytic, Sampled };

struct CellContribution {
    double area = 0.0;
    std::uint64_t samples = 0;
    Route route = Route::Exterior;
};

/// Contribution of one leaf, in normalized units. `stream_seed` feeds the Monte Carlo branch.
CellContribution cell_contribution(const Cell& cell, RegionClass classification, const Scene& scene,
                                   const AqbfParams& params, std::uint64_t stream_seed);

struct AreaResult {
    double area = 0.0;
    std::size_t n_leaf = 0;
    std::size_t n_interior = 0;
    std::size_t n_boundary = 0;
    std::size_t n_exterior = 0;
    std::size_t n_analytic = 0;
    std::size_t n_sampled = 0;
    std::size_t n_classified = 0;
    std::uint64_t total_subsamples = 0;
    int max_depth_reached = 0;
    double wall_time_seconds = 0.0;

    /// Operation count used as the complexity proxy: cells classified + subsamples drawn.
    double work() const { return static_cast<double>(n_classified) + static_cast<double>(total_subsamples); }
};

AreaResult compute_area(const Scene& scene, const AqbfParams& params);

}  // namespace cover::aqbf
