#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "wellsep/core.hpp"

namespace wellsep {

using Rng = std::mt19937_64;

/// Parameters of a synthetic grid dataset. Clusters sit on a rows x cols
/// lattice, each holding `cluster_size` regular points inside a disk of
/// `radius`; `noise_pct` percent extra points are scattered around the
/// cluster surfaces; `displacement_max` (in radii) jitters each center.
struct GenConfig {
    std::size_t grid_rows = 5;
    std::size_t grid_cols = 5;
    std::size_t cluster_size = 40;
    double radius = 1.0;
    double noise_pct = 0.0;
    double displacement_max = 0.0;
    std::uint64_t rng_seed = 0;

    std::size_t k() const { return grid_rows * grid_cols; }
    void validate() const;

    bool operator==(const GenConfig&) const = default;
};

inline constexpr int kNoiseLabel = -1;

struct LabeledDataset {
    Dataset dataset;
    std::vector<int> labels;  // intended cluster in [0, k) or kNoiseLabel
    std::size_t k = 0;
    std::vector<Point> intended_centers;  // empty when unknown
    std::optional<GenConfig> config;

    bool is_noise(std::size_t i) const { return labels[i] == kNoiseLabel; }
    std::size_t noise_count() const;
    /// Regular point indices of each intended cluster, ascending.
    std::vector<std::vector<std::size_t>> intended_members() const;
    /// Checks label range and sizes; throws UsageError.
    void validate() const;
};

/// Lattice spacing that keeps neighbouring balls at least the separation
/// threshold apart even after both centers move by the maximal displacement.
double grid_spacing(const GenConfig& config);

std::vector<Point> grid_centers(const GenConfig& config, Rng& rng);
std::vector<Point> grid_centers(const GenConfig& config);

/// center + distance * (cos angle, sin angle).
Point polar_offset(const Point& center, double angle, double distance);

Point sample_cluster_point(const Point& center, double radius, Rng& rng);

/// Distance from the center is max(0, radius + gaussian) with gaussian ~ N(0, radius).
double noise_distance(double radius, double gaussian);
Point sample_noise_point(const Point& center, double radius, Rng& rng);

/// round-half-up(noise_pct / 100 * regular_count)
std::size_t noise_point_count(double noise_pct, std::size_t regular_count);

/// Regular points cluster by cluster, then noise points. Pure function of config.
LabeledDataset generate(const GenConfig& config);

}  // namespace wellsep
