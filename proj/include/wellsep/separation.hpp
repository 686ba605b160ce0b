#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "wellsep/core.hpp"
#include "wellsep/datagen.hpp"

namespace wellsep {

/// Relative slack applied when comparing a measured gap against the
/// threshold; absorbs rounding in gaps constructed exactly at the threshold.
inline constexpr double kGapRelTolerance = 1e-9;

/// Minimum ball-surface gap that makes k clusters of radius R the unique
/// k-means optimum: R(√(k−1) + 3), capped at R(√8 + 3) in two dimensions
/// where a grid cluster has at most eight neighbours.
double min_gap_threshold(std::size_t k, double radius, std::size_t dim);

bool gap_satisfies(double gap, double threshold);

/// Separation measured against the generator's intended centers and radius.
struct NominalSeparation {
    double radius = 0.0;
    double min_ball_gap = 0.0;
    double threshold = 0.0;
    bool points_enclosed = false;  // every regular point within radius of its center
    bool satisfied = false;
};

struct SeparationReport {
    // Empirical view: balls around gravity centers of the regular points.
    std::vector<double> per_cluster_radius;
    double min_ball_gap = 0.0;
    double threshold = 0.0;
    bool satisfied = false;
    std::optional<NominalSeparation> nominal;  // present when centers and config are known
};

SeparationReport verify(const LabeledDataset& ld);

struct BruteForceResult {
    Clustering clustering;
    double cost = 0.0;
    double runner_up_cost = 0.0;  // best cost among all other partitions (inf if none)
    std::uint64_t partitions = 0;
};

inline constexpr double kBruteForceLimit = 1e7;

/// Stirling number of the second kind S(n, k) as a double (exact while < 2^53).
double stirling2(std::size_t n, std::size_t k);

/// Exhaustive minimum of the k-means cost over all partitions into exactly k
/// non-empty clusters. Partitions are visited as restricted-growth strings in
/// lexicographic order; cost ties keep the first one found. Throws UsageError
/// when Σ_{j≤k} S(n, j) exceeds kBruteForceLimit.
BruteForceResult brute_force_optimum(const Dataset& d, std::size_t k);

}  // namespace wellsep
