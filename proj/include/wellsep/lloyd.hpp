#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wellsep/core.hpp"
#include "wellsep/seeding.hpp"

namespace wellsep::lloyd {

enum class EmptyClusterPolicy {
    // Move the point farthest from its own centroid into the empty cluster.
    ReseedFarthest,
};

struct LloydConfig {
    std::size_t max_iters = 100;
    EmptyClusterPolicy empty_cluster_policy = EmptyClusterPolicy::ReseedFarthest;
};

/// Absolute slack tolerated before a cost increase counts as a violation.
inline constexpr double kMonotonicitySlack = 1e-9;

struct LloydResult {
    Clustering clustering;
    double cost = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    // Cost with the seeds, then after every centroid update.
    std::vector<double> cost_trace;
    std::size_t monotonicity_violations = 0;
    std::size_t empty_cluster_repairs = 0;
};

/// Index of the nearest centroid for every point; ties go to the lowest index.
std::vector<std::size_t> assign(const Dataset& d, std::span<const Point> centroids);

/// Per-cluster means. Every cluster in [0, k) must be non-empty.
std::vector<Point> update(const Dataset& d, std::span<const std::size_t> assignment, std::size_t k);

/// Fills empty clusters by moving, one at a time, the point with the largest
/// squared distance to its centroid (taken only from clusters with ≥ 2
/// members) and placing that cluster's centroid on it. Returns the number of
/// repairs.
std::size_t repair_empty_clusters(const Dataset& d, std::span<std::size_t> assignment,
                                  std::span<Point> centroids);

/// Alternates assign and update from the given seeds until the assignment no
/// longer changes or max_iters updates have run.
LloydResult run(const Dataset& d, std::span<const Point> seeds, const LloydConfig& cfg = {});
LloydResult run(const Dataset& d, const SeedSet& seeds, const LloydConfig& cfg = {});

}  // namespace wellsep::lloyd
