#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wellsep/core.hpp"
#include "wellsep/datagen.hpp"

namespace wellsep {

struct RunMetrics {
    double tot_within_ss = 0.0;
    double wrong_clusters_pct = 0.0;
    double rel_tot_within_ss = 1.0;
};

struct SummaryRow {
    double mean = 0.0;
    double sd = 0.0;
};

/// k-means cost over every point, noise included.
double tot_within_ss(const Dataset& d, const Clustering& clustering);

/// Per intended cluster: true when some found cluster holds exactly its
/// regular points (noise in the found cluster is ignored).
std::vector<bool> discovered_intended_clusters(const LabeledDataset& ld, const Clustering& clustering);

/// Per found cluster: true when its regular-point set equals no intended cluster.
std::vector<bool> erroneous_found_clusters(const LabeledDataset& ld, const Clustering& clustering);

/// 100 · (undiscovered intended clusters) / k.
double wrong_clusters_pct(const LabeledDataset& ld, const Clustering& clustering);

/// Each cost divided by the smallest. A zero minimum maps zero costs to 1
/// and positive costs to +inf.
std::vector<double> rel_tot_within_ss(std::span<const double> costs);

/// Mean and sample (n−1) standard deviation; variance clamped at 0, sd = 0 for one value.
SummaryRow summarize(std::span<const double> values);

}  // namespace wellsep
