#include "wellsep/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wellsep/error.hpp"

namespace wellsep {

namespace {

void check_cover(const LabeledDataset& ld, const Clustering& clustering) {
    ld.validate();
    if (clustering.assignment.size() != ld.dataset.size()) {
        throw UsageError("clustering does not cover the dataset");
    }
    for (const auto a : clustering.assignment) {
        if (a >= clustering.k) throw UsageError("found cluster index out of range");
    }
}

// Regular-point count of every found cluster.
std::vector<std::size_t> regular_sizes(const LabeledDataset& ld, const Clustering& clustering) {
    std::vector<std::size_t> sizes(clustering.k, 0);
    for (std::size_t i = 0; i < ld.labels.size(); ++i) {
        if (!ld.is_noise(i)) ++sizes[clustering.assignment[i]];
    }
    return sizes;
}

// For each intended cluster, the found cluster reproducing it exactly, or k if none.
std::vector<std::size_t> exact_matches(const LabeledDataset& ld, const Clustering& clustering) {
    check_cover(ld, clustering);
    const auto found_sizes = regular_sizes(ld, clustering);
    const auto members = ld.intended_members();
    std::vector<std::size_t> match(ld.k, clustering.k);
    for (std::size_t j = 0; j < ld.k; ++j) {
        if (members[j].empty()) continue;
        const std::size_t f = clustering.assignment[members[j].front()];
        const bool same_label = std::all_of(members[j].begin(), members[j].end(), [&](std::size_t i) {
            return clustering.assignment[i] == f;
        });
        if (same_label && found_sizes[f] == members[j].size()) match[j] = f;
    }
    return match;
}

}  // namespace

double tot_within_ss(const Dataset& d, const Clustering& clustering) {
    return cost_centroid_form(d, clustering);
}

std::vector<bool> discovered_intended_clusters(const LabeledDataset& ld, const Clustering& clustering) {
    const auto match = exact_matches(ld, clustering);
    std::vector<bool> out(ld.k);
    for (std::size_t j = 0; j < ld.k; ++j) out[j] = match[j] != clustering.k;
    return out;
}

std::vector<bool> erroneous_found_clusters(const LabeledDataset& ld, const Clustering& clustering) {
    const auto match = exact_matches(ld, clustering);
    std::vector<bool> erroneous(clustering.k, true);
    for (const auto f : match) {
        if (f != clustering.k) erroneous[f] = false;
    }
    return erroneous;
}

double wrong_clusters_pct(const LabeledDataset& ld, const Clustering& clustering) {
    const auto discovered = discovered_intended_clusters(ld, clustering);
    const auto hits = std::count(discovered.begin(), discovered.end(), true);
    return 100.0 * double(ld.k - static_cast<std::size_t>(hits)) / double(ld.k);
}

std::vector<double> rel_tot_within_ss(std::span<const double> costs) {
    if (costs.empty()) throw UsageError("relative cost needs at least one algorithm");
    const double lowest = *std::min_element(costs.begin(), costs.end());
    if (lowest < 0.0) throw UsageError("costs must be non-negative");
    std::vector<double> rel;
    rel.reserve(costs.size());
    for (const double c : costs) {
        if (lowest > 0.0) {
            rel.push_back(c / lowest);
        } else {
            rel.push_back(c == 0.0 ? 1.0 : std::numeric_limits<double>::infinity());
        }
    }
    return rel;
}

SummaryRow summarize(std::span<const double> values) {
    if (values.empty()) throw UsageError("cannot summarize an empty sample");
    const double n = double(values.size());
    double sum = 0.0;
    for (const double v : values) sum += v;
    SummaryRow row;
    row.mean = sum / n;
    if (values.size() < 2) return row;
    double ss = 0.0;
    for (const double v : values) ss += (v - row.mean) * (v - row.mean);
    row.sd = std::sqrt(std::max(0.0, ss / (n - 1.0)));
    return row;
}

}  // namespace wellsep
