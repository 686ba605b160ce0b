#include "wellsep/lloyd.hpp"

#include <limits>
#include <string>

#include "wellsep/error.hpp"

namespace wellsep::lloyd {

std::vector<std::size_t> assign(const Dataset& d, std::span<const Point> centroids) {
    if (centroids.empty()) throw UsageError("assignment needs at least one centroid");
    for (const auto& c : centroids) {
        if (c.dim() != d.dim()) throw UsageError("centroid dimensionality mismatch");
    }
    std::vector<std::size_t> out(d.size(), 0);
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double* x = d[i].data();
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < centroids.size(); ++j) {
            const double d2 = detail::squared_distance(x, centroids[j].coords.data(), d.dim());
            if (d2 < best) {
                best = d2;
                out[i] = j;
            }
        }
    }
    return out;
}

std::vector<Point> update(const Dataset& d, std::span<const std::size_t> assignment, std::size_t k) {
    return Clustering::from_assignment(d, {assignment.begin(), assignment.end()}, k).centroids;
}

std::size_t repair_empty_clusters(const Dataset& d, std::span<std::size_t> assignment,
                                  std::span<Point> centroids) {
    const std::size_t k = centroids.size();
    std::vector<std::size_t> sizes(k, 0);
    for (const auto a : assignment) ++sizes[a];

    std::vector<double> dist(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        dist[i] = detail::squared_distance(d[i].data(), centroids[assignment[i]].coords.data(), d.dim());
    }

    std::size_t repairs = 0;
    for (std::size_t j = 0; j < k; ++j) {
        if (sizes[j] != 0) continue;
        std::size_t donor_point = d.size();
        double farthest = -1.0;
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (sizes[assignment[i]] >= 2 && dist[i] > farthest) {
                farthest = dist[i];
                donor_point = i;
            }
        }
        if (donor_point == d.size()) throw UsageError("more clusters than points");
        --sizes[assignment[donor_point]];
        assignment[donor_point] = j;
        sizes[j] = 1;
        centroids[j] = d.point(donor_point);
        dist[donor_point] = 0.0;
        ++repairs;
    }
    return repairs;
}

LloydResult run(const Dataset& d, std::span<const Point> seeds, const LloydConfig& cfg) {
    const std::size_t k = seeds.size();
    if (k == 0) throw UsageError("Lloyd iteration needs at least one seed");
    if (k > d.size()) {
        throw UsageError("k=" + std::to_string(k) + " exceeds the " + std::to_string(d.size()) +
                         " available points");
    }
    if (cfg.max_iters == 0) throw UsageError("max_iters must be >= 1");

    LloydResult result;
    std::vector<Point> centroids(seeds.begin(), seeds.end());
    auto assignment = assign(d, centroids);
    result.cost_trace.push_back(cost_with_centroids(d, assignment, centroids));

    for (std::size_t iter = 1; iter <= cfg.max_iters; ++iter) {
        result.iterations = iter;
        result.empty_cluster_repairs += repair_empty_clusters(d, assignment, centroids);
        centroids = update(d, assignment, k);
        const double cost = cost_with_centroids(d, assignment, centroids);
        if (cost > result.cost_trace.back() + kMonotonicitySlack) ++result.monotonicity_violations;
        result.cost_trace.push_back(cost);

        auto next = assign(d, centroids);
        if (next == assignment) {
            result.converged = true;
            break;
        }
        // Out of budget: keep the assignment the current centroids were computed from.
        if (iter == cfg.max_iters) break;
        assignment = std::move(next);
    }

    result.clustering.assignment = std::move(assignment);
    result.clustering.k = k;
    result.clustering.centroids = std::move(centroids);
    result.cost = result.cost_trace.back();
    return result;
}

LloydResult run(const Dataset& d, const SeedSet& seeds, const LloydConfig& cfg) {
    return run(d, seeds.centroids, cfg);
}

}  // namespace wellsep::lloyd
