#include "wellsep/core.hpp"

#include <cmath>
#include <string>

#include "wellsep/error.hpp"

namespace wellsep {

namespace {

void check_assignment(const Dataset& d, std::span<const std::size_t> assignment, std::size_t k) {
    if (assignment.size() != d.size()) {
        throw UsageError("assignment covers " + std::to_string(assignment.size()) +
                         " points, dataset has " + std::to_string(d.size()));
    }
    for (const auto a : assignment) {
        if (a >= k) {
            throw UsageError("cluster index " + std::to_string(a) + " out of range for k=" +
                             std::to_string(k));
        }
    }
}

}  // namespace

Dataset::Dataset(std::size_t dim, std::vector<double> flat) : dim_(dim), data_(std::move(flat)) {
    if (dim_ == 0) throw UsageError("dataset dimensionality must be >= 1");
    if (data_.empty()) throw UsageError("dataset must not be empty");
    if (data_.size() % dim_ != 0) throw UsageError("coordinate buffer not a multiple of dim");
    for (const double v : data_) {
        if (!std::isfinite(v)) throw UsageError("dataset contains a non-finite coordinate");
    }
}

Dataset Dataset::from_points(std::span<const Point> points) {
    if (points.empty()) throw UsageError("dataset must not be empty");
    const std::size_t dim = points.front().dim();
    std::vector<double> flat;
    flat.reserve(points.size() * dim);
    for (const auto& p : points) {
        if (p.dim() != dim) throw UsageError("points of mixed dimensionality");
        flat.insert(flat.end(), p.coords.begin(), p.coords.end());
    }
    return Dataset(dim, std::move(flat));
}

Dataset Dataset::from_points(std::initializer_list<Point> points) {
    return from_points(std::span<const Point>(points.begin(), points.size()));
}

Point Dataset::point(std::size_t i) const {
    const auto row = (*this)[i];
    return Point(std::vector<double>(row.begin(), row.end()));
}

Clustering Clustering::from_assignment(const Dataset& d, std::vector<std::size_t> assignment,
                                       std::size_t k) {
    if (k == 0) throw UsageError("k must be positive");
    check_assignment(d, assignment, k);
    const std::size_t dim = d.dim();
    std::vector<double> sums(k * dim, 0.0);
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < d.size(); ++i) {
        const auto row = d[i];
        const auto j = assignment[i];
        ++counts[j];
        for (std::size_t c = 0; c < dim; ++c) sums[j * dim + c] += row[c];
    }
    Clustering g;
    g.k = k;
    g.centroids.reserve(k);
    for (std::size_t j = 0; j < k; ++j) {
        if (counts[j] == 0) throw UsageError("cluster " + std::to_string(j) + " is empty");
        std::vector<double> mu(dim);
        for (std::size_t c = 0; c < dim; ++c) mu[c] = sums[j * dim + c] / double(counts[j]);
        g.centroids.emplace_back(std::move(mu));
    }
    g.assignment = std::move(assignment);
    return g;
}

std::vector<std::size_t> Clustering::cluster_sizes() const {
    std::vector<std::size_t> sizes(k, 0);
    for (const auto a : assignment) ++sizes.at(a);
    return sizes;
}

double squared_distance(Coords a, Coords b) {
    if (a.size() != b.size()) {
        throw UsageError("dimension mismatch: " + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()));
    }
    return detail::squared_distance(a.data(), b.data(), a.size());
}

Point centroid(std::span<const Point> points) {
    if (points.empty()) throw UsageError("centroid of an empty point list");
    const std::size_t dim = points.front().dim();
    std::vector<double> mu(dim, 0.0);
    for (const auto& p : points) {
        if (p.dim() != dim) throw UsageError("points of mixed dimensionality");
        for (std::size_t c = 0; c < dim; ++c) mu[c] += p[c];
    }
    for (auto& v : mu) v /= double(points.size());
    return Point(std::move(mu));
}

Point centroid(const Dataset& d) {
    std::vector<double> mu(d.dim(), 0.0);
    for (std::size_t i = 0; i < d.size(); ++i) {
        const auto row = d[i];
        for (std::size_t c = 0; c < d.dim(); ++c) mu[c] += row[c];
    }
    for (auto& v : mu) v /= double(d.size());
    return Point(std::move(mu));
}

Point centroid(const Dataset& d, std::span<const std::size_t> indices) {
    if (indices.empty()) throw UsageError("centroid of an empty point list");
    std::vector<double> mu(d.dim(), 0.0);
    for (const auto i : indices) {
        const auto row = d[i];
        for (std::size_t c = 0; c < d.dim(); ++c) mu[c] += row[c];
    }
    for (auto& v : mu) v /= double(indices.size());
    return Point(std::move(mu));
}

double cost_with_centroids(const Dataset& d, std::span<const std::size_t> assignment,
                           std::span<const Point> centroids) {
    check_assignment(d, assignment, centroids.size());
    for (const auto& c : centroids) {
        if (c.dim() != d.dim()) throw UsageError("centroid dimensionality mismatch");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        total += detail::squared_distance(d[i].data(), centroids[assignment[i]].coords.data(),
                                          d.dim());
    }
    return total;
}

double cost_centroid_form(const Dataset& d, const Clustering& g) {
    if (g.centroids.size() != g.k) throw UsageError("clustering has wrong number of centroids");
    return cost_with_centroids(d, g.assignment, g.centroids);
}

double cost_pairwise_form(const Dataset& d, const Clustering& g) {
    check_assignment(d, g.assignment, g.k);
    std::vector<std::vector<std::size_t>> members(g.k);
    for (std::size_t i = 0; i < d.size(); ++i) members[g.assignment[i]].push_back(i);

    double total = 0.0;
    for (const auto& group : members) {
        if (group.empty()) continue;
        double within = 0.0;
        // Each unordered pair once; the ½ and the doubled sum cancel.
        for (std::size_t a = 0; a < group.size(); ++a) {
            for (std::size_t b = a + 1; b < group.size(); ++b) {
                within += detail::squared_distance(d[group[a]].data(), d[group[b]].data(), d.dim());
            }
        }
        total += within / double(group.size());
    }
    return total;
}

}  // namespace wellsep
