#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace wellsep {

using Coords = std::span<const double>;

struct Point {
    std::vector<double> coords;

    Point() = default;
    explicit Point(std::vector<double> c) : coords(std::move(c)) {}
    Point(std::initializer_list<double> c) : coords(c) {}

    std::size_t dim() const { return coords.size(); }
    double operator[](std::size_t d) const { return coords[d]; }
    operator Coords() const { return coords; }

    bool operator==(const Point&) const = default;
};

/// Points of uniform dimensionality, stored row-major in one buffer.
///
/// A dataset is never empty and every coordinate is finite; the constructors
/// throw UsageError otherwise.
class Dataset {
public:
    Dataset(std::size_t dim, std::vector<double> flat);
    static Dataset from_points(std::span<const Point> points);
    static Dataset from_points(std::initializer_list<Point> points);

    std::size_t size() const { return data_.size() / dim_; }
    std::size_t dim() const { return dim_; }

    Coords operator[](std::size_t i) const { return {data_.data() + i * dim_, dim_}; }
    Point point(std::size_t i) const;
    std::span<const double> flat() const { return data_; }

private:
    std::size_t dim_;
    std::vector<double> data_;
};

/// A partition of dataset indices into k groups with one centroid per group.
struct Clustering {
    std::vector<std::size_t> assignment;
    std::size_t k = 0;
    std::vector<Point> centroids;

    /// Builds the consistent clustering for an assignment: centroids are the
    /// group means. Every group in [0, k) must be non-empty.
    static Clustering from_assignment(const Dataset& d, std::vector<std::size_t> assignment,
                                      std::size_t k);

    std::vector<std::size_t> cluster_sizes() const;
};

namespace detail {

inline double squared_distance(const double* a, const double* b, std::size_t dim) {
    double s = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        const double t = a[i] - b[i];
        s += t * t;
    }
    return s;
}

}  // namespace detail

double squared_distance(Coords a, Coords b);

Point centroid(std::span<const Point> points);
Point centroid(const Dataset& d);
/// Mean of the selected dataset rows.
Point centroid(const Dataset& d, std::span<const std::size_t> indices);

/// Σ_i ‖x_i − centroids[assignment[i]]‖² for arbitrary (not necessarily
/// consistent) centroids.
double cost_with_centroids(const Dataset& d, std::span<const std::size_t> assignment,
                           std::span<const Point> centroids);

/// k-means cost Σ_i Σ_j u_ij ‖x_i − μ_j‖² using the clustering's centroids.
double cost_centroid_form(const Dataset& d, const Clustering& g);

/// k-means cost ½ Σ_j (1/n_j) Σ_{i,l ∈ C_j} ‖x_i − x_l‖²; ignores the centroids.
double cost_pairwise_form(const Dataset& d, const Clustering& g);

}  // namespace wellsep
