#include "wellsep/separation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "wellsep/error.hpp"

namespace wellsep {

double min_gap_threshold(std::size_t k, double radius, std::size_t dim) {
    if (k < 2) throw UsageError("separation threshold needs k >= 2");
    if (!(radius >= 0.0)) throw UsageError("radius must be non-negative");
    double neighbours = double(k - 1);
    if (dim == 2) neighbours = std::min(neighbours, 8.0);
    return radius * (std::sqrt(neighbours) + 3.0);
}

bool gap_satisfies(double gap, double threshold) {
    return gap >= threshold - kGapRelTolerance * std::max(1.0, std::abs(threshold));
}

namespace {

// Smallest surface gap among all pairs of balls.
double min_pairwise_gap(std::span<const Point> centers, std::span<const double> radii) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < centers.size(); ++a) {
        for (std::size_t b = a + 1; b < centers.size(); ++b) {
            const double dist = std::sqrt(squared_distance(centers[a], centers[b]));
            best = std::min(best, dist - radii[a] - radii[b]);
        }
    }
    return best;
}

}  // namespace

SeparationReport verify(const LabeledDataset& ld) {
    ld.validate();
    if (ld.k < 2) throw UsageError("verification needs at least two intended clusters");
    const auto members = ld.intended_members();
    const auto& d = ld.dataset;

    SeparationReport report;
    std::vector<Point> gravity;
    gravity.reserve(ld.k);
    for (std::size_t j = 0; j < ld.k; ++j) {
        if (members[j].empty()) {
            throw UsageError("intended cluster " + std::to_string(j) + " has no regular points");
        }
        gravity.push_back(centroid(d, members[j]));
        double r2 = 0.0;
        for (const auto i : members[j]) r2 = std::max(r2, squared_distance(d[i], gravity.back()));
        report.per_cluster_radius.push_back(std::sqrt(r2));
    }
    const double r_max =
        *std::max_element(report.per_cluster_radius.begin(), report.per_cluster_radius.end());
    report.min_ball_gap = min_pairwise_gap(gravity, report.per_cluster_radius);
    report.threshold = min_gap_threshold(ld.k, r_max, d.dim());
    report.satisfied = gap_satisfies(report.min_ball_gap, report.threshold);

    if (ld.config && ld.intended_centers.size() == ld.k) {
        NominalSeparation nominal;
        nominal.radius = ld.config->radius;
        const std::vector<double> radii(ld.k, nominal.radius);
        nominal.min_ball_gap = min_pairwise_gap(ld.intended_centers, radii);
        nominal.threshold = min_gap_threshold(ld.k, nominal.radius, d.dim());
        const double r2 = nominal.radius * nominal.radius * (1.0 + 1e-12);
        nominal.points_enclosed = true;
        for (std::size_t j = 0; j < ld.k && nominal.points_enclosed; ++j) {
            for (const auto i : members[j]) {
                if (squared_distance(d[i], ld.intended_centers[j]) > r2) {
                    nominal.points_enclosed = false;
                    break;
                }
            }
        }
        nominal.satisfied =
            nominal.points_enclosed && gap_satisfies(nominal.min_ball_gap, nominal.threshold);
        report.nominal = nominal;
    }
    return report;
}

double stirling2(std::size_t n, std::size_t k) {
    if (k > n) return 0.0;
    // row[j] holds S(i, j) for the current i.
    std::vector<double> row(k + 1, 0.0);
    row[0] = 1.0;
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = std::min(i, k); j >= 1; --j) row[j] = double(j) * row[j] + row[j - 1];
        row[0] = 0.0;
    }
    return row[k];
}

namespace {

class PartitionSearch {
public:
    PartitionSearch(const Dataset& d, std::size_t k)
        : n_(d.size()), dim_(d.dim()), k_(k), coords_(d.flat().begin(), d.flat().end()),
          sums_(k * d.dim(), 0.0), sumsq_(k, 0.0), counts_(k, 0), labels_(d.size(), 0),
          saved_(d.size() * (d.dim() + 1), 0.0) {
        // Centering keeps the Σx² − ‖Σx‖²/n evaluation free of cancellation.
        const auto mu = centroid(d);
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t c = 0; c < dim_; ++c) coords_[i * dim_ + c] -= mu[c];
        }
        norms_.assign(n_, 0.0);
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t c = 0; c < dim_; ++c) {
                norms_[i] += coords_[i * dim_ + c] * coords_[i * dim_ + c];
            }
        }
    }

    void run() { descend(0, 0); }

    std::vector<std::size_t> best_labels;
    double best = std::numeric_limits<double>::infinity();
    double runner_up = std::numeric_limits<double>::infinity();
    std::uint64_t visited = 0;

private:
    // Adds point i to block b, saving the block's previous state in the
    // depth-i slot so that unplace restores it bit-exactly.
    void place(std::size_t i, std::size_t b) {
        double* slot = &saved_[i * (dim_ + 1)];
        for (std::size_t c = 0; c < dim_; ++c) {
            slot[c] = sums_[b * dim_ + c];
            sums_[b * dim_ + c] += coords_[i * dim_ + c];
        }
        slot[dim_] = sumsq_[b];
        sumsq_[b] += norms_[i];
        ++counts_[b];
    }

    void unplace(std::size_t i, std::size_t b) {
        const double* slot = &saved_[i * (dim_ + 1)];
        for (std::size_t c = 0; c < dim_; ++c) sums_[b * dim_ + c] = slot[c];
        sumsq_[b] = slot[dim_];
        --counts_[b];
    }

    double cost() const {
        double total = 0.0;
        for (std::size_t b = 0; b < k_; ++b) {
            double s2 = 0.0;
            for (std::size_t c = 0; c < dim_; ++c) s2 += sums_[b * dim_ + c] * sums_[b * dim_ + c];
            total += sumsq_[b] - s2 / double(counts_[b]);
        }
        return total;
    }

    void descend(std::size_t i, std::size_t used) {
        if (n_ - i < k_ - used) return;  // not enough points left to open every block
        if (i == n_) {
            ++visited;
            const double c = cost();
            if (best_labels.empty() || c < best - 1e-12 * std::max(1.0, std::abs(best))) {
                runner_up = std::min(runner_up, best);
                best = c;
                best_labels = labels_;
            } else {
                runner_up = std::min(runner_up, c);
            }
            return;
        }
        const std::size_t open = std::min(used + 1, k_);
        for (std::size_t b = 0; b < open; ++b) {
            labels_[i] = b;
            place(i, b);
            descend(i + 1, b == used ? used + 1 : used);
            unplace(i, b);
        }
    }

    std::size_t n_, dim_, k_;
    std::vector<double> coords_;
    std::vector<double> norms_;
    std::vector<double> sums_;
    std::vector<double> sumsq_;
    std::vector<std::size_t> counts_;
    std::vector<std::size_t> labels_;
    std::vector<double> saved_;
};

}  // namespace

BruteForceResult brute_force_optimum(const Dataset& d, std::size_t k) {
    const std::size_t n = d.size();
    if (k == 0 || k > n) {
        throw UsageError("brute force needs 1 <= k <= " + std::to_string(n));
    }
    double estimate = 0.0;
    for (std::size_t j = 1; j <= k; ++j) estimate += stirling2(n, j);
    if (estimate > kBruteForceLimit) {
        std::ostringstream msg;
        msg << "instance too large for exhaustive search: ~" << estimate << " partitions of " << n
            << " points into <= " << k << " clusters (limit " << kBruteForceLimit << ")";
        throw UsageError(msg.str());
    }

    PartitionSearch search(d, k);
    search.run();

    BruteForceResult result;
    result.clustering = Clustering::from_assignment(d, search.best_labels, k);
    result.cost = cost_centroid_form(d, result.clustering);
    result.runner_up_cost = search.runner_up;
    result.partitions = search.visited;
    return result;
}

}  // namespace wellsep
