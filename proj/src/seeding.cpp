#include "wellsep/seeding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "wellsep/error.hpp"

namespace wellsep {

namespace {

struct TagNames {
    SeedingTag tag;
    std::string_view id;
    std::string_view display;
};

constexpr TagNames kTagNames[] = {
    {SeedingTag::Random, "random", "k-means"},
    {SeedingTag::TrueCenter, "tc", "tc-k-means"},
    {SeedingTag::KMeansPP, "kmpp", "k-means++"},
    {SeedingTag::MostDistant, "md", "md-k-means"},
    {SeedingTag::KMeansPPBoosted, "kmppb", "k-means++B"},
    {SeedingTag::Global, "global", "glob-k-means"},
};

void check_k(const Dataset& d, std::size_t k) {
    if (k == 0) throw UsageError("k must be positive");
    if (k > d.size()) {
        throw UsageError("k=" + std::to_string(k) + " exceeds the " + std::to_string(d.size()) +
                         " available points");
    }
}

std::size_t uniform_index(std::size_t n, Rng& rng) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

void add_row(SeedSet& s, const Dataset& d, std::size_t i) {
    s.centroids.push_back(d.point(i));
    s.point_indices.push_back(i);
}

// First index holding the maximum.
std::size_t argmax(std::span<const double> v) {
    return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

// Two-dimensional data as separate coordinate arrays for the O(n²) gain sweep.
struct PlanarView {
    std::vector<double> xs, ys;
    explicit PlanarView(const Dataset& d) : xs(d.size()), ys(d.size()) {
        for (std::size_t i = 0; i < d.size(); ++i) {
            xs[i] = d[i][0];
            ys[i] = d[i][1];
        }
    }
};

void global_gains_into(const Dataset& d, const PlanarView* planar, std::span<const double> min_sq,
                       std::vector<double>& gains) {
    const std::size_t n = d.size();
    gains.assign(n, 0.0);
    if (planar != nullptr) {
        const double* xs = planar->xs.data();
        const double* ys = planar->ys.data();
        const double* dm = min_sq.data();
        for (std::size_t e = 0; e < n; ++e) {
            const double ex = xs[e], ey = ys[e];
            double v = 0.0;
            for (std::size_t f = 0; f < n; ++f) {
                const double dx = xs[f] - ex, dy = ys[f] - ey;
                v += std::max(0.0, dm[f] - (dx * dx + dy * dy));
            }
            gains[e] = v;
        }
        return;
    }
    for (std::size_t e = 0; e < n; ++e) {
        double v = 0.0;
        for (std::size_t f = 0; f < n; ++f) {
            v += std::max(0.0, min_sq[f] - detail::squared_distance(d[f].data(), d[e].data(), d.dim()));
        }
        gains[e] = v;
    }
}

}  // namespace

std::string_view to_string(SeedingTag tag) {
    for (const auto& t : kTagNames) {
        if (t.tag == tag) return t.id;
    }
    return "unknown";
}

std::string_view display_name(SeedingTag tag) {
    for (const auto& t : kTagNames) {
        if (t.tag == tag) return t.display;
    }
    return "unknown";
}

std::optional<SeedingTag> parse_seeding_tag(std::string_view name) {
    for (const auto& t : kTagNames) {
        if (t.id == name) return t.tag;
    }
    return std::nullopt;
}

std::vector<double> min_squared_distances(const Dataset& d, std::span<const Point> seeds) {
    if (seeds.empty()) throw UsageError("need at least one seed");
    std::vector<double> min_sq(d.size(), std::numeric_limits<double>::infinity());
    for (const auto& s : seeds) {
        if (s.dim() != d.dim()) throw UsageError("seed dimensionality mismatch");
        tighten(d, s, min_sq);
    }
    return min_sq;
}

void tighten(const Dataset& d, Coords seed, std::span<double> min_sq) {
    for (std::size_t i = 0; i < d.size(); ++i) {
        min_sq[i] = std::min(min_sq[i], detail::squared_distance(d[i].data(), seed.data(), d.dim()));
    }
}

std::vector<double> selection_probabilities(std::span<const double> min_sq) {
    const double total = std::accumulate(min_sq.begin(), min_sq.end(), 0.0);
    if (!(total > 0.0)) throw UsageError("all sampling weights are zero (fewer distinct points than k)");
    std::vector<double> p(min_sq.begin(), min_sq.end());
    for (auto& v : p) v /= total;
    return p;
}

std::size_t sample_weighted(std::span<const double> weights, Rng& rng) {
    std::vector<double> cumulative(weights.size());
    std::partial_sum(weights.begin(), weights.end(), cumulative.begin());
    const double total = cumulative.empty() ? 0.0 : cumulative.back();
    if (!(total > 0.0)) throw UsageError("all sampling weights are zero (fewer distinct points than k)");
    const double u = std::uniform_real_distribution<double>(0.0, total)(rng);
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) {
        // u rounded up to total: fall back to the last positive weight.
        std::size_t i = weights.size();
        while (weights[--i] <= 0.0) {}
        return i;
    }
    return static_cast<std::size_t>(it - cumulative.begin());
}

double boost_potential(const Dataset& d, std::span<const double> min_sq, std::size_t candidate,
                       BoostCriterion criterion) {
    const auto c = d[candidate];
    double total = 0.0;
    for (std::size_t f = 0; f < d.size(); ++f) {
        const double d2 = detail::squared_distance(d[f].data(), c.data(), d.dim());
        const double closest = std::min(min_sq[f], d2);
        total += criterion == BoostCriterion::SquaredDistance ? closest : std::sqrt(closest);
    }
    return total;
}

std::size_t select_boosted_candidate(const Dataset& d, std::span<const double> min_sq,
                                     std::span<const std::size_t> candidates,
                                     BoostCriterion criterion) {
    if (candidates.empty()) throw UsageError("no boost candidates");
    std::vector<std::size_t> unique(candidates.begin(), candidates.end());
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());

    std::size_t best = unique.front();
    double best_potential = std::numeric_limits<double>::infinity();
    for (const auto c : unique) {
        const double p = boost_potential(d, min_sq, c, criterion);
        if (p < best_potential) {
            best_potential = p;
            best = c;
        }
    }
    return best;
}

std::vector<double> global_gains(const Dataset& d, std::span<const double> min_sq) {
    std::vector<double> gains;
    if (d.dim() == 2) {
        const PlanarView planar(d);
        global_gains_into(d, &planar, min_sq, gains);
    } else {
        global_gains_into(d, nullptr, min_sq, gains);
    }
    return gains;
}

SeedSet init_random(const Dataset& d, std::size_t k, Rng& rng) {
    check_k(d, k);
    SeedSet s;
    s.method = SeedingTag::Random;
    // Partial Fisher-Yates: the first k slots are a uniform sample without repetition.
    std::vector<std::size_t> order(d.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t j = 0; j < k; ++j) {
        const std::size_t pick = j + uniform_index(d.size() - j, rng);
        std::swap(order[j], order[pick]);
        add_row(s, d, order[j]);
    }
    return s;
}

SeedSet init_true_centers(const LabeledDataset& ld) {
    ld.validate();
    SeedSet s;
    s.method = SeedingTag::TrueCenter;
    const auto members = ld.intended_members();
    for (std::size_t j = 0; j < ld.k; ++j) {
        if (members[j].empty()) {
            throw UsageError("intended cluster " + std::to_string(j) + " has no regular points");
        }
        s.centroids.push_back(centroid(ld.dataset, members[j]));
    }
    return s;
}

SeedSet init_kmeanspp(const Dataset& d, std::size_t k, Rng& rng) {
    return init_kmeanspp_boosted(d, k, 1, rng);
}

SeedSet init_most_distant(const Dataset& d, std::size_t k, Rng& rng) {
    check_k(d, k);
    SeedSet s;
    s.method = SeedingTag::MostDistant;
    const std::size_t first = uniform_index(d.size(), rng);
    add_row(s, d, first);
    std::vector<double> min_sq(d.size(), std::numeric_limits<double>::infinity());
    tighten(d, d[first], min_sq);
    for (std::size_t j = 1; j < k; ++j) {
        const std::size_t next = argmax(min_sq);
        add_row(s, d, next);
        tighten(d, d[next], min_sq);
    }
    return s;
}

SeedSet init_kmeanspp_boosted(const Dataset& d, std::size_t k, std::size_t b, Rng& rng,
                              BoostCriterion criterion) {
    check_k(d, k);
    if (b == 0) throw UsageError("boost width must be >= 1");
    if (b > d.size()) throw UsageError("boost width exceeds the number of points");
    SeedSet s;
    s.method = b == 1 ? SeedingTag::KMeansPP : SeedingTag::KMeansPPBoosted;
    const std::size_t first = uniform_index(d.size(), rng);
    add_row(s, d, first);
    std::vector<double> min_sq(d.size(), std::numeric_limits<double>::infinity());
    tighten(d, d[first], min_sq);

    std::vector<std::size_t> candidates(b);
    for (std::size_t j = 1; j < k; ++j) {
        for (auto& c : candidates) c = sample_weighted(min_sq, rng);
        const std::size_t next =
            b == 1 ? candidates.front() : select_boosted_candidate(d, min_sq, candidates, criterion);
        add_row(s, d, next);
        tighten(d, d[next], min_sq);
    }
    return s;
}

SeedSet init_global(const Dataset& d, std::size_t k) {
    check_k(d, k);
    SeedSet s;
    s.method = SeedingTag::Global;
    s.centroids.push_back(centroid(d));
    std::vector<double> min_sq(d.size(), std::numeric_limits<double>::infinity());
    tighten(d, s.centroids.front(), min_sq);

    std::optional<PlanarView> planar;
    if (d.dim() == 2) planar.emplace(d);
    std::vector<double> gains;
    for (std::size_t j = 1; j < k; ++j) {
        global_gains_into(d, planar ? &*planar : nullptr, min_sq, gains);
        const std::size_t next = argmax(gains);
        add_row(s, d, next);
        tighten(d, d[next], min_sq);
    }
    return s;
}

SeedSet make_seeds(const SeedingMethod& method, const LabeledDataset& ld, std::size_t k,
                   std::uint64_t seed) {
    Rng rng(seed);
    SeedSet s;
    switch (method.tag) {
        case SeedingTag::Random:
            s = init_random(ld.dataset, k, rng);
            break;
        case SeedingTag::TrueCenter:
            if (k != ld.k) {
                throw UsageError("true-center seeding needs k equal to the intended cluster count");
            }
            s = init_true_centers(ld);
            break;
        case SeedingTag::KMeansPP:
            s = init_kmeanspp(ld.dataset, k, rng);
            break;
        case SeedingTag::MostDistant:
            s = init_most_distant(ld.dataset, k, rng);
            break;
        case SeedingTag::KMeansPPBoosted:
            s = init_kmeanspp_boosted(ld.dataset, k, method.boost_width, rng, method.criterion);
            s.method = SeedingTag::KMeansPPBoosted;
            break;
        case SeedingTag::Global:
            s = init_global(ld.dataset, k);
            break;
    }
    if (method.tag != SeedingTag::TrueCenter && method.tag != SeedingTag::Global) s.rng_seed = seed;
    return s;
}

}  // namespace wellsep
