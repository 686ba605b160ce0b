#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "wellsep/core.hpp"
#include "wellsep/datagen.hpp"

namespace wellsep {

enum class SeedingTag { Random, TrueCenter, KMeansPP, MostDistant, KMeansPPBoosted, Global };

inline constexpr SeedingTag kAllSeedingTags[] = {
    SeedingTag::Random,      SeedingTag::TrueCenter,      SeedingTag::KMeansPP,
    SeedingTag::MostDistant, SeedingTag::KMeansPPBoosted, SeedingTag::Global};

/// Short CLI / file identifier: random, tc, kmpp, md, kmppb, global.
std::string_view to_string(SeedingTag tag);
/// Name used in tables and figures (k-means, tc-k-means, ...).
std::string_view display_name(SeedingTag tag);
std::optional<SeedingTag> parse_seeding_tag(std::string_view name);

/// What the boosted seeding minimises over its candidates.
enum class BoostCriterion { SquaredDistance, Distance };

inline constexpr std::size_t kDefaultBoostWidth = 15;

struct SeedingMethod {
    SeedingTag tag = SeedingTag::Random;
    std::size_t boost_width = kDefaultBoostWidth;  // KMeansPPBoosted only
    BoostCriterion criterion = BoostCriterion::SquaredDistance;

    bool operator==(const SeedingMethod&) const = default;
};

struct SeedSet {
    std::vector<Point> centroids;
    std::vector<std::size_t> point_indices;  // dataset rows picked; empty for computed seeds
    SeedingTag method = SeedingTag::Random;
    std::optional<std::uint64_t> rng_seed;
};

// Building blocks shared by the D²-family seedings.

/// For every point, the squared distance to its nearest seed.
std::vector<double> min_squared_distances(const Dataset& d, std::span<const Point> seeds);
/// Lowers min_sq in place with the distances to one new seed.
void tighten(const Dataset& d, Coords seed, std::span<double> min_sq);
/// D² sampling probabilities: min_sq normalised to sum 1. Throws when all are zero.
std::vector<double> selection_probabilities(std::span<const double> min_sq);
/// Draws one index with probability proportional to weights; zero-weight
/// entries are never returned.
std::size_t sample_weighted(std::span<const double> weights, Rng& rng);
/// Σ_f min(min_sq[f], d²(f, candidate)); with BoostCriterion::Distance the
/// square roots of both terms are summed instead.
double boost_potential(const Dataset& d, std::span<const double> min_sq, std::size_t candidate,
                       BoostCriterion criterion = BoostCriterion::SquaredDistance);
/// The candidate of lowest potential (ties: lowest index). Duplicates are evaluated once.
std::size_t select_boosted_candidate(const Dataset& d, std::span<const double> min_sq,
                                     std::span<const std::size_t> candidates,
                                     BoostCriterion criterion = BoostCriterion::SquaredDistance);
/// v_e = Σ_f max(0, min_sq[f] − d²(f, e)) for every point e.
std::vector<double> global_gains(const Dataset& d, std::span<const double> min_sq);

// Seedings.

SeedSet init_random(const Dataset& d, std::size_t k, Rng& rng);
SeedSet init_true_centers(const LabeledDataset& ld);
SeedSet init_kmeanspp(const Dataset& d, std::size_t k, Rng& rng);
SeedSet init_most_distant(const Dataset& d, std::size_t k, Rng& rng);
SeedSet init_kmeanspp_boosted(const Dataset& d, std::size_t k, std::size_t b, Rng& rng,
                              BoostCriterion criterion = BoostCriterion::SquaredDistance);
SeedSet init_global(const Dataset& d, std::size_t k);

/// Dispatches on the method with an rng seeded from `seed` and records it as provenance.
SeedSet make_seeds(const SeedingMethod& method, const LabeledDataset& ld, std::size_t k,
                   std::uint64_t seed);

}  // namespace wellsep
