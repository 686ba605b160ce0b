#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "wellsep/datagen.hpp"
#include "wellsep/error.hpp"
#include "wellsep/lloyd.hpp"
#include "wellsep/seeding.hpp"
#include "wellsep/separation.hpp"

using namespace wellsep;

namespace {

// Canonical form of a partition: labels renumbered by first appearance.
std::vector<std::size_t> canonical(const std::vector<std::size_t>& labels) {
    std::map<std::size_t, std::size_t> rename;
    std::vector<std::size_t> out;
    for (const auto l : labels) {
        const auto it = rename.emplace(l, rename.size()).first;
        out.push_back(it->second);
    }
    return out;
}

// Three clusters of four points, radius 1, centers 7 apart (gap 5 > √2 + 3).
LabeledDataset three_ball_instance(std::uint64_t seed) {
    Rng rng(seed);
    const std::vector<Point> centers{{0.0, 0.0}, {7.0, 0.0}, {3.5, 3.5 * std::sqrt(3.0)}};
    std::vector<Point> pts;
    std::vector<int> labels;
    for (std::size_t j = 0; j < 3; ++j) {
        for (int i = 0; i < 4; ++i) {
            pts.push_back(sample_cluster_point(centers[j], 1.0, rng));
            labels.push_back(static_cast<int>(j));
        }
    }
    return LabeledDataset{Dataset::from_points(pts), labels, 3, centers, std::nullopt};
}

}  // namespace

TEST_CASE("gap threshold") {
    CHECK(min_gap_threshold(2, 1.0, 3) == doctest::Approx(4.0));
    CHECK(min_gap_threshold(100, 1.0, 2) == doctest::Approx(5.828427).epsilon(1e-7));
    CHECK(min_gap_threshold(5, 2.0, 2) == doctest::Approx(10.0));
    CHECK(min_gap_threshold(9, 1.0, 2) == doctest::Approx(std::sqrt(8.0) + 3.0));
    CHECK(min_gap_threshold(10, 1.0, 2) == doctest::Approx(std::sqrt(8.0) + 3.0));
    CHECK(min_gap_threshold(10, 1.0, 3) == doctest::Approx(6.0));
    CHECK_THROWS_AS(min_gap_threshold(1, 1.0, 2), UsageError);
}

TEST_CASE("gap comparison tolerates rounding at the threshold only") {
    const double t = min_gap_threshold(64, 1.0, 2);
    CHECK(gap_satisfies(t, t));
    CHECK(gap_satisfies(t * (1.0 - 1e-12), t));
    CHECK_FALSE(gap_satisfies(t * (1.0 - 1e-6), t));
}

TEST_CASE("verify") {
    SUBCASE("two singletons") {
        LabeledDataset ld{Dataset::from_points({Point{0, 0}, Point{10, 0}}), {0, 1}, 2, {}, std::nullopt};
        const auto r = verify(ld);
        CHECK(r.min_ball_gap == doctest::Approx(10.0));
        CHECK(r.threshold == 0.0);
        CHECK(r.satisfied);
        CHECK_FALSE(r.nominal.has_value());
    }
    SUBCASE("overlapping clusters") {
        LabeledDataset ld{Dataset::from_points({Point{0, 0}, Point{2, 0}, Point{1, 0}, Point{3, 0}}),
                          {0, 0, 1, 1},
                          2,
                          {},
                          std::nullopt};
        const auto r = verify(ld);
        CHECK(r.min_ball_gap < 0.0);
        CHECK_FALSE(r.satisfied);
    }
    SUBCASE("generated 3x3 grid") {
        GenConfig cfg;
        cfg.grid_rows = cfg.grid_cols = 3;
        cfg.rng_seed = 12;
        const auto r = verify(generate(cfg));
        REQUIRE(r.nominal.has_value());
        CHECK(r.nominal->satisfied);
        CHECK(r.nominal->min_ball_gap == doctest::Approx(r.nominal->threshold));
        CHECK(r.per_cluster_radius.size() == 9);
        for (const double rad : r.per_cluster_radius) CHECK(rad <= 2.0);
        CHECK(r.satisfied == gap_satisfies(r.min_ball_gap, r.threshold));
    }
    SUBCASE("empty intended cluster") {
        LabeledDataset ld{Dataset::from_points({Point{0, 0}, Point{1, 0}}), {0, 0}, 2, {}, std::nullopt};
        CHECK_THROWS_AS(verify(ld), UsageError);
    }
    SUBCASE("noise is ignored") {
        LabeledDataset ld{Dataset::from_points({Point{0, 0}, Point{10, 0}, Point{5, 0}}),
                          {0, 1, kNoiseLabel},
                          2,
                          {},
                          std::nullopt};
        CHECK(verify(ld).satisfied);
    }
}

TEST_CASE("stirling numbers") {
    CHECK(stirling2(12, 3) == 86526.0);
    CHECK(stirling2(4, 2) == 7.0);
    CHECK(stirling2(5, 5) == 1.0);
    CHECK(stirling2(3, 4) == 0.0);
    CHECK(stirling2(10, 1) == 1.0);
}

TEST_CASE("brute force optimum") {
    SUBCASE("forced partition") {
        const auto d = Dataset::from_points({Point{0}, Point{5}, Point{7}});
        const auto r = brute_force_optimum(d, 3);
        CHECK(r.cost == 0.0);
        CHECK(r.partitions == 1);
    }
    SUBCASE("four collinear points against all seven two-partitions") {
        const std::vector<double> xs{0, 1, 10, 11};
        const auto d = Dataset::from_points({Point{0}, Point{1}, Point{10}, Point{11}});
        // Oracle: subsets containing point 0 define the first block.
        double best = 1e300;
        unsigned best_mask = 0;
        int count = 0;
        for (unsigned mask = 1; mask < 16; mask += 2) {
            if (mask == 15) continue;
            ++count;
            double cost = 0.0;
            for (const bool side : {true, false}) {
                double sum = 0.0, sq = 0.0, n = 0.0;
                for (unsigned i = 0; i < 4; ++i) {
                    if (bool(mask & (1u << i)) != side) continue;
                    sum += xs[i];
                    sq += xs[i] * xs[i];
                    n += 1.0;
                }
                cost += sq - sum * sum / n;
            }
            if (cost < best) {
                best = cost;
                best_mask = mask;
            }
        }
        CHECK(count == 7);
        CHECK(best_mask == 0b0011u);
        const auto r = brute_force_optimum(d, 2);
        CHECK(r.partitions == 7);
        CHECK(r.cost == doctest::Approx(best));
        CHECK(r.cost == doctest::Approx(1.0));
        CHECK(canonical(r.clustering.assignment) == std::vector<std::size_t>{0, 0, 1, 1});
        CHECK(r.runner_up_cost > r.cost);
    }
    SUBCASE("well-separated instance yields the intended partition") {
        const auto ld = three_ball_instance(21);
        const auto r = brute_force_optimum(ld.dataset, 3);
        CHECK(r.partitions == 86526);
        std::vector<std::size_t> intended(ld.labels.begin(), ld.labels.end());
        CHECK(canonical(r.clustering.assignment) == canonical(intended));
        CHECK(r.runner_up_cost > r.cost);
    }
    SUBCASE("refuses oversized instances") {
        std::vector<Point> pts;
        for (int i = 0; i < 30; ++i) pts.push_back(Point{double(i)});
        CHECK_THROWS_AS(brute_force_optimum(Dataset::from_points(pts), 5), UsageError);
        CHECK_THROWS_AS(brute_force_optimum(Dataset::from_points(pts), 0), UsageError);
    }
    SUBCASE("first-found partition wins ties") {
        // Symmetric square: two optimal splits of equal cost.
        const auto d = Dataset::from_points({Point{0, 0}, Point{1, 0}, Point{0, 1}, Point{1, 1}});
        const auto r = brute_force_optimum(d, 2);
        CHECK(r.cost == doctest::Approx(1.0));
        CHECK(r.runner_up_cost == doctest::Approx(1.0));
        CHECK(canonical(r.clustering.assignment) == std::vector<std::size_t>{0, 0, 1, 1});
    }
}

TEST_CASE("brute force bounds every Lloyd result and is a Lloyd fixed point") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        Rng rng(seed);
        std::normal_distribution<double> g(0.0, 3.0);
        std::vector<Point> pts;
        for (int i = 0; i < 10; ++i) pts.push_back(Point{g(rng), g(rng)});
        const auto d = Dataset::from_points(pts);
        const auto opt = brute_force_optimum(d, 3);
        for (int t = 0; t < 10; ++t) {
            const auto res = lloyd::run(d, init_random(d, 3, rng));
            CHECK(opt.cost <= res.cost + 1e-9);
        }
        const auto fixed = lloyd::run(d, opt.clustering.centroids);
        CHECK(fixed.cost == doctest::Approx(opt.cost).epsilon(1e-12));
    }
}
