#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "wellsep/core.hpp"
#include "wellsep/error.hpp"

using namespace wellsep;

namespace {

// Independent oracle: literal double sum over ordered pairs, no centroids.
double pairwise_oracle(const std::vector<Point>& pts, const std::vector<std::size_t>& a, std::size_t k) {
    double total = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        double sum = 0.0;
        std::size_t n = 0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (a[i] != j) continue;
            ++n;
            for (std::size_t l = 0; l < pts.size(); ++l) {
                if (a[l] != j) continue;
                for (std::size_t c = 0; c < pts[i].dim(); ++c) sum += (pts[i][c] - pts[l][c]) * (pts[i][c] - pts[l][c]);
            }
        }
        if (n > 0) total += 0.5 * sum / static_cast<double>(n);
    }
    return total;
}

struct RandomInstance {
    std::vector<Point> points;
    std::vector<std::size_t> assignment;
    std::size_t k;
};

RandomInstance random_instance(std::mt19937_64& rng, std::size_t n, std::size_t dim, std::size_t k) {
    std::normal_distribution<double> coord(0.0, 5.0);
    RandomInstance inst{{}, {}, k};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> c(dim);
        for (auto& v : c) v = coord(rng);
        inst.points.emplace_back(std::move(c));
    }
    std::uniform_int_distribution<std::size_t> label(0, k - 1);
    for (std::size_t i = 0; i < n; ++i) inst.assignment.push_back(i < k ? i : label(rng));
    return inst;
}

}  // namespace

TEST_CASE("squared_distance examples") {
    CHECK(squared_distance(Point{0, 0}, Point{0, 0}) == 0.0);
    CHECK(squared_distance(Point{0, 0}, Point{3, 4}) == 25.0);
    CHECK(squared_distance(Point{1, 2}, Point{4, 6}) == 25.0);
    CHECK(squared_distance(Point{4, 6}, Point{1, 2}) == 25.0);
}

TEST_CASE("squared_distance rejects a dimension mismatch") {
    CHECK_THROWS_AS(squared_distance(Point{0, 0}, Point{1, 2, 3}), UsageError);
}

TEST_CASE("centroid examples") {
    CHECK(centroid(std::vector<Point>{{0, 0}}) == Point{0, 0});
    CHECK(centroid(std::vector<Point>{{0, 0}, {2, 0}}) == Point{1, 0});
    CHECK(centroid(std::vector<Point>{{0, 0}, {0, 3}, {3, 0}, {3, 3}}) == Point{1.5, 1.5});
    CHECK_THROWS_AS(centroid(std::vector<Point>{}), UsageError);
}

TEST_CASE("dataset validation") {
    CHECK_THROWS_AS(Dataset(2, {}), UsageError);
    CHECK_THROWS_AS(Dataset(2, {1.0, 2.0, 3.0}), UsageError);
    CHECK_THROWS_AS(Dataset(0, {1.0}), UsageError);
    CHECK_THROWS_AS(Dataset(1, {std::nan("")}), UsageError);
    CHECK_THROWS_AS(Dataset::from_points({Point{0, 0}, Point{1}}), UsageError);
    const auto d = Dataset::from_points({Point{0, 1}, Point{2, 3}});
    CHECK(d.size() == 2);
    CHECK(d.dim() == 2);
    CHECK(d.point(1) == Point{2, 3});
}

TEST_CASE("cost examples in both forms") {
    SUBCASE("single point") {
        const auto d = Dataset::from_points({Point{0, 0}});
        const auto g = Clustering::from_assignment(d, {0}, 1);
        CHECK(cost_centroid_form(d, g) == 0.0);
        CHECK(cost_pairwise_form(d, g) == 0.0);
    }
    SUBCASE("two points") {
        const auto d = Dataset::from_points({Point{0, 0}, Point{2, 0}});
        const auto g = Clustering::from_assignment(d, {0, 0}, 1);
        CHECK(cost_centroid_form(d, g) == doctest::Approx(2.0));
        CHECK(cost_pairwise_form(d, g) == doctest::Approx(2.0));
    }
    SUBCASE("a singleton adds nothing") {
        const auto d = Dataset::from_points({Point{0, 0}, Point{2, 0}, Point{10, 0}});
        const auto g = Clustering::from_assignment(d, {0, 0, 1}, 2);
        CHECK(cost_centroid_form(d, g) == doctest::Approx(2.0));
        CHECK(cost_pairwise_form(d, g) == doctest::Approx(2.0));
    }
}

TEST_CASE("cost rejects inconsistent clusterings") {
    const auto d = Dataset::from_points({Point{0, 0}, Point{2, 0}});
    Clustering g{{0, 2}, 2, {Point{0, 0}, Point{2, 0}}};
    CHECK_THROWS_AS(cost_centroid_form(d, g), UsageError);
    CHECK_THROWS_AS(cost_pairwise_form(d, g), UsageError);
    CHECK_THROWS_AS(Clustering::from_assignment(d, {0, 0}, 2), UsageError);
}

TEST_CASE("both cost forms agree with a direct pairwise oracle") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 20 + rng() % 60;
        const std::size_t dim = 1 + rng() % 3;
        const std::size_t k = 1 + rng() % 5;
        const auto inst = random_instance(rng, n, dim, k);
        const auto d = Dataset::from_points(inst.points);
        const auto g = Clustering::from_assignment(d, inst.assignment, k);
        const double oracle = pairwise_oracle(inst.points, inst.assignment, k);
        const double tol = 1e-9 * std::max(1.0, oracle);
        CHECK(std::abs(cost_centroid_form(d, g) - oracle) <= tol);
        CHECK(std::abs(cost_pairwise_form(d, g) - oracle) <= tol);
    }
}

TEST_CASE("cost is invariant under rigid motion and scales quadratically") {
    std::mt19937_64 rng(5);
    const auto inst = random_instance(rng, 40, 2, 3);
    const auto d = Dataset::from_points(inst.points);
    const double base = cost_centroid_form(d, Clustering::from_assignment(d, inst.assignment, 3));

    const double angle = 0.7, c = std::cos(angle), s = std::sin(angle);
    std::vector<Point> moved, scaled;
    for (const auto& p : inst.points) {
        moved.push_back(Point{c * p[0] - s * p[1] + 13.0, s * p[0] + c * p[1] - 4.0});
        scaled.push_back(Point{3.0 * p[0], 3.0 * p[1]});
    }
    const auto dm = Dataset::from_points(moved);
    const auto ds = Dataset::from_points(scaled);
    CHECK(cost_centroid_form(dm, Clustering::from_assignment(dm, inst.assignment, 3)) ==
          doctest::Approx(base).epsilon(1e-9));
    CHECK(cost_centroid_form(ds, Clustering::from_assignment(ds, inst.assignment, 3)) ==
          doctest::Approx(9.0 * base).epsilon(1e-9));
}

TEST_CASE("the centroid minimises the sum of squared distances") {
    std::mt19937_64 rng(9);
    const auto inst = random_instance(rng, 30, 3, 1);
    const auto mu = centroid(inst.points);
    auto spread = [&](const Point& c) {
        double s = 0.0;
        for (const auto& p : inst.points) s += squared_distance(p, c);
        return s;
    };
    const double best = spread(mu);
    std::normal_distribution<double> jitter(0.0, 0.5);
    for (int t = 0; t < 100; ++t) {
        Point c = mu;
        for (auto& v : c.coords) v += jitter(rng);
        CHECK(spread(c) >= best);
    }
}

TEST_CASE("cluster sizes") {
    const auto d = Dataset::from_points({Point{0}, Point{1}, Point{5}});
    const auto g = Clustering::from_assignment(d, {1, 1, 0}, 2);
    CHECK(g.cluster_sizes() == std::vector<std::size_t>{1, 2});
    CHECK(g.centroids[1] == Point{0.5});
}
