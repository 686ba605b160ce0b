#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <numeric>
#include <set>

#include "wellsep/datagen.hpp"
#include "wellsep/error.hpp"
#include "wellsep/evaluation.hpp"

using namespace wellsep;

namespace {

// Three intended clusters of three points plus two noise points.
LabeledDataset toy() {
    std::vector<Point> pts;
    std::vector<int> labels;
    for (int j = 0; j < 3; ++j) {
        for (int i = 0; i < 3; ++i) {
            pts.push_back(Point{10.0 * j + i, 0.0});
            labels.push_back(j);
        }
    }
    pts.push_back(Point{5.0, 5.0});
    pts.push_back(Point{15.0, 5.0});
    labels.push_back(kNoiseLabel);
    labels.push_back(kNoiseLabel);
    return LabeledDataset{Dataset::from_points(pts), labels, 3, {}, std::nullopt};
}

Clustering clustering_of(const LabeledDataset& ld, std::vector<std::size_t> a, std::size_t k) {
    return Clustering::from_assignment(ld.dataset, std::move(a), k);
}

// Oracle: compare sets of regular-point sets.
double wrong_pct_oracle(const LabeledDataset& ld, const std::vector<std::size_t>& a, std::size_t k) {
    std::vector<std::set<std::size_t>> intended(ld.k), found(k);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (ld.is_noise(i)) continue;
        intended[std::size_t(ld.labels[i])].insert(i);
        found[a[i]].insert(i);
    }
    int missed = 0;
    for (const auto& s : intended) missed += std::find(found.begin(), found.end(), s) == found.end();
    return 100.0 * missed / double(ld.k);
}

}  // namespace

TEST_CASE("wrong clusters percentage") {
    const auto ld = toy();
    SUBCASE("exact recovery with arbitrary noise placement") {
        CHECK(wrong_clusters_pct(ld, clustering_of(ld, {0, 0, 0, 1, 1, 1, 2, 2, 2, 2, 0}, 3)) == 0.0);
        CHECK(wrong_clusters_pct(ld, clustering_of(ld, {2, 2, 2, 0, 0, 0, 1, 1, 1, 1, 1}, 3)) == 0.0);
    }
    SUBCASE("a split costs one cluster") {
        const std::vector<std::size_t> a{0, 0, 3, 1, 1, 1, 2, 2, 2, 0, 0};
        CHECK(wrong_clusters_pct(ld, clustering_of(ld, a, 4)) == doctest::Approx(100.0 / 3.0));
        const auto err = erroneous_found_clusters(ld, clustering_of(ld, a, 4));
        CHECK(err == std::vector<bool>{true, false, false, true});
    }
    SUBCASE("a merge costs two clusters") {
        const std::vector<std::size_t> a{0, 0, 0, 0, 0, 0, 1, 1, 1, 2, 2};
        CHECK(wrong_clusters_pct(ld, clustering_of(ld, a, 3)) == doctest::Approx(200.0 / 3.0));
        CHECK(discovered_intended_clusters(ld, clustering_of(ld, a, 3)) == std::vector<bool>{false, false, true});
    }
    SUBCASE("noise-only found clusters are erroneous but harmless") {
        const std::vector<std::size_t> a{0, 0, 0, 1, 1, 1, 2, 2, 2, 3, 3};
        CHECK(wrong_clusters_pct(ld, clustering_of(ld, a, 4)) == 0.0);
        CHECK(erroneous_found_clusters(ld, clustering_of(ld, a, 4))[3]);
    }
    SUBCASE("uncovered dataset") {
        Clustering bad{{0, 0}, 1, {Point{0, 0}}};
        CHECK_THROWS_AS(wrong_clusters_pct(ld, bad), UsageError);
    }
}

TEST_CASE("wrong clusters percentage agrees with a set oracle and ignores relabeling") {
    const auto ld = toy();
    std::mt19937_64 rng(17);
    for (int t = 0; t < 300; ++t) {
        const std::size_t k = 2 + rng() % 4;
        std::vector<std::size_t> a(ld.dataset.size());
        // Start from the truth, then perturb a few entries.
        for (std::size_t i = 0; i < a.size(); ++i) a[i] = ld.is_noise(i) ? rng() % k : std::size_t(ld.labels[i]) % k;
        for (int m = int(rng() % 3); m > 0; --m) a[rng() % a.size()] = rng() % k;
        std::vector<std::size_t> sizes(k, 0);
        for (const auto v : a) ++sizes[v];
        if (std::count(sizes.begin(), sizes.end(), 0u) != 0) continue;

        const double got = wrong_clusters_pct(ld, clustering_of(ld, a, k));
        CHECK(got == doctest::Approx(wrong_pct_oracle(ld, a, k)));

        std::vector<std::size_t> perm(k);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        auto relabeled = a;
        for (auto& v : relabeled) v = perm[v];
        CHECK(wrong_clusters_pct(ld, clustering_of(ld, relabeled, k)) == got);
    }
}

TEST_CASE("total within sum of squares counts noise") {
    const auto ld = toy();
    const auto with_noise = clustering_of(ld, {0, 0, 0, 1, 1, 1, 2, 2, 2, 2, 0}, 3);
    CHECK(tot_within_ss(ld.dataset, with_noise) == doctest::Approx(cost_centroid_form(ld.dataset, with_noise)));
    CHECK(tot_within_ss(ld.dataset, with_noise) > 6.0);
}

TEST_CASE("relative cost") {
    const std::vector<double> one{7.0};
    CHECK(rel_tot_within_ss(one) == std::vector<double>{1.0});
    const std::vector<double> three{10.0, 20.0, 40.0};
    CHECK(rel_tot_within_ss(three) == std::vector<double>{1.0, 2.0, 4.0});
    const std::vector<double> equal{3.0, 3.0};
    CHECK(rel_tot_within_ss(equal) == std::vector<double>{1.0, 1.0});
    const std::vector<double> zero{0.0, 0.0, 2.0};
    const auto z = rel_tot_within_ss(zero);
    CHECK(z[0] == 1.0);
    CHECK(std::isinf(z[2]));
    CHECK_THROWS_AS(rel_tot_within_ss(std::vector<double>{}), UsageError);
}

TEST_CASE("summaries") {
    const std::vector<double> zeros(30, 0.0);
    CHECK(summarize(zeros).mean == 0.0);
    CHECK(summarize(zeros).sd == 0.0);
    const std::vector<double> abc{1, 2, 3};
    CHECK(summarize(abc).mean == doctest::Approx(2.0));
    CHECK(summarize(abc).sd == doctest::Approx(1.0));
    std::vector<double> jitter;
    for (int i = 0; i < 30; ++i) jitter.push_back(0.1 + (i % 2 ? 1e-16 : -1e-16));
    const auto j = summarize(jitter);
    CHECK(j.sd >= 0.0);
    CHECK_FALSE(std::isnan(j.sd));
    const std::vector<double> single{4.0};
    CHECK(summarize(single).sd == 0.0);
    CHECK_THROWS_AS(summarize(std::vector<double>{}), UsageError);

    std::vector<double> values{3.5, -1.0, 8.25, 0.0, 2.0};
    const auto before = summarize(values);
    std::reverse(values.begin(), values.end());
    const auto after = summarize(values);
    CHECK(after.mean == doctest::Approx(before.mean));
    CHECK(after.sd == doctest::Approx(before.sd));
}
