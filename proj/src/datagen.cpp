#include "wellsep/datagen.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "wellsep/error.hpp"
#include "wellsep/separation.hpp"

namespace wellsep {

void GenConfig::validate() const {
    if (grid_rows == 0 || grid_cols == 0) throw UsageError("grid dimensions must be positive");
    if (cluster_size == 0) throw UsageError("cluster size must be positive");
    if (!(radius > 0.0) || !std::isfinite(radius)) throw UsageError("radius must be positive");
    if (!(noise_pct >= 0.0) || !std::isfinite(noise_pct)) {
        throw UsageError("noise percentage must be >= 0");
    }
    if (!(displacement_max >= 0.0) || !std::isfinite(displacement_max)) {
        throw UsageError("displacement must be >= 0");
    }
}

std::size_t LabeledDataset::noise_count() const {
    std::size_t n = 0;
    for (const int l : labels) n += (l == kNoiseLabel);
    return n;
}

std::vector<std::vector<std::size_t>> LabeledDataset::intended_members() const {
    std::vector<std::vector<std::size_t>> members(k);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] != kNoiseLabel) members[static_cast<std::size_t>(labels[i])].push_back(i);
    }
    return members;
}

void LabeledDataset::validate() const {
    if (labels.size() != dataset.size()) throw UsageError("label count differs from point count");
    if (k == 0) throw UsageError("labeled dataset needs k >= 1");
    for (const int l : labels) {
        if (l != kNoiseLabel && (l < 0 || static_cast<std::size_t>(l) >= k)) {
            throw UsageError("intended label " + std::to_string(l) + " out of range");
        }
    }
    if (!intended_centers.empty() && intended_centers.size() != k) {
        throw UsageError("intended center count differs from k");
    }
}

double grid_spacing(const GenConfig& config) {
    const std::size_t k = config.k();
    const double gap = k >= 2 ? min_gap_threshold(k, config.radius, 2) : 0.0;
    return 2.0 * config.radius * (1.0 + config.displacement_max) + gap;
}

Point polar_offset(const Point& center, double angle, double distance) {
    return Point{center[0] + distance * std::cos(angle), center[1] + distance * std::sin(angle)};
}

std::vector<Point> grid_centers(const GenConfig& config, Rng& rng) {
    config.validate();
    const double spacing = grid_spacing(config);
    const double shift = config.displacement_max * config.radius;
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> magnitude(0.0, shift);

    std::vector<Point> centers;
    centers.reserve(config.k());
    for (std::size_t r = 0; r < config.grid_rows; ++r) {
        for (std::size_t c = 0; c < config.grid_cols; ++c) {
            Point lattice{double(c) * spacing, double(r) * spacing};
            if (shift > 0.0) {
                const double a = angle(rng);
                lattice = polar_offset(lattice, a, magnitude(rng));
            }
            centers.push_back(std::move(lattice));
        }
    }
    return centers;
}

std::vector<Point> grid_centers(const GenConfig& config) {
    Rng rng(config.rng_seed);
    return grid_centers(config, rng);
}

Point sample_cluster_point(const Point& center, double radius, Rng& rng) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> distance(0.0, radius);
    const double a = angle(rng);
    return polar_offset(center, a, distance(rng));
}

double noise_distance(double radius, double gaussian) {
    return std::max(0.0, radius + gaussian);
}

Point sample_noise_point(const Point& center, double radius, Rng& rng) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::normal_distribution<double> gaussian(0.0, radius);
    const double a = angle(rng);
    return polar_offset(center, a, noise_distance(radius, gaussian(rng)));
}

std::size_t noise_point_count(double noise_pct, std::size_t regular_count) {
    return static_cast<std::size_t>(std::floor(noise_pct * double(regular_count) / 100.0 + 0.5));
}

LabeledDataset generate(const GenConfig& config) {
    config.validate();
    Rng rng(config.rng_seed);
    auto centers = grid_centers(config, rng);
    const std::size_t k = config.k();
    const std::size_t regular = k * config.cluster_size;
    const std::size_t noise = noise_point_count(config.noise_pct, regular);

    std::vector<double> flat;
    flat.reserve(2 * (regular + noise));
    std::vector<int> labels;
    labels.reserve(regular + noise);

    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < config.cluster_size; ++i) {
            const auto p = sample_cluster_point(centers[j], config.radius, rng);
            flat.insert(flat.end(), p.coords.begin(), p.coords.end());
            labels.push_back(static_cast<int>(j));
        }
    }
    std::uniform_int_distribution<std::size_t> origin(0, k - 1);
    for (std::size_t i = 0; i < noise; ++i) {
        const auto p = sample_noise_point(centers[origin(rng)], config.radius, rng);
        flat.insert(flat.end(), p.coords.begin(), p.coords.end());
        labels.push_back(kNoiseLabel);
    }

    return LabeledDataset{Dataset(2, std::move(flat)), std::move(labels), k, std::move(centers),
                          config};
}

}  // namespace wellsep
