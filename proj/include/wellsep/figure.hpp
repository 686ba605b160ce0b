#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "wellsep/core.hpp"
#include "wellsep/datagen.hpp"

namespace wellsep {

/// Marks one found cluster that reproduces no intended cluster.
struct ErrorCircle {
    std::size_t found_cluster = 0;
    Point center;  // gravity center of the found cluster
    double radius = 0.0;
};

/// One circle per erroneous found cluster, centered at its gravity center and
/// wide enough to enclose its regular points (all points if it has none).
std::vector<ErrorCircle> error_circles(const LabeledDataset& ld, const Clustering& clustering);

/// Standalone SVG scatter plot: found clusters by color and marker shape,
/// erroneous clusters circled in black.
std::string render_svg(const LabeledDataset& ld, const Clustering& clustering,
                       const std::string& title);

/// Writes render_svg to out_path and returns the circles drawn.
std::vector<ErrorCircle> render_worst_case(const LabeledDataset& ld, const Clustering& clustering,
                                           const std::filesystem::path& out_path,
                                           const std::string& title = {});

}  // namespace wellsep
