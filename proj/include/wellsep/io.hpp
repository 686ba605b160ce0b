#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "wellsep/core.hpp"
#include "wellsep/datagen.hpp"
#include "wellsep/evaluation.hpp"
#include "wellsep/lloyd.hpp"
#include "wellsep/seeding.hpp"
#include "wellsep/separation.hpp"

namespace wellsep {

using Json = nlohmann::json;

/// Shortest decimal text that parses back to the same double.
std::string format_number(double v);
double parse_number(std::string_view text);

inline constexpr std::string_view kDatasetCsvHeader = "point_id,x,y,intended_cluster,is_noise";

/// Dataset CSV: one row per point, intended_cluster empty for noise.
void write_dataset_csv(const std::filesystem::path& path, const LabeledDataset& ld);
/// k is one past the largest label; centers and config stay empty.
LabeledDataset read_dataset_csv(const std::filesystem::path& path);

/// data.csv -> data.json
std::filesystem::path sidecar_path(const std::filesystem::path& csv_path);

/// Writes the CSV and its JSON sidecar (config + intended centers).
void save_labeled_dataset(const std::filesystem::path& csv_path, const LabeledDataset& ld);
/// Reads the CSV and, when present, its sidecar.
LabeledDataset load_labeled_dataset(const std::filesystem::path& csv_path);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);
Json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const Json& j);

void to_json(Json& j, const Point& p);
void from_json(const Json& j, Point& p);
void to_json(Json& j, const GenConfig& c);
void from_json(const Json& j, GenConfig& c);
void to_json(Json& j, const SeparationReport& r);
void to_json(Json& j, const SeedSet& s);
void to_json(Json& j, const Clustering& c);
namespace lloyd {
void to_json(Json& j, const LloydResult& r);
}
void to_json(Json& j, const SummaryRow& r);
void from_json(const Json& j, SummaryRow& r);

}  // namespace wellsep
