#include "wellsep/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "wellsep/error.hpp"

namespace wellsep {

namespace fs = std::filesystem;

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_number(std::string_view text) {
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw IoError("not a number: '" + std::string(text) + "'");
    }
    return v;
}

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

long long parse_integer(std::string_view text) {
    long long v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw IoError("not an integer: '" + std::string(text) + "'");
    }
    return v;
}

}  // namespace

void write_text(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
        if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw IoError("write to " + path.string() + " failed");
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json read_json(const fs::path& path) {
    try {
        return Json::parse(read_text(path));
    } catch (const Json::exception& e) {
        throw IoError("malformed JSON in " + path.string() + ": " + e.what());
    }
}

void write_json(const fs::path& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

void write_dataset_csv(const fs::path& path, const LabeledDataset& ld) {
    if (ld.dataset.dim() != 2) throw UsageError("dataset CSV holds two-dimensional points only");
    if (ld.labels.size() != ld.dataset.size()) throw UsageError("label count differs from point count");
    std::string text(kDatasetCsvHeader);
    text += '\n';
    for (std::size_t i = 0; i < ld.dataset.size(); ++i) {
        const auto p = ld.dataset[i];
        text += std::to_string(i);
        text += ',';
        text += format_number(p[0]);
        text += ',';
        text += format_number(p[1]);
        text += ',';
        if (!ld.is_noise(i)) text += std::to_string(ld.labels[i]);
        text += ld.is_noise(i) ? ",1\n" : ",0\n";
    }
    write_text(path, text);
}

LabeledDataset read_dataset_csv(const fs::path& path) {
    std::istringstream in(read_text(path));
    std::string line;
    if (!std::getline(in, line)) throw IoError(path.string() + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kDatasetCsvHeader) {
        throw IoError(path.string() + ": expected header '" + std::string(kDatasetCsvHeader) + "'");
    }
    std::vector<double> flat;
    std::vector<int> labels;
    int max_label = -1;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split(line, ',');
        const std::string where = path.string() + " row " + std::to_string(row + 1);
        if (fields.size() != 5) throw IoError(where + ": expected 5 fields");
        if (parse_integer(fields[0]) != static_cast<long long>(row)) {
            throw IoError(where + ": point_id must equal the row index");
        }
        flat.push_back(parse_number(fields[1]));
        flat.push_back(parse_number(fields[2]));
        const auto noise = parse_integer(fields[4]);
        if (noise != 0 && noise != 1) throw IoError(where + ": is_noise must be 0 or 1");
        if (noise == 1) {
            if (!fields[3].empty()) throw IoError(where + ": noise point with a cluster label");
            labels.push_back(kNoiseLabel);
        } else {
            if (fields[3].empty()) throw IoError(where + ": regular point without a cluster label");
            const auto label = parse_integer(fields[3]);
            if (label < 0 || label > 1'000'000'000) throw IoError(where + ": bad cluster label");
            labels.push_back(static_cast<int>(label));
            max_label = std::max(max_label, static_cast<int>(label));
        }
        ++row;
    }
    if (flat.empty()) throw IoError(path.string() + ": no points");
    try {
        return LabeledDataset{Dataset(2, std::move(flat)), std::move(labels),
                              static_cast<std::size_t>(max_label + 1), {}, std::nullopt};
    } catch (const UsageError& e) {
        throw IoError(path.string() + ": " + e.what());
    }
}

fs::path sidecar_path(const fs::path& csv_path) {
    auto p = csv_path;
    p.replace_extension(".json");
    return p;
}

void save_labeled_dataset(const fs::path& csv_path, const LabeledDataset& ld) {
    write_dataset_csv(csv_path, ld);
    Json meta;
    meta["k"] = ld.k;
    meta["intended_centers"] = ld.intended_centers;
    meta["config"] = ld.config ? Json(*ld.config) : Json(nullptr);
    write_json(sidecar_path(csv_path), meta);
}

LabeledDataset load_labeled_dataset(const fs::path& csv_path) {
    auto ld = read_dataset_csv(csv_path);
    const auto meta_path = sidecar_path(csv_path);
    if (!fs::exists(meta_path)) return ld;
    const auto meta = read_json(meta_path);
    try {
        const auto k = meta.at("k").get<std::size_t>();
        if (k < ld.k) throw IoError(meta_path.string() + ": k smaller than the largest label");
        ld.k = k;
        ld.intended_centers = meta.at("intended_centers").get<std::vector<Point>>();
        if (!meta.at("config").is_null()) ld.config = meta.at("config").get<GenConfig>();
    } catch (const Json::exception& e) {
        throw IoError(meta_path.string() + ": " + e.what());
    }
    return ld;
}

void to_json(Json& j, const Point& p) { j = p.coords; }
void from_json(const Json& j, Point& p) { p.coords = j.get<std::vector<double>>(); }

void to_json(Json& j, const GenConfig& c) {
    j = Json{{"grid_rows", c.grid_rows},
             {"grid_cols", c.grid_cols},
             {"cluster_size", c.cluster_size},
             {"radius", c.radius},
             {"noise_pct", c.noise_pct},
             {"displacement_max", c.displacement_max},
             {"rng_seed", c.rng_seed}};
}

void from_json(const Json& j, GenConfig& c) {
    c.grid_rows = j.at("grid_rows").get<std::size_t>();
    c.grid_cols = j.at("grid_cols").get<std::size_t>();
    c.cluster_size = j.at("cluster_size").get<std::size_t>();
    c.radius = j.at("radius").get<double>();
    c.noise_pct = j.at("noise_pct").get<double>();
    c.displacement_max = j.at("displacement_max").get<double>();
    c.rng_seed = j.value("rng_seed", std::uint64_t{0});
}

void to_json(Json& j, const SeparationReport& r) {
    j = Json{{"per_cluster_radius", r.per_cluster_radius},
             {"min_ball_gap", r.min_ball_gap},
             {"threshold", r.threshold},
             {"satisfied", r.satisfied}};
    if (r.nominal) {
        j["nominal"] = Json{{"radius", r.nominal->radius},
                            {"min_ball_gap", r.nominal->min_ball_gap},
                            {"threshold", r.nominal->threshold},
                            {"points_enclosed", r.nominal->points_enclosed},
                            {"satisfied", r.nominal->satisfied}};
    } else {
        j["nominal"] = nullptr;
    }
}

void to_json(Json& j, const SeedSet& s) {
    j = Json{{"method", to_string(s.method)},
             {"centroids", s.centroids},
             {"point_indices", s.point_indices},
             {"rng_seed", s.rng_seed ? Json(*s.rng_seed) : Json(nullptr)}};
}

void to_json(Json& j, const Clustering& c) {
    j = Json{{"k", c.k}, {"assignment", c.assignment}, {"centroids", c.centroids}};
}

namespace lloyd {

void to_json(Json& j, const LloydResult& r) {
    j = Json{{"cost", r.cost},
             {"iterations", r.iterations},
             {"converged", r.converged},
             {"cost_trace", r.cost_trace},
             {"monotonicity_violations", r.monotonicity_violations},
             {"empty_cluster_repairs", r.empty_cluster_repairs},
             {"clustering", r.clustering}};
}

}  // namespace lloyd

void to_json(Json& j, const SummaryRow& r) { j = Json{{"mean", r.mean}, {"sd", r.sd}}; }

void from_json(const Json& j, SummaryRow& r) {
    r.mean = j.at("mean").get<double>();
    r.sd = j.at("sd").get<double>();
}

}  // namespace wellsep
