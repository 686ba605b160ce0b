#include "wellsep/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "wellsep/error.hpp"
#include "wellsep/figure.hpp"
#include "wellsep/separation.hpp"

namespace wellsep {

namespace fs = std::filesystem;

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::string method_label(const SeedingMethod& m) {
    std::string label(to_string(m.tag));
    if (m.tag == SeedingTag::KMeansPPBoosted) {
        if (m.boost_width != kDefaultBoostWidth) label += "-b" + std::to_string(m.boost_width);
        if (m.criterion == BoostCriterion::Distance) label += "-dist";
    }
    return label;
}

std::string method_display(const SeedingMethod& m) {
    std::string label(display_name(m.tag));
    if (m.tag == SeedingTag::KMeansPPBoosted) {
        if (m.boost_width != kDefaultBoostWidth) label += " (b=" + std::to_string(m.boost_width) + ")";
        if (m.criterion == BoostCriterion::Distance) label += " [dist]";
    }
    return label;
}

// Results of one run index before aggregation.
struct RunOutcome {
    RunRecord record;
    std::shared_ptr<const LabeledDataset> dataset;
    std::vector<Clustering> clusterings;
};

RunOutcome execute_run(const ExperimentSpec& spec, std::size_t run_index) {
    using Clock = std::chrono::steady_clock;
    RunOutcome out;
    auto gen = spec.gen;
    gen.rng_seed = derive(spec.master_seed, run_index, kDatasetStream);
    auto ld = std::make_shared<const LabeledDataset>(generate(gen));
    const auto sep = verify(*ld);

    out.record.run_index = run_index;
    out.record.dataset_seed = gen.rng_seed;
    out.record.points = ld->dataset.size();
    out.record.noise_points = ld->noise_count();
    out.record.separation_satisfied = sep.nominal && sep.nominal->satisfied;
    out.record.nominal_min_gap = sep.nominal ? sep.nominal->min_ball_gap : sep.min_ball_gap;

    const std::size_t k = gen.k();
    std::vector<double> costs;
    for (const auto& method : spec.algorithms) {
        const auto start = Clock::now();
        const auto seeds =
            make_seeds(method, *ld, k, derive(spec.master_seed, run_index, algorithm_stream(method.tag)));
        auto result = lloyd::run(ld->dataset, seeds, spec.lloyd);
        const double seconds = std::chrono::duration<double>(Clock::now() - start).count();

        const auto sizes = result.clustering.cluster_sizes();
        if (std::count(sizes.begin(), sizes.end(), std::size_t{0}) != 0) {
            throw InvariantError(method_label(method) + " run " + std::to_string(run_index) +
                                 ": Lloyd result has an empty cluster");
        }
        if (spec.strict && result.monotonicity_violations != 0) {
            throw InvariantError(method_label(method) + " run " + std::to_string(run_index) +
                                 ": Lloyd cost increased between iterations");
        }

        AlgorithmRun run;
        run.metrics.tot_within_ss = tot_within_ss(ld->dataset, result.clustering);
        run.metrics.wrong_clusters_pct = wrong_clusters_pct(*ld, result.clustering);
        run.iterations = result.iterations;
        run.converged = result.converged;
        run.monotonicity_violations = result.monotonicity_violations;
        run.empty_cluster_repairs = result.empty_cluster_repairs;
        run.seconds = seconds;
        costs.push_back(run.metrics.tot_within_ss);
        out.record.algorithms.push_back(run);
        out.clusterings.push_back(std::move(result.clustering));
    }

    const auto rel = rel_tot_within_ss(costs);
    if (std::none_of(rel.begin(), rel.end(), [](double r) { return r == 1.0; })) {
        throw InvariantError("run " + std::to_string(run_index) + ": no relative cost equals 1");
    }
    for (std::size_t a = 0; a < rel.size(); ++a) out.record.algorithms[a].metrics.rel_tot_within_ss = rel[a];
    out.dataset = std::move(ld);
    return out;
}

std::vector<RunOutcome> execute_all(const ExperimentSpec& spec) {
    std::vector<RunOutcome> outcomes(spec.runs);
    unsigned threads = spec.threads != 0 ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, spec.runs));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= spec.runs) return;
            try {
                outcomes[i] = execute_run(spec, i);
            } catch (...) {
                const std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = spec.runs;
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    return outcomes;
}

Json run_to_json(const AlgorithmRun& r, const SeedingMethod& m) {
    return Json{{"algorithm", method_label(m)},
                {"tot_within_ss", r.metrics.tot_within_ss},
                {"wrong_clusters_pct", r.metrics.wrong_clusters_pct},
                {"rel_tot_within_ss", r.metrics.rel_tot_within_ss},
                {"iterations", r.iterations},
                {"converged", r.converged},
                {"monotonicity_violations", r.monotonicity_violations},
                {"empty_cluster_repairs", r.empty_cluster_repairs}};
}

SeedingMethod method_from_json(const Json& j) {
    SeedingMethod m;
    const auto tag = parse_seeding_tag(j.at("tag").get<std::string>());
    if (!tag) throw IoError("unknown algorithm tag " + j.at("tag").dump());
    m.tag = *tag;
    m.boost_width = j.at("boost_width").get<std::size_t>();
    m.criterion = j.at("boost_criterion").get<std::string>() == "distance" ? BoostCriterion::Distance
                                                                           : BoostCriterion::SquaredDistance;
    return m;
}

std::string fixed2(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

std::uint64_t derive(std::uint64_t master_seed, std::uint64_t run_index, std::uint64_t stream) {
    return splitmix64(splitmix64(splitmix64(master_seed) + run_index) + stream);
}

std::uint64_t algorithm_stream(SeedingTag tag) { return 1 + static_cast<std::uint64_t>(tag); }

void ExperimentSpec::validate() const {
    gen.validate();
    if (runs == 0) throw UsageError("runs must be >= 1");
    if (algorithms.empty()) throw UsageError("no algorithms selected");
    if (lloyd.max_iters == 0) throw UsageError("max_iters must be >= 1");
    for (const auto& m : algorithms) {
        if (m.tag == SeedingTag::KMeansPPBoosted && m.boost_width == 0) {
            throw UsageError("boost width must be >= 1");
        }
    }
}

std::string ExperimentSpec::resolved_name() const { return name.empty() ? config_name(gen) : name; }

std::string config_name(const GenConfig& gen) {
    return std::to_string(gen.grid_rows) + "x" + std::to_string(gen.grid_cols) + "-n" +
           std::to_string(gen.cluster_size) + "-noise" + format_number(gen.noise_pct) + "-disp" +
           format_number(gen.displacement_max);
}

std::vector<SeedingMethod> all_algorithms(std::size_t boost_width) {
    std::vector<SeedingMethod> out;
    for (const auto tag : kAllSeedingTags) {
        SeedingMethod m;
        m.tag = tag;
        m.boost_width = boost_width;
        out.push_back(m);
    }
    return out;
}

std::size_t ExperimentReport::monotonicity_violations() const {
    std::size_t n = 0;
    for (const auto& r : run_records) {
        for (const auto& a : r.algorithms) n += a.monotonicity_violations;
    }
    return n;
}

std::size_t ExperimentReport::nonconverged_runs() const {
    std::size_t n = 0;
    for (const auto& r : run_records) {
        for (const auto& a : r.algorithms) n += !a.converged;
    }
    return n;
}

std::size_t ExperimentReport::separation_failures() const {
    return static_cast<std::size_t>(std::count_if(run_records.begin(), run_records.end(),
                                                  [](const RunRecord& r) { return !r.separation_satisfied; }));
}

ExperimentReport run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    auto outcomes = execute_all(spec);

    ExperimentReport report;
    report.name = spec.resolved_name();
    report.gen = spec.gen;
    report.runs = spec.runs;
    report.master_seed = spec.master_seed;
    report.max_iters = spec.lloyd.max_iters;

    for (std::size_t a = 0; a < spec.algorithms.size(); ++a) {
        std::vector<double> twss, wcp, rel;
        AlgorithmSummary summary;
        summary.method = spec.algorithms[a];
        summary.worst_wrong_clusters_pct = -1.0;
        for (const auto& o : outcomes) {
            const auto& m = o.record.algorithms[a].metrics;
            twss.push_back(m.tot_within_ss);
            wcp.push_back(m.wrong_clusters_pct);
            rel.push_back(m.rel_tot_within_ss);
            if (m.wrong_clusters_pct > summary.worst_wrong_clusters_pct) {
                summary.worst_wrong_clusters_pct = m.wrong_clusters_pct;
                summary.worst_run = o.record.run_index;
            }
        }
        summary.tot_within_ss = summarize(twss);
        summary.wrong_clusters_pct = summarize(wcp);
        summary.rel_tot_within_ss = summarize(rel);
        summary.worst_clustering = outcomes[summary.worst_run].clusterings[a];
        summary.worst_dataset = outcomes[summary.worst_run].dataset;
        report.algorithms.push_back(std::move(summary));
    }
    for (auto& o : outcomes) report.run_records.push_back(std::move(o.record));

    if (!spec.output_dir.empty()) {
        const auto dir = spec.output_dir / report.name;
        write_artifacts(report, dir);
        if (spec.save_datasets) {
            for (std::size_t i = 0; i < outcomes.size(); ++i) {
                save_labeled_dataset(dir / "datasets" / ("dataset_" + std::to_string(i) + ".csv"),
                                     *outcomes[i].dataset);
            }
        }
    }
    return report;
}

Json report_to_json(const ExperimentReport& report) {
    Json algorithms = Json::array();
    for (const auto& s : report.algorithms) {
        algorithms.push_back(Json{
            {"algorithm", method_label(s.method)},
            {"tag", to_string(s.method.tag)},
            {"boost_width", s.method.boost_width},
            {"boost_criterion", s.method.criterion == BoostCriterion::Distance ? "distance" : "squared"},
            {"tot_within_ss", s.tot_within_ss},
            {"wrong_clusters_pct", s.wrong_clusters_pct},
            {"rel_tot_within_ss", s.rel_tot_within_ss},
            {"worst_case",
             Json{{"run_index", s.worst_run},
                  {"wrong_clusters_pct", s.worst_wrong_clusters_pct},
                  {"clustering", s.worst_clustering}}},
        });
    }
    Json runs = Json::array();
    for (const auto& r : report.run_records) {
        Json results = Json::array();
        for (std::size_t a = 0; a < r.algorithms.size(); ++a) {
            results.push_back(run_to_json(r.algorithms[a], report.algorithms[a].method));
        }
        runs.push_back(Json{{"run_index", r.run_index},
                            {"dataset_seed", r.dataset_seed},
                            {"points", r.points},
                            {"noise_points", r.noise_points},
                            {"separation_satisfied", r.separation_satisfied},
                            {"nominal_min_gap", r.nominal_min_gap},
                            {"results", std::move(results)}});
    }
    return Json{{"name", report.name},
                {"gen", report.gen},
                {"runs", report.runs},
                {"master_seed", report.master_seed},
                {"max_iters", report.max_iters},
                {"algorithms", std::move(algorithms)},
                {"run_records", std::move(runs)},
                {"totals",
                 Json{{"monotonicity_violations", report.monotonicity_violations()},
                      {"nonconverged_runs", report.nonconverged_runs()},
                      {"separation_failures", report.separation_failures()}}}};
}

ExperimentReport report_from_json(const Json& j) {
    try {
        ExperimentReport report;
        report.name = j.at("name").get<std::string>();
        report.gen = j.at("gen").get<GenConfig>();
        report.runs = j.at("runs").get<std::size_t>();
        report.master_seed = j.at("master_seed").get<std::uint64_t>();
        report.max_iters = j.at("max_iters").get<std::size_t>();
        for (const auto& a : j.at("algorithms")) {
            AlgorithmSummary s;
            s.method = method_from_json(a);
            s.tot_within_ss = a.at("tot_within_ss").get<SummaryRow>();
            s.wrong_clusters_pct = a.at("wrong_clusters_pct").get<SummaryRow>();
            s.rel_tot_within_ss = a.at("rel_tot_within_ss").get<SummaryRow>();
            const auto& w = a.at("worst_case");
            s.worst_run = w.at("run_index").get<std::size_t>();
            s.worst_wrong_clusters_pct = w.at("wrong_clusters_pct").get<double>();
            const auto& c = w.at("clustering");
            s.worst_clustering.k = c.at("k").get<std::size_t>();
            s.worst_clustering.assignment = c.at("assignment").get<std::vector<std::size_t>>();
            s.worst_clustering.centroids = c.at("centroids").get<std::vector<Point>>();
            report.algorithms.push_back(std::move(s));
        }
        for (const auto& r : j.at("run_records")) {
            RunRecord rec;
            rec.run_index = r.at("run_index").get<std::size_t>();
            rec.dataset_seed = r.at("dataset_seed").get<std::uint64_t>();
            rec.points = r.at("points").get<std::size_t>();
            rec.noise_points = r.at("noise_points").get<std::size_t>();
            rec.separation_satisfied = r.at("separation_satisfied").get<bool>();
            rec.nominal_min_gap = r.at("nominal_min_gap").get<double>();
            for (const auto& x : r.at("results")) {
                AlgorithmRun run;
                run.metrics.tot_within_ss = x.at("tot_within_ss").get<double>();
                run.metrics.wrong_clusters_pct = x.at("wrong_clusters_pct").get<double>();
                run.metrics.rel_tot_within_ss =
                    x.at("rel_tot_within_ss").is_null() ? 0.0 : x.at("rel_tot_within_ss").get<double>();
                run.iterations = x.at("iterations").get<std::size_t>();
                run.converged = x.at("converged").get<bool>();
                run.monotonicity_violations = x.at("monotonicity_violations").get<std::size_t>();
                run.empty_cluster_repairs = x.at("empty_cluster_repairs").get<std::size_t>();
                rec.algorithms.push_back(run);
            }
            report.run_records.push_back(std::move(rec));
        }
        return report;
    } catch (const Json::exception& e) {
        throw IoError(std::string("malformed report: ") + e.what());
    }
}

TableOutput emit_table(const ExperimentReport& report) {
    TableOutput out;
    out.csv = std::string(kTableCsvHeader) + "\n";
    for (const auto& s : report.algorithms) {
        out.csv += method_label(s.method);
        for (const auto& row : {s.tot_within_ss, s.wrong_clusters_pct, s.rel_tot_within_ss}) {
            out.csv += "," + format_number(row.mean) + "," + format_number(row.sd);
        }
        out.csv += "\n";
    }

    std::ostringstream text;
    char line[256];
    text << report.name << " (" << report.runs << " runs, k=" << report.gen.k() << ")\n";
    std::snprintf(line, sizeof line, "%-16s %14s %10s %10s %8s %10s %8s\n", "algorithm", "totWithinSS",
                  "SD", "wrong%", "SD", "RelTWSS", "SD");
    text << line;
    for (const auto& s : report.algorithms) {
        std::snprintf(line, sizeof line, "%-16s %14s %10s %10s %8s %10s %8s\n", method_display(s.method).c_str(),
                      fixed2(s.tot_within_ss.mean).c_str(), fixed2(s.tot_within_ss.sd).c_str(),
                      fixed2(s.wrong_clusters_pct.mean).c_str(), fixed2(s.wrong_clusters_pct.sd).c_str(),
                      fixed2(s.rel_tot_within_ss.mean).c_str(), fixed2(s.rel_tot_within_ss.sd).c_str());
        text << line;
    }
    out.text = text.str();
    return out;
}

std::vector<TableRow> parse_table_csv(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line) || line != kTableCsvHeader) throw IoError("table CSV: bad header");
    std::vector<TableRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) f.push_back(cell);
        if (f.size() != 7) throw IoError("table CSV: expected 7 columns");
        TableRow row;
        row.algorithm = f[0];
        row.twss = {parse_number(f[1]), parse_number(f[2])};
        row.wcp = {parse_number(f[3]), parse_number(f[4])};
        row.rel = {parse_number(f[5]), parse_number(f[6])};
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_artifacts(const ExperimentReport& report, const fs::path& dir) {
    write_json(dir / "report.json", report_to_json(report));
    const auto table = emit_table(report);
    write_text(dir / "table.csv", table.csv);
    write_text(dir / "table.txt", table.text);

    Json timings = Json::object();
    for (std::size_t a = 0; a < report.algorithms.size(); ++a) {
        std::vector<double> secs;
        for (const auto& r : report.run_records) secs.push_back(r.algorithms[a].seconds);
        timings[method_label(report.algorithms[a].method)] = summarize(secs);
    }
    write_json(dir / "timings.json", timings);

    for (const auto& s : report.algorithms) {
        if (!s.worst_dataset) continue;
        const auto label = method_label(s.method);
        save_labeled_dataset(dir / ("worst_" + label + ".csv"), *s.worst_dataset);
        render_worst_case(*s.worst_dataset, s.worst_clustering, dir / ("worst_" + label + ".svg"),
                          method_display(s.method) + "  " + report.name + "  run " +
                              std::to_string(s.worst_run) + "  wrong " +
                              fixed2(s.worst_wrong_clusters_pct) + "%");
    }
}

std::size_t rerender(const fs::path& dir) {
    const auto report = report_from_json(read_json(dir / "report.json"));
    const auto table = emit_table(report);
    write_text(dir / "table.csv", table.csv);
    write_text(dir / "table.txt", table.text);
    std::size_t figures = 0;
    for (const auto& s : report.algorithms) {
        const auto label = method_label(s.method);
        const auto csv = dir / ("worst_" + label + ".csv");
        if (!fs::exists(csv)) continue;
        const auto ld = load_labeled_dataset(csv);
        render_worst_case(ld, s.worst_clustering, dir / ("worst_" + label + ".svg"),
                          method_display(s.method) + "  " + report.name + "  run " +
                              std::to_string(s.worst_run) + "  wrong " +
                              fixed2(s.worst_wrong_clusters_pct) + "%");
        ++figures;
    }
    return figures;
}

std::vector<ExperimentSpec> specs_from_json(const Json& j, const fs::path& output_dir) {
    try {
        ExperimentSpec base;
        base.output_dir = output_dir;
        base.runs = j.value("runs", std::size_t{30});
        base.master_seed = j.value("master_seed", std::uint64_t{0});
        base.lloyd.max_iters = j.value("max_iters", std::size_t{100});
        base.save_datasets = j.value("save_datasets", false);
        base.threads = j.value("threads", 0u);
        const auto b = j.value("boost_width", kDefaultBoostWidth);
        const auto criterion = j.value("boost_criterion", std::string("squared"));
        if (criterion != "squared" && criterion != "distance") {
            throw UsageError("boost_criterion must be 'squared' or 'distance'");
        }
        if (j.contains("algorithms")) {
            for (const auto& a : j.at("algorithms")) {
                const auto tag = parse_seeding_tag(a.get<std::string>());
                if (!tag) throw UsageError("unknown algorithm " + a.dump());
                base.algorithms.push_back(SeedingMethod{*tag, b, BoostCriterion::SquaredDistance});
            }
        } else {
            base.algorithms = all_algorithms(b);
        }
        if (criterion == "distance") {
            for (auto& m : base.algorithms) m.criterion = BoostCriterion::Distance;
        }

        auto read_gen = [](const Json& g) {
            GenConfig c;
            c.grid_rows = g.value("grid_rows", c.grid_rows);
            c.grid_cols = g.value("grid_cols", c.grid_cols);
            c.cluster_size = g.value("cluster_size", c.cluster_size);
            c.radius = g.value("radius", c.radius);
            c.noise_pct = g.value("noise_pct", c.noise_pct);
            c.displacement_max = g.value("displacement_max", c.displacement_max);
            return c;
        };
        std::vector<GenConfig> gens;
        if (j.contains("preset")) {
            const auto preset = j.at("preset").get<std::string>();
            if (preset == "standard") {
                gens = standard_sweep();
            } else if (preset == "grid") {
                gens = grid_sweep();
            } else {
                throw UsageError("unknown preset '" + preset + "'");
            }
        }
        if (j.contains("sweep")) {
            for (const auto& g : j.at("sweep")) gens.push_back(read_gen(g));
        }
        if (j.contains("gen")) gens.push_back(read_gen(j.at("gen")));
        if (gens.empty()) throw UsageError("spec needs 'gen', 'sweep' or 'preset'");

        std::vector<ExperimentSpec> specs;
        for (const auto& g : gens) {
            auto spec = base;
            spec.gen = g;
            if (gens.size() == 1) spec.name = j.value("name", std::string());
            spec.validate();
            specs.push_back(std::move(spec));
        }
        return specs;
    } catch (const Json::exception& e) {
        throw UsageError(std::string("malformed bench spec: ") + e.what());
    }
}

std::vector<GenConfig> standard_sweep() {
    std::vector<GenConfig> out;
    auto make = [](std::size_t side, std::size_t n, double noise, double disp) {
        GenConfig g;
        g.grid_rows = g.grid_cols = side;
        g.cluster_size = n;
        g.noise_pct = noise;
        g.displacement_max = disp;
        return g;
    };
    for (std::size_t side = 5; side <= 10; ++side) out.push_back(make(side, 40, 0, 0));
    for (const double noise : {10.0, 20.0, 30.0, 40.0, 50.0}) out.push_back(make(8, 40, noise, 0));
    for (const double disp : {0.5, 1.0, 2.0, 4.0}) out.push_back(make(8, 40, 30, disp));
    for (const std::size_t n : {12, 24, 48, 96}) out.push_back(make(8, n, 30, 1.0));
    return out;
}

std::vector<GenConfig> grid_sweep() {
    std::vector<GenConfig> out;
    for (std::size_t side = 5; side <= 10; ++side) {
        for (const double noise : {0.0, 10.0, 20.0, 30.0, 40.0, 50.0}) {
            for (const double disp : {0.0, 0.5, 1.0, 2.0, 4.0}) {
                GenConfig g;
                g.grid_rows = g.grid_cols = side;
                g.cluster_size = 40;
                g.noise_pct = noise;
                g.displacement_max = disp;
                out.push_back(g);
            }
        }
    }
    return out;
}

}  // namespace wellsep
