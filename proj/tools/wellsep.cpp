// Command-line front end: generate datasets, cluster one file, run
// benchmark sweeps, and re-render stored results.
//
// Exit codes: 0 success, 2 usage error, 3 I/O error, 4 internal invariant breach.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wellsep/datagen.hpp"
#include "wellsep/error.hpp"
#include "wellsep/evaluation.hpp"
#include "wellsep/harness.hpp"
#include "wellsep/io.hpp"
#include "wellsep/lloyd.hpp"
#include "wellsep/seeding.hpp"
#include "wellsep/separation.hpp"

namespace fs = std::filesystem;
using namespace wellsep;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitInvariant = 4;

struct GenerateArgs {
    GenConfig gen;
    std::string out;
};

struct RunArgs {
    std::string data;
    std::string algo = "kmppb";
    std::size_t k = 0;
    std::size_t b = kDefaultBoostWidth;
    std::string criterion = "squared";
    std::uint64_t seed = 0;
    std::size_t max_iters = 100;
    std::string out;
};

struct BenchArgs {
    std::string spec;
    std::string preset;
    GenConfig gen;
    std::size_t runs = 30;
    std::uint64_t seed = 0;
    std::vector<std::string> algos;
    std::size_t b = kDefaultBoostWidth;
    std::size_t max_iters = 100;
    unsigned threads = 0;
    bool save_datasets = false;
    std::string out_dir;
};

void add_gen_options(CLI::App* cmd, GenConfig& gen) {
    cmd->add_option("--rows", gen.grid_rows, "Grid rows")->capture_default_str();
    cmd->add_option("--cols", gen.grid_cols, "Grid columns")->capture_default_str();
    cmd->add_option("--size", gen.cluster_size, "Points per cluster")->capture_default_str();
    cmd->add_option("--radius", gen.radius, "Cluster radius")->capture_default_str();
    cmd->add_option("--noise-pct", gen.noise_pct, "Noise points, percent of regular points")
        ->capture_default_str();
    cmd->add_option("--displacement", gen.displacement_max, "Maximal center displacement in radii")
        ->capture_default_str();
}

int cmd_generate(const GenerateArgs& args) {
    const auto ld = generate(args.gen);
    save_labeled_dataset(args.out, ld);
    const auto report = ld.k >= 2 ? std::optional(verify(ld)) : std::nullopt;
    std::cout << "wrote " << ld.dataset.size() << " points (" << ld.noise_count() << " noise, k=" << ld.k
              << ") to " << args.out << "\n";
    if (report && report->nominal) {
        std::cout << "nominal gap " << report->nominal->min_ball_gap << " >= threshold "
                  << report->nominal->threshold << ": " << (report->nominal->satisfied ? "yes" : "no")
                  << "\n";
    }
    return 0;
}

int cmd_run(const RunArgs& args) {
    const auto tag = parse_seeding_tag(args.algo);
    if (!tag) throw UsageError("unknown algorithm '" + args.algo + "'");
    if (args.criterion != "squared" && args.criterion != "distance") {
        throw UsageError("criterion must be 'squared' or 'distance'");
    }
    const auto ld = load_labeled_dataset(args.data);
    const std::size_t k = args.k != 0 ? args.k : ld.k;
    if (k == 0) throw UsageError("--k is required for unlabeled data");

    SeedingMethod method{*tag, args.b,
                         args.criterion == "distance" ? BoostCriterion::Distance
                                                      : BoostCriterion::SquaredDistance};
    const auto seeds = make_seeds(method, ld, k, args.seed);
    lloyd::LloydConfig cfg;
    cfg.max_iters = args.max_iters;
    const auto result = lloyd::run(ld.dataset, seeds, cfg);

    Json out{{"data", args.data},
             {"algorithm", to_string(*tag)},
             {"k", k},
             {"boost_width", args.b},
             {"seeds", seeds},
             {"result", result},
             {"tot_within_ss", tot_within_ss(ld.dataset, result.clustering)}};
    const bool labeled = ld.k == k && ld.k >= 1;
    out["wrong_clusters_pct"] = labeled ? Json(wrong_clusters_pct(ld, result.clustering)) : Json(nullptr);
    if (args.out.empty()) {
        std::cout << out.dump(2) << "\n";
    } else {
        write_json(args.out, out);
        std::cout << to_string(*tag) << ": cost " << result.cost << ", " << result.iterations
                  << " iterations" << (labeled ? ", wrong clusters " + format_number(out["wrong_clusters_pct"].get<double>()) + "%" : std::string())
                  << "\n";
    }
    return 0;
}

int cmd_bench(const BenchArgs& args) {
    std::vector<ExperimentSpec> specs;
    if (!args.spec.empty()) {
        specs = specs_from_json(read_json(args.spec), args.out_dir);
    } else {
        Json j{{"runs", args.runs},
               {"master_seed", args.seed},
               {"boost_width", args.b},
               {"max_iters", args.max_iters},
               {"threads", args.threads},
               {"save_datasets", args.save_datasets}};
        if (!args.algos.empty()) j["algorithms"] = args.algos;
        if (!args.preset.empty()) {
            j["preset"] = args.preset;
        } else {
            j["gen"] = Json(args.gen);
        }
        specs = specs_from_json(j, args.out_dir);
    }
    for (const auto& spec : specs) {
        const auto report = run_experiment(spec);
        std::cout << emit_table(report).text;
        if (report.nonconverged_runs() != 0) {
            std::cerr << "note: " << report.nonconverged_runs() << " Lloyd runs hit max_iters\n";
        }
        std::cout << "\n";
    }
    return 0;
}

int cmd_report(const std::string& in) {
    const fs::path root(in);
    if (!fs::is_directory(root)) throw IoError(in + " is not a directory");
    std::vector<fs::path> dirs;
    if (fs::exists(root / "report.json")) dirs.push_back(root);
    for (const auto& entry : fs::directory_iterator(root)) {
        if (entry.is_directory() && fs::exists(entry.path() / "report.json")) dirs.push_back(entry.path());
    }
    std::sort(dirs.begin(), dirs.end());
    if (dirs.empty()) throw IoError("no report.json under " + in);
    for (const auto& dir : dirs) {
        const auto figures = rerender(dir);
        std::cout << read_text(dir / "table.txt") << "(" << figures << " figures)\n\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-means seeding benchmark on well-separated synthetic clusters"};
    app.require_subcommand(1);

    GenerateArgs gen_args;
    auto* gen_cmd = app.add_subcommand("generate", "Generate a labeled grid dataset (CSV + JSON sidecar)");
    add_gen_options(gen_cmd, gen_args.gen);
    gen_cmd->add_option("--seed", gen_args.gen.rng_seed, "RNG seed")->capture_default_str();
    gen_cmd->add_option("--out", gen_args.out, "Output CSV path")->required();

    RunArgs run_args;
    auto* run_cmd = app.add_subcommand("run", "Seed and run Lloyd iteration on one dataset");
    run_cmd->add_option("--data", run_args.data, "Dataset CSV")->required();
    run_cmd->add_option("--algo", run_args.algo, "random|tc|kmpp|md|kmppb|global")
        ->check(CLI::IsMember({"random", "tc", "kmpp", "md", "kmppb", "global"}))
        ->capture_default_str();
    run_cmd->add_option("--k", run_args.k, "Cluster count (default: labeled cluster count)");
    run_cmd->add_option("--b", run_args.b, "Boost width for kmppb")->capture_default_str();
    run_cmd->add_option("--criterion", run_args.criterion, "Boost criterion: squared|distance")
        ->capture_default_str();
    run_cmd->add_option("--seed", run_args.seed, "RNG seed")->capture_default_str();
    run_cmd->add_option("--max-iters", run_args.max_iters, "Lloyd iteration cap")->capture_default_str();
    run_cmd->add_option("--out", run_args.out, "Output JSON path (stdout when omitted)");

    BenchArgs bench_args;
    auto* bench_cmd = app.add_subcommand("bench", "Run repeated experiments and write tables and figures");
    bench_cmd->add_option("--spec", bench_args.spec, "JSON experiment spec");
    bench_cmd->add_option("--preset", bench_args.preset, "Built-in sweep: standard|grid")
        ->check(CLI::IsMember({"standard", "grid"}));
    add_gen_options(bench_cmd, bench_args.gen);
    bench_cmd->add_option("--runs", bench_args.runs, "Datasets per configuration")->capture_default_str();
    bench_cmd->add_option("--seed", bench_args.seed, "Master seed")->capture_default_str();
    bench_cmd->add_option("--algos", bench_args.algos, "Subset of algorithms (default: all six)");
    bench_cmd->add_option("--b", bench_args.b, "Boost width for kmppb")->capture_default_str();
    bench_cmd->add_option("--max-iters", bench_args.max_iters, "Lloyd iteration cap")->capture_default_str();
    bench_cmd->add_option("--threads", bench_args.threads, "Worker threads (0: all cores)");
    bench_cmd->add_flag("--save-datasets", bench_args.save_datasets, "Also write every generated dataset");
    bench_cmd->add_option("--out-dir", bench_args.out_dir, "Results directory")->required();

    std::string report_in;
    auto* report_cmd = app.add_subcommand("report", "Re-render tables and figures from stored results");
    report_cmd->add_option("--in", report_in, "Results directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (gen_cmd->parsed()) return cmd_generate(gen_args);
        if (run_cmd->parsed()) return cmd_run(run_args);
        if (bench_cmd->parsed()) return cmd_bench(bench_args);
        if (report_cmd->parsed()) return cmd_report(report_in);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const InvariantError& e) {
        std::cerr << "invariant breach: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInvariant;
    }
    return kExitUsage;
}
