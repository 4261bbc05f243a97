#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "dietclust/pipeline/runner.hpp"

namespace dp = dietclust::pipeline;

namespace {

// Flags layered over an optional --config file; whatever the command line
// sets wins. The file is applied before CLI11 runs, so bound defaults are
// already the file's values when flags get parsed.
void apply_config_file(int argc, char** argv, dp::RunConfig& config) {
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config" || arg == "-c") {
            if (i + 1 >= argc) throw dietclust::InvalidConfig("--config needs a file path");
            config = dp::load_config_file(argv[i + 1]);
            return;
        }
        if (arg.rfind("--config=", 0) == 0) {
            config = dp::load_config_file(arg.substr(9));
            return;
        }
    }
}

void add_common_options(CLI::App* cmd, dp::RunConfig& config) {
    cmd->add_option("-c,--config", "JSON config file; flags given here override it")
        ->option_text("FILE");
    cmd->add_option("--fat", config.fat_csv, "fat supply CSV");
    cmd->add_option("--kg", config.kg_csv, "food quantity (kg) CSV");
    cmd->add_option("--kcal", config.kcal_csv, "food supply (kcal) CSV");
    cmd->add_option("--protein", config.protein_csv, "protein supply CSV");
    cmd->add_option("--kcal-reference", config.kcal_reference,
                    "optional Country,KcalPerDay reference CSV");
    cmd->add_option("--top-deaths", config.top_deaths,
                    "optional country list (one per line) for the overlap report");
    cmd->add_option("--variance-target", config.variance_target,
                    "fraction of variance the kept components must explain")
        ->capture_default_str();
    cmd->add_option("-k,--k", config.k, "cluster count; 0 = take the sweep suggestion");
    cmd->add_option("--k-min", config.k_min, "sweep lower bound")->capture_default_str();
    cmd->add_option("--k-max", config.k_max, "sweep upper bound")->capture_default_str();
    cmd->add_flag("--accept-suggested-k", config.accept_suggested_k,
                  "let run proceed with the sweep's heuristic k");
    cmd->add_option("--seed", config.seed, "master seed; all randomness derives from it")
        ->capture_default_str();
    cmd->add_option("--restarts", config.restarts, "independent k-means starts")
        ->capture_default_str();
    cmd->add_option("--max-iterations", config.max_iterations, "iteration cap per start")
        ->capture_default_str();
    cmd->add_option("--tolerance", config.movement_tolerance,
                    "centroid movement considered converged")
        ->capture_default_str();
    cmd->add_option("--init", config.init, "random_points or kmeanspp")->capture_default_str();
    cmd->add_option("--metric", config.metric,
                    "death metric: deaths_over_confirmed or deaths_over_population")
        ->capture_default_str();
    cmd->add_option_function<double>(
        "--threshold", [&config](double v) { config.threshold = v; },
        "absolute high-risk threshold on the cluster Q3 metric");
    cmd->add_option_function<double>(
        "--threshold-quantile", [&config](double v) { config.threshold_quantile = v; },
        "derive the threshold as this quantile of the per-cluster Q3 values");
    cmd->add_option("--missing-policy", config.missing_policy, "impute_mean or drop_rows")
        ->capture_default_str();
    cmd->add_option("--censored-fraction", config.censored_fraction,
                    "value assigned to '<x' entries, as a fraction of x")
        ->capture_default_str();
    cmd->add_option("-o,--out-dir", config.out_dir, "output directory")->capture_default_str();
}

template <typename F>
int guarded(F&& body) {
    std::string stage = "config";
    try {
        body(&stage);
        return 0;
    } catch (const dietclust::ConfigError& e) {
        std::cerr << "error [" << stage << "]: " << e.what() << "\n";
        return 2;
    } catch (const dietclust::DataError& e) {
        std::cerr << "error [" << stage << "]: " << e.what() << "\n";
        return 3;
    } catch (const dietclust::NumericError& e) {
        std::cerr << "error [" << stage << "]: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error [" << stage << "]: " << e.what() << "\n";
        return 1;
    }
}

std::string percent(double fraction) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f%%", 100.0 * fraction);
    return buf;
}

void print_sweep_summary(const dp::Json& sweep) {
    if (sweep.contains("skipped")) {
        std::cout << "sweep skipped: " << sweep["skipped"].get<std::string>() << "\n";
        return;
    }
    const dp::Json* best = nullptr;
    for (const dp::Json& e : sweep["entries"])
        if (e["ok"].get<bool>() && (!best || e["db"].get<double>() < (*best)["db"].get<double>()))
            best = &e;
    std::cout << "swept k = " << sweep["k_min"] << ".." << sweep["k_max"];
    if (best)
        std::cout << ", lowest Davies-Bouldin " << (*best)["db"].get<double>() << " at k = "
                  << (*best)["k"].get<int>();
    std::cout << "\n";
    if (sweep["suggested_k"].is_null())
        std::cout << "no suggested_k (the elbow heuristic needs 3 consecutive usable k)\n";
    else
        std::cout << "suggested_k = " << sweep["suggested_k"].get<int>()
                  << "  (elbow heuristic, not a ground truth; confirm or pass --k)\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"diet-pattern clustering: PCA + k-means + Davies-Bouldin + risk labeling"};
    app.require_subcommand(1);

    dp::RunConfig config;
    try {
        apply_config_file(argc, argv, config);
    } catch (const std::exception& e) {
        std::cerr << "error [config]: " << e.what() << "\n";
        return 2;
    }

    CLI::App* validate = app.add_subcommand(
        "validate", "load and clean the inputs, report schema/join/cleaning results");
    CLI::App* pca = app.add_subcommand("pca", "standardize and reduce, write the spectrum");
    CLI::App* sweep =
        app.add_subcommand("sweep", "cluster across a k range, write Davies-Bouldin by k");
    CLI::App* cluster = app.add_subcommand("cluster", "single k-means fit at an explicit --k");
    CLI::App* run = app.add_subcommand("run", "full pipeline: reduce, sweep, cluster, label, compare");
    for (CLI::App* cmd : {validate, pca, sweep, cluster, run}) add_common_options(cmd, config);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (validate->parsed())
        return guarded([&](std::string* stage) {
            const dp::Json report = dp::cmd_validate(config, stage);
            std::cout << report.dump(2) << "\n";
        });

    if (pca->parsed())
        return guarded([&](std::string* stage) {
            const dp::Json report = dp::cmd_pca(config, stage);
            const dp::Json& p = report["pca"];
            std::cout << "kept " << p["components"] << " of " << p["features_in"]
                      << " components (" << percent(p["explained_ratio"].get<double>())
                      << " of variance, target "
                      << percent(p["variance_target"].get<double>()) << ")\n"
                      << "dimensionality reduced by "
                      << p["percent_reduction"].get<double>() << "%\n"
                      << "wrote " << config.out_dir << "/pca.json, pca_spectrum.csv\n";
        });

    if (sweep->parsed())
        return guarded([&](std::string* stage) {
            const dp::Json report = dp::cmd_sweep(config, stage);
            print_sweep_summary(report["sweep"]);
            std::cout << "wrote " << config.out_dir << "/sweep.json, db_by_k.csv\n";
        });

    if (cluster->parsed())
        return guarded([&](std::string* stage) {
            const dp::Json report = dp::cmd_cluster(config, stage);
            const dp::Json& c = report["clustering"];
            std::cout << "k = " << c["k"] << ", inertia " << c["inertia"].get<double>()
                      << ", " << c["iterations"] << " iterations";
            if (!c["davies_bouldin"].is_null())
                std::cout << ", Davies-Bouldin " << c["davies_bouldin"].get<double>();
            std::cout << "\nwrote " << config.out_dir << "/cluster.json, cluster_sizes.csv\n";
        });

    return guarded([&](std::string* stage) {
        const dp::Json report = dp::cmd_run(config, stage);
        const dp::Json& p = report["pca"];
        const dp::Json& c = report["clustering"];
        const dp::Json& l = report["labeling"];
        std::cout << report["dataset"]["countries"] << " countries, "
                  << report["dataset"]["features"] << " features\n"
                  << "components: " << p["components"] << " ("
                  << percent(p["explained_ratio"].get<double>()) << " of variance, "
                  << p["percent_reduction"].get<double>() << "% reduction)\n";
        print_sweep_summary(report["sweep"]);
        std::cout << "clustered with k = " << report["chosen_k"] << ", inertia "
                  << c["inertia"].get<double>();
        if (!c["davies_bouldin"].is_null())
            std::cout << ", Davies-Bouldin " << c["davies_bouldin"].get<double>();
        std::cout << "\nhigh-risk clusters hold " << l["high_countries"].size()
                  << " countries (threshold " << l["threshold"].get<double>() << " on "
                  << l["metric"].get<std::string>() << " Q3)\n";
        if (!report["overlap"].is_null())
            std::cout << report["overlap"]["intersection"] << " of the "
                      << report["overlap"]["high_count"] << " high-risk countries are on the top-"
                      << report["overlap"]["top_list_size"] << " deaths list ("
                      << percent(report["overlap"]["fraction"].get<double>()) << ")\n";
        std::cout << "wrote " << config.out_dir << "/report.json and plot CSVs\n";
    });
}
