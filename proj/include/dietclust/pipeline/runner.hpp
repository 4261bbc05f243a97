#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "dietclust/pipeline/report.hpp"

namespace dietclust::pipeline {

/// Everything a run needs, resolvable from flags and/or a JSON config file.
/// Field names below double as the config-file keys.
struct RunConfig {
    std::string fat_csv;
    std::string kg_csv;
    std::string kcal_csv;
    std::string protein_csv;
    std::string kcal_reference; ///< optional, empty = none
    std::string top_deaths;     ///< optional, empty = none

    double variance_target = 0.95;

    int k = 0; ///< 0 = pick from the sweep (requires accept_suggested_k)
    int k_min = 2;
    int k_max = 30;
    bool accept_suggested_k = false;

    std::uint64_t seed = 42;
    int restarts = 32;
    int max_iterations = 300;
    double movement_tolerance = 1e-9;
    std::string init = "random_points"; ///< or "kmeanspp"

    std::string metric = "deaths_over_confirmed";
    std::optional<double> threshold;
    std::optional<double> threshold_quantile;

    std::string missing_policy = "impute_mean"; ///< or "drop_rows"
    double censored_fraction = 0.5;

    std::string out_dir = "dietclust_out";
};

Json config_json(const RunConfig& config);
RunConfig config_from_json(const Json& j);
RunConfig load_config_file(const std::string& path);

/// Pipeline commands. Each returns the report it writes (or would write) and
/// records the failing stage in *stage on throw. File outputs land in
/// config.out_dir under fixed names:
///   run:     report.json, db_by_k.csv, cluster_sizes.csv, cluster_q3_deaths.csv,
///            category_group_stats.csv, outcome_group_stats.csv
///   sweep:   sweep.json, db_by_k.csv
///   pca:     pca.json, pca_spectrum.csv
///   cluster: cluster.json, cluster_sizes.csv
///   validate writes nothing.
Json cmd_validate(const RunConfig& config, std::string* stage = nullptr);
Json cmd_pca(const RunConfig& config, std::string* stage = nullptr);
Json cmd_sweep(const RunConfig& config, std::string* stage = nullptr);
Json cmd_cluster(const RunConfig& config, std::string* stage = nullptr);
Json cmd_run(const RunConfig& config, std::string* stage = nullptr);

} // namespace dietclust::pipeline
