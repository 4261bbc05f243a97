#include "dietclust/pipeline/runner.hpp"

#include "dietclust/pipeline/csv.hpp"

#include <fstream>

namespace dietclust::pipeline {

namespace {

void read_string(const Json& j, const char* key, std::string& into) {
    if (!j.contains(key)) return;
    if (!j[key].is_string()) throw InvalidConfig(std::string("config key '") + key + "' must be a string");
    into = j[key].get<std::string>();
}

void read_double(const Json& j, const char* key, double& into) {
    if (!j.contains(key)) return;
    if (!j[key].is_number()) throw InvalidConfig(std::string("config key '") + key + "' must be a number");
    into = j[key].get<double>();
}

void read_optional_double(const Json& j, const char* key, std::optional<double>& into) {
    if (!j.contains(key) || j[key].is_null()) return;
    if (!j[key].is_number()) throw InvalidConfig(std::string("config key '") + key + "' must be a number");
    into = j[key].get<double>();
}

void read_int(const Json& j, const char* key, int& into) {
    if (!j.contains(key)) return;
    if (!j[key].is_number_integer())
        throw InvalidConfig(std::string("config key '") + key + "' must be an integer");
    into = j[key].get<int>();
}

void read_bool(const Json& j, const char* key, bool& into) {
    if (!j.contains(key)) return;
    if (!j[key].is_boolean()) throw InvalidConfig(std::string("config key '") + key + "' must be a boolean");
    into = j[key].get<bool>();
}

constexpr const char* kConfigKeys[] = {
    "fat_csv", "kg_csv", "kcal_csv", "protein_csv", "kcal_reference", "top_deaths",
    "variance_target", "k", "k_min", "k_max", "accept_suggested_k", "seed", "restarts",
    "max_iterations", "movement_tolerance", "init", "metric", "threshold",
    "threshold_quantile", "missing_policy", "censored_fraction", "out_dir"};

CleaningPolicy cleaning_policy(const RunConfig& config) {
    CleaningPolicy policy;
    if (config.missing_policy == "impute_mean") {
        policy.missing = MissingPolicy::impute_mean;
    } else if (config.missing_policy == "drop_rows") {
        policy.missing = MissingPolicy::drop_rows;
    } else {
        throw InvalidConfig("missing_policy must be impute_mean or drop_rows, got '"
                            + config.missing_policy + "'");
    }
    policy.censored_fraction = config.censored_fraction;
    return policy;
}

KMeansConfig kmeans_base(const RunConfig& config) {
    KMeansConfig base;
    base.seed = config.seed;
    base.restarts = config.restarts;
    base.max_iterations = config.max_iterations;
    base.movement_tolerance = config.movement_tolerance;
    if (config.init == "random_points") {
        base.init = InitStrategy::random_points;
    } else if (config.init == "kmeanspp") {
        base.init = InitStrategy::kmeanspp;
    } else {
        throw InvalidConfig("init must be random_points or kmeanspp, got '" + config.init + "'");
    }
    return base;
}

void require_inputs(const RunConfig& config) {
    if (config.fat_csv.empty() || config.kg_csv.empty() || config.kcal_csv.empty()
        || config.protein_csv.empty())
        throw InvalidConfig("all four food CSV paths are required (fat, kg, kcal, protein)");
    if (config.k < 0) throw InvalidConfig("k must be non-negative");
}

struct Prepared {
    CountryTable table;
    CleanResult cleaned;
};

Prepared prepare(const RunConfig& config, std::string* stage) {
    auto at = [&](const char* s) { if (stage) *stage = s; };
    at("config");
    require_inputs(config);
    const CleaningPolicy policy = cleaning_policy(config);
    (void)kmeans_base(config);

    at("load");
    std::optional<std::filesystem::path> reference;
    if (!config.kcal_reference.empty()) reference = config.kcal_reference;
    Prepared out;
    out.table = load_dataset(config.fat_csv, config.kg_csv, config.kcal_csv, config.protein_csv,
                             reference);

    at("clean");
    out.cleaned = clean(out.table, policy);
    return out;
}

std::filesystem::path ensure_out_dir(const RunConfig& config) {
    if (config.out_dir.empty()) throw InvalidConfig("out_dir must not be empty");
    std::filesystem::create_directories(config.out_dir);
    return config.out_dir;
}

} // namespace

Json config_json(const RunConfig& c) {
    Json j{{"fat_csv", c.fat_csv},
           {"kg_csv", c.kg_csv},
           {"kcal_csv", c.kcal_csv},
           {"protein_csv", c.protein_csv},
           {"kcal_reference", c.kcal_reference},
           {"top_deaths", c.top_deaths},
           {"variance_target", c.variance_target},
           {"k", c.k},
           {"k_min", c.k_min},
           {"k_max", c.k_max},
           {"accept_suggested_k", c.accept_suggested_k},
           {"seed", c.seed},
           {"restarts", c.restarts},
           {"max_iterations", c.max_iterations},
           {"movement_tolerance", c.movement_tolerance},
           {"init", c.init},
           {"metric", c.metric}};
    j["threshold"] = c.threshold ? Json(*c.threshold) : Json(nullptr);
    j["threshold_quantile"] = c.threshold_quantile ? Json(*c.threshold_quantile) : Json(nullptr);
    j["missing_policy"] = c.missing_policy;
    j["censored_fraction"] = c.censored_fraction;
    j["out_dir"] = c.out_dir;
    return j;
}

RunConfig config_from_json(const Json& j) {
    if (!j.is_object()) throw InvalidConfig("config file must hold a JSON object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        bool known = false;
        for (const char* k : kConfigKeys) known = known || key == k;
        if (!known) throw InvalidConfig("unknown config key '" + key + "'");
    }
    RunConfig c;
    read_string(j, "fat_csv", c.fat_csv);
    read_string(j, "kg_csv", c.kg_csv);
    read_string(j, "kcal_csv", c.kcal_csv);
    read_string(j, "protein_csv", c.protein_csv);
    read_string(j, "kcal_reference", c.kcal_reference);
    read_string(j, "top_deaths", c.top_deaths);
    read_double(j, "variance_target", c.variance_target);
    read_int(j, "k", c.k);
    read_int(j, "k_min", c.k_min);
    read_int(j, "k_max", c.k_max);
    read_bool(j, "accept_suggested_k", c.accept_suggested_k);
    if (j.contains("seed")) {
        const Json& s = j["seed"];
        const bool non_negative =
            s.is_number_unsigned() || (s.is_number_integer() && s.get<std::int64_t>() >= 0);
        if (!non_negative) throw InvalidConfig("config key 'seed' must be an unsigned integer");
        c.seed = s.get<std::uint64_t>();
    }
    read_int(j, "restarts", c.restarts);
    read_int(j, "max_iterations", c.max_iterations);
    read_double(j, "movement_tolerance", c.movement_tolerance);
    read_string(j, "init", c.init);
    read_string(j, "metric", c.metric);
    read_optional_double(j, "threshold", c.threshold);
    read_optional_double(j, "threshold_quantile", c.threshold_quantile);
    read_string(j, "missing_policy", c.missing_policy);
    read_double(j, "censored_fraction", c.censored_fraction);
    read_string(j, "out_dir", c.out_dir);
    return c;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidConfig("cannot open config file " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw InvalidConfig("config file " + path + ": " + e.what());
    }
    return config_from_json(j);
}

Json cmd_validate(const RunConfig& config, std::string* stage) {
    const Prepared p = prepare(config, stage);
    return Json{{"tool", "dietclust"},
                {"config", config_json(config)},
                {"dataset", dataset_json(p.table)},
                {"cleaning", cleaning_json(cleaning_policy(config), p.cleaned.report)},
                {"countries_after_cleaning", p.cleaned.records.size()},
                {"features_after_cleaning", p.cleaned.feature_names.size()}};
}

Json cmd_pca(const RunConfig& config, std::string* stage) {
    auto at = [&](const char* s) { if (stage) *stage = s; };
    const Prepared p = prepare(config, stage);
    at("reduce");
    const Reduction reduction = run_reduction(p.cleaned.features, config.variance_target);

    at("report");
    const auto dir = ensure_out_dir(config);
    Json report{{"tool", "dietclust"},
                {"config", config_json(config)},
                {"dataset", dataset_json(p.table)},
                {"cleaning", cleaning_json(cleaning_policy(config), p.cleaned.report)},
                {"pca", pca_json(reduction)}};
    write_json_file(dir / "pca.json", report);

    std::vector<std::vector<std::string>> rows;
    const Vector ratios = explained_variance_ratios(reduction.model);
    const Vector cumulative = cumulative_variance_ratios(reduction.model);
    for (Index i = 0; i < reduction.model.eigenvalues.size(); ++i)
        rows.push_back({std::to_string(i + 1), format_double(reduction.model.eigenvalues[i]),
                        format_double(ratios[i]), format_double(cumulative[i])});
    write_csv(dir / "pca_spectrum.csv",
              {"component", "eigenvalue", "explained_ratio", "cumulative_ratio"}, rows);
    return report;
}

Json cmd_sweep(const RunConfig& config, std::string* stage) {
    auto at = [&](const char* s) { if (stage) *stage = s; };
    const Prepared p = prepare(config, stage);
    at("reduce");
    const Reduction reduction = run_reduction(p.cleaned.features, config.variance_target);

    at("sweep");
    const KSweepResult sweep =
        sweep_k(reduction.points, config.k_min, config.k_max, kmeans_base(config));

    at("report");
    const auto dir = ensure_out_dir(config);
    Json report{{"tool", "dietclust"},
                {"config", config_json(config)},
                {"dataset", dataset_json(p.table)},
                {"pca", pca_json(reduction)},
                {"sweep", sweep_json(sweep)}};
    write_json_file(dir / "sweep.json", report);
    write_db_by_k_csv(dir / "db_by_k.csv", sweep);
    return report;
}

Json cmd_cluster(const RunConfig& config, std::string* stage) {
    auto at = [&](const char* s) { if (stage) *stage = s; };
    if (config.k <= 0) throw InvalidConfig("cluster needs an explicit --k");
    const Prepared p = prepare(config, stage);
    at("reduce");
    const Reduction reduction = run_reduction(p.cleaned.features, config.variance_target);

    at("cluster");
    KMeansConfig fit_config = kmeans_base(config);
    fit_config.k = config.k;
    fit_config.seed = derive_seed(config.seed, static_cast<std::uint64_t>(config.k));
    const Clustering<double> clustering = fit_kmeans(reduction.points, fit_config);

    at("davies-bouldin");
    std::optional<double> db;
    if (config.k >= 2) db = davies_bouldin(reduction.points, clustering).index;
    const ClusterSizeStats sizes = cluster_size_stats(clustering);

    at("report");
    const auto dir = ensure_out_dir(config);
    Json report{{"tool", "dietclust"},
                {"config", config_json(config)},
                {"dataset", dataset_json(p.table)},
                {"pca", pca_json(reduction)},
                {"clustering", clustering_json(clustering, fit_config.seed, sizes, db, p.cleaned.records)}};
    write_json_file(dir / "cluster.json", report);
    write_cluster_sizes_csv(dir / "cluster_sizes.csv", sizes);
    return report;
}

Json cmd_run(const RunConfig& config, std::string* stage) {
    auto at = [&](const char* s) { if (stage) *stage = s; };
    at("config");
    if (config.threshold.has_value() == config.threshold_quantile.has_value())
        throw InvalidConfig("pass exactly one of threshold / threshold_quantile");
    const DeathMetric metric = death_metric_from_string(config.metric);

    const Prepared p = prepare(config, stage);
    at("reduce");
    const Reduction reduction = run_reduction(p.cleaned.features, config.variance_target);

    at("sweep");
    std::optional<KSweepResult> sweep;
    std::string sweep_skipped;
    const bool range_fits = config.k_min >= 2 && config.k_min <= config.k_max
                            && static_cast<Index>(config.k_max) <= reduction.points.rows();
    if (range_fits) {
        sweep = sweep_k(reduction.points, config.k_min, config.k_max, kmeans_base(config));
    } else if (config.k > 0) {
        sweep_skipped = "k range [" + std::to_string(config.k_min) + ", "
                        + std::to_string(config.k_max) + "] does not fit "
                        + std::to_string(reduction.points.rows()) + " countries";
    } else {
        throw InvalidKRange(config.k_min, config.k_max, reduction.points.rows());
    }

    at("choose-k");
    int k = config.k;
    if (k == 0) {
        if (!sweep->suggested_k)
            throw InvalidConfig("sweep produced no k suggestion; pass an explicit --k");
        if (!config.accept_suggested_k)
            throw InvalidConfig("suggested k = " + std::to_string(*sweep->suggested_k)
                                + " (heuristic); rerun with --k " + std::to_string(*sweep->suggested_k)
                                + " or --accept-suggested-k");
        k = *sweep->suggested_k;
    }

    at("cluster");
    KMeansConfig fit_config = kmeans_base(config);
    fit_config.k = k;
    fit_config.seed = derive_seed(config.seed, static_cast<std::uint64_t>(k));
    const Clustering<double> clustering = fit_kmeans(reduction.points, fit_config);
    const ClusterSizeStats sizes = cluster_size_stats(clustering);

    at("davies-bouldin");
    std::optional<double> db;
    if (k >= 2) db = davies_bouldin(reduction.points, clustering).index;

    at("label");
    double threshold = 0;
    if (config.threshold) {
        threshold = *config.threshold;
    } else {
        const std::vector<double> q3 = cluster_q3(clustering, p.cleaned.records, metric);
        threshold = threshold_from_quantile(q3, *config.threshold_quantile);
    }
    const RiskLabeling labeling =
        label_clusters(clustering, p.cleaned.records, metric, threshold);

    at("compare");
    const GroupComparison groups = compare_groups(p.cleaned, labeling);

    at("overlap");
    std::optional<OverlapReport> overlap;
    if (!config.top_deaths.empty())
        overlap = top_deaths_overlap(labeling, read_country_list(config.top_deaths),
                                     p.cleaned.records);

    at("report");
    const auto dir = ensure_out_dir(config);
    Json report{{"tool", "dietclust"},
                {"config", config_json(config)},
                {"dataset", dataset_json(p.table)},
                {"cleaning", cleaning_json(cleaning_policy(config), p.cleaned.report)},
                {"pca", pca_json(reduction)}};
    report["sweep"] = sweep ? sweep_json(*sweep) : Json{{"skipped", sweep_skipped}};
    report["chosen_k"] = k;
    report["clustering"] = clustering_json(clustering, fit_config.seed, sizes, db, p.cleaned.records);
    report["labeling"] = labeling_json(labeling, config.threshold_quantile);
    report["groups"] = groups_json(groups);
    report["overlap"] = overlap ? overlap_json(*overlap) : Json(nullptr);

    write_json_file(dir / "report.json", report);
    if (sweep) write_db_by_k_csv(dir / "db_by_k.csv", *sweep);
    write_cluster_sizes_csv(dir / "cluster_sizes.csv", sizes);
    write_cluster_q3_csv(dir / "cluster_q3_deaths.csv", labeling);
    write_category_group_stats_csv(dir / "category_group_stats.csv", groups);
    write_outcome_group_stats_csv(dir / "outcome_group_stats.csv", groups);
    return report;
}

} // namespace dietclust::pipeline
