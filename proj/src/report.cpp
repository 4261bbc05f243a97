#include "dietclust/pipeline/report.hpp"

#include <cmath>
#include <fstream>

#include "dietclust/pipeline/csv.hpp"

namespace dietclust::pipeline {

namespace {

Json number_or_null(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

std::string csv_number(double v) {
    return std::isfinite(v) ? format_double(v) : std::string();
}

Json group_stats_json(const GroupStats& s) {
    return Json{{"high_mean", number_or_null(s.high_mean)},
                {"high_std", number_or_null(s.high_std)},
                {"low_mean", number_or_null(s.low_mean)},
                {"low_std", number_or_null(s.low_std)},
                {"high_n", s.high_n},
                {"low_n", s.low_n}};
}

} // namespace

Json dataset_json(const CountryTable& table) {
    Json dropped = Json::object();
    for (const auto& [source, names] : table.join.dropped) dropped[source] = names;
    return Json{{"countries", table.records.size()},
                {"features", table.feature_names.size()},
                {"dropped", std::move(dropped)},
                {"unmatched_kcal_reference", table.join.unmatched_kcal_reference}};
}

Json cleaning_json(const CleaningPolicy& policy, const CleaningReport& report) {
    Json imputations = Json::array();
    for (const auto& imp : report.imputations)
        imputations.push_back(
            Json{{"country", imp.country}, {"feature", imp.feature}, {"value", imp.value}});
    Json censored = Json::array();
    for (const auto& c : report.censored)
        censored.push_back(Json{{"country", c.country}, {"bound", c.bound}, {"value", c.value}});
    return Json{
        {"policy",
         Json{{"missing",
               policy.missing == MissingPolicy::impute_mean ? "impute_mean" : "drop_rows"},
              {"censored_fraction", policy.censored_fraction}}},
        {"dropped_countries", report.dropped_countries},
        {"imputations", std::move(imputations)},
        {"dropped_constant_features", report.dropped_constant_features},
        {"dropped_empty_features", report.dropped_empty_features},
        {"censored", std::move(censored)}};
}

Json pca_json(const Reduction& reduction) {
    const PcaModel<double>& model = reduction.model;
    const Vector ratios = explained_variance_ratios(model);
    const Vector cumulative = cumulative_variance_ratios(model);
    return Json{{"features_in", reduction.report.features_in},
                {"components", reduction.report.components},
                {"variance_target", reduction.report.variance_target},
                {"explained_ratio", reduction.report.explained_ratio},
                {"percent_reduction", reduction.report.percent_reduction},
                {"eigenvalues", std::vector<double>(model.eigenvalues.begin(), model.eigenvalues.end())},
                {"explained_ratios", std::vector<double>(ratios.begin(), ratios.end())},
                {"cumulative_ratios", std::vector<double>(cumulative.begin(), cumulative.end())}};
}

Json sweep_json(const KSweepResult& sweep) {
    Json entries = Json::array();
    for (const KSweepEntry& e : sweep.entries) {
        Json entry{{"k", e.k}, {"ok", e.ok}, {"seed", e.seed}};
        if (e.ok) {
            entry["db"] = e.db;
            entry["inertia"] = e.inertia;
            entry["iterations"] = e.iterations;
        } else {
            entry["error"] = e.error;
        }
        entries.push_back(std::move(entry));
    }
    Json out{{"k_min", sweep.k_min}, {"k_max", sweep.k_max}, {"entries", std::move(entries)}};
    out["suggested_k"] = sweep.suggested_k ? Json(*sweep.suggested_k) : Json(nullptr);
    return out;
}

Json clustering_json(const Clustering<double>& clustering, std::uint64_t fit_seed,
                     const ClusterSizeStats& sizes, std::optional<double> davies_bouldin_index,
                     const std::vector<CountryRecord>& records) {
    Json members = Json::array();
    for (int j = 0; j < clustering.k; ++j) {
        Json names = Json::array();
        for (std::size_t i = 0; i < records.size(); ++i)
            if (clustering.assignments[i] == j) names.push_back(records[i].country);
        members.push_back(std::move(names));
    }
    return Json{{"k", clustering.k},
                {"fit_seed", fit_seed},
                {"winning_restart_seed", clustering.seed_used},
                {"inertia", clustering.inertia},
                {"iterations", clustering.iterations},
                {"sizes", sizes.sizes},
                {"size_mean", number_or_null(sizes.mean)},
                {"size_std", number_or_null(sizes.std)},
                {"davies_bouldin",
                 davies_bouldin_index ? Json(*davies_bouldin_index) : Json(nullptr)},
                {"members", std::move(members)}};
}

Json labeling_json(const RiskLabeling& labeling, std::optional<double> threshold_quantile) {
    Json labels = Json::array();
    for (bool high : labeling.high) labels.push_back(high ? "high" : "low");
    Json out{{"metric", to_string(labeling.metric)}, {"threshold", labeling.threshold}};
    out["threshold_quantile"] = threshold_quantile ? Json(*threshold_quantile) : Json(nullptr);
    out["per_cluster_q3"] = labeling.per_cluster_q3;
    out["labels"] = std::move(labels);
    out["high_countries"] = labeling.high_countries;
    out["excluded"] = labeling.excluded;
    return out;
}

Json groups_json(const GroupComparison& groups) {
    Json features = Json::array();
    for (std::size_t j = 0; j < groups.features.size(); ++j) {
        Json row = group_stats_json(groups.features[j]);
        Json named{{"name", groups.feature_names[j]}};
        named.update(row);
        features.push_back(std::move(named));
    }
    Json out{{"n_high", groups.n_high}, {"n_low", groups.n_low}};
    out["obesity"] = groups.obesity ? group_stats_json(*groups.obesity) : Json(nullptr);
    out["undernourished"] =
        groups.undernourished ? group_stats_json(*groups.undernourished) : Json(nullptr);
    out["kcal"] = groups.kcal ? group_stats_json(*groups.kcal) : Json(nullptr);
    out["kcal_relative_difference"] =
        groups.kcal_relative_difference ? Json(*groups.kcal_relative_difference) : Json(nullptr);
    out["features"] = std::move(features);
    return out;
}

Json overlap_json(const OverlapReport& overlap) {
    return Json{{"top_list_size", overlap.top_list_size},
                {"high_count", overlap.high_count},
                {"intersection", overlap.intersection},
                {"fraction", overlap.fraction},
                {"matched", overlap.matched},
                {"unmatched_names", overlap.unmatched_names}};
}

void write_json_file(const std::filesystem::path& path, const Json& value) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out << value.dump(2) << '\n';
}

void write_db_by_k_csv(const std::filesystem::path& path, const KSweepResult& sweep) {
    std::vector<std::vector<std::string>> rows;
    for (const KSweepEntry& e : sweep.entries)
        rows.push_back({std::to_string(e.k), e.ok ? format_double(e.db) : "",
                        e.ok ? format_double(e.inertia) : "", e.ok ? "1" : "0"});
    write_csv(path, {"k", "davies_bouldin", "inertia", "ok"}, rows);
}

void write_cluster_sizes_csv(const std::filesystem::path& path, const ClusterSizeStats& sizes) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t j = 0; j < sizes.sizes.size(); ++j)
        rows.push_back({std::to_string(j), std::to_string(sizes.sizes[j])});
    write_csv(path, {"cluster", "count"}, rows);
}

void write_cluster_q3_csv(const std::filesystem::path& path, const RiskLabeling& labeling) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t j = 0; j < labeling.per_cluster_q3.size(); ++j)
        rows.push_back({std::to_string(j), format_double(labeling.per_cluster_q3[j]),
                        labeling.high[j] ? "high" : "low"});
    write_csv(path, {"cluster", "q3", "label"}, rows);
}

void write_category_group_stats_csv(const std::filesystem::path& path,
                                    const GroupComparison& groups) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t j = 0; j < groups.features.size(); ++j) {
        const GroupStats& s = groups.features[j];
        rows.push_back({groups.feature_names[j], csv_number(s.high_mean), csv_number(s.high_std),
                        csv_number(s.low_mean), csv_number(s.low_std)});
    }
    write_csv(path, {"feature", "high_mean", "high_std", "low_mean", "low_std"}, rows);
}

void write_outcome_group_stats_csv(const std::filesystem::path& path,
                                   const GroupComparison& groups) {
    std::vector<std::vector<std::string>> rows;
    auto add = [&rows](const char* name, const std::optional<GroupStats>& s) {
        if (!s) return;
        rows.push_back({name, csv_number(s->high_mean), csv_number(s->high_std),
                        csv_number(s->low_mean), csv_number(s->low_std),
                        std::to_string(s->high_n), std::to_string(s->low_n)});
    };
    add("obesity", groups.obesity);
    add("undernourished", groups.undernourished);
    add("kcal", groups.kcal);
    write_csv(path, {"outcome", "high_mean", "high_std", "low_mean", "low_std", "high_n", "low_n"},
              rows);
}

} // namespace dietclust::pipeline
