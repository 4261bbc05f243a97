#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dietclust/kmeans.hpp"
#include "dietclust/pca.hpp"
#include "dietclust/pipeline/clean.hpp"

namespace dietclust::pipeline {

struct ReductionReport {
    Index features_in = 0;
    Index components = 0;
    double variance_target = 0;
    double explained_ratio = 0;
    double percent_reduction = 0; ///< 100 * (features_in - components) / features_in
};

struct Reduction {
    PcaModel<double> model;
    Matrix points; ///< rows align with the cleaned table
    ReductionReport report;
};

Reduction run_reduction(const Matrix& features, double variance_target = 0.95);

enum class DeathMetric { deaths_over_confirmed, deaths_over_population };

std::string to_string(DeathMetric metric);
DeathMetric death_metric_from_string(const std::string& name);

/// The per-country statistic clusters are judged by, when computable.
/// deaths_over_confirmed needs a positive confirmed count.
std::optional<double> death_metric_value(const CountryRecord& rec, DeathMetric metric);

struct LabelingPolicy {
    /// Skip countries without the metric when computing cluster quartiles
    /// (they keep their cluster membership). When false such a country is an
    /// error instead.
    bool exclude_missing_outcomes = true;
};

struct RiskLabeling {
    DeathMetric metric{};
    double threshold = 0;
    std::vector<double> per_cluster_q3;      ///< 3rd quartile of the metric, per cluster
    std::vector<bool> high;                  ///< per cluster: q3 > threshold
    std::vector<std::string> high_countries; ///< members of high clusters, sorted
    std::vector<std::string> excluded;       ///< countries skipped for missing outcomes
};

/// 3rd quartile of the death metric per cluster; countries without the metric
/// are appended to excluded (when the policy allows skipping them).
std::vector<double> cluster_q3(const Clustering<double>& clustering,
                               const std::vector<CountryRecord>& records, DeathMetric metric,
                               const LabelingPolicy& policy = {},
                               std::vector<std::string>* excluded = nullptr);

/// Splits clusters into high/low mortality by comparing each cluster's 3rd
/// quartile of the death metric against the threshold. records must be
/// row-aligned with clustering.assignments.
RiskLabeling label_clusters(const Clustering<double>& clustering,
                            const std::vector<CountryRecord>& records, DeathMetric metric,
                            double threshold, const LabelingPolicy& policy = {});

/// A relative threshold: the q-quantile of the per-cluster Q3 values.
double threshold_from_quantile(const std::vector<double>& per_cluster_q3, double q);

struct GroupStats {
    double high_mean = 0, high_std = 0; ///< sample std, NaN below 2 members
    double low_mean = 0, low_std = 0;
    std::size_t high_n = 0, low_n = 0;
};

struct GroupComparison {
    std::size_t n_high = 0, n_low = 0;
    std::vector<std::string> feature_names;
    std::vector<GroupStats> features; ///< raw-scale (pre-standardization) values
    std::optional<GroupStats> obesity;
    std::optional<GroupStats> undernourished;
    std::optional<GroupStats> kcal;
    std::optional<double> kcal_relative_difference; ///< (mean_high - mean_low) / mean_low
};

/// Mean/spread of every food feature and of the outcome columns, for the high
/// group vs the rest. Operates on the cleaned table the clustering saw.
GroupComparison compare_groups(const CleanResult& cleaned, const RiskLabeling& labeling);

struct OverlapReport {
    std::size_t top_list_size = 0; ///< distinct countries in the provided list
    std::size_t high_count = 0;
    std::size_t intersection = 0;
    double fraction = 0; ///< intersection / high_count (0 when no high countries)
    std::vector<std::string> matched;
    std::vector<std::string> unmatched_names; ///< list entries naming no table country
};

/// How much of the high-mortality group appears in an externally provided
/// top-deaths country list. Names are normalized like the join.
OverlapReport top_deaths_overlap(const RiskLabeling& labeling,
                                 const std::vector<std::string>& top_list,
                                 const std::vector<CountryRecord>& all_records);

/// One country name per line; blank lines and '#' comments skipped.
std::vector<std::string> read_country_list(const std::filesystem::path& path);

struct ClusterSizeStats {
    std::vector<Index> sizes;
    double mean = 0;
    double std = 0; ///< sample std, NaN for k < 2
};

ClusterSizeStats cluster_size_stats(const Clustering<double>& clustering);

} // namespace dietclust::pipeline
