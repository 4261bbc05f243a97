#pragma once

#include <filesystem>
#include <optional>

#include "json.hpp"

#include "dietclust/pipeline/analysis.hpp"
#include "dietclust/validity.hpp"

namespace dietclust::pipeline {

using Json = nlohmann::ordered_json;

/// Fragment builders for the machine-readable report. Field names are stable;
/// NaN serializes as null (JSON has no NaN).
Json dataset_json(const CountryTable& table);
Json cleaning_json(const CleaningPolicy& policy, const CleaningReport& report);
Json pca_json(const Reduction& reduction);
Json sweep_json(const KSweepResult& sweep);
Json clustering_json(const Clustering<double>& clustering, std::uint64_t fit_seed,
                     const ClusterSizeStats& sizes, std::optional<double> davies_bouldin_index,
                     const std::vector<CountryRecord>& records);
Json labeling_json(const RiskLabeling& labeling, std::optional<double> threshold_quantile);
Json groups_json(const GroupComparison& groups);
Json overlap_json(const OverlapReport& overlap);

void write_json_file(const std::filesystem::path& path, const Json& value);

/// Flat plot-data tables, one per figure of the analysis.
void write_db_by_k_csv(const std::filesystem::path& path, const KSweepResult& sweep);
void write_cluster_sizes_csv(const std::filesystem::path& path, const ClusterSizeStats& sizes);
void write_cluster_q3_csv(const std::filesystem::path& path, const RiskLabeling& labeling);
void write_category_group_stats_csv(const std::filesystem::path& path,
                                    const GroupComparison& groups);
void write_outcome_group_stats_csv(const std::filesystem::path& path,
                                   const GroupComparison& groups);

} // namespace dietclust::pipeline
