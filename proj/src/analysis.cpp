#include "dietclust/pipeline/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <unordered_set>

#include "dietclust/pipeline/country_names.hpp"
#include "dietclust/stats.hpp"

namespace dietclust::pipeline {

Reduction run_reduction(const Matrix& features, double variance_target) {
    Reduction out;
    out.model = fit_pca(features, variance_target);
    out.points = transform(out.model, features);
    out.report.features_in = features.cols();
    out.report.components = out.model.k;
    out.report.variance_target = variance_target;
    out.report.explained_ratio = out.model.explained_ratio;
    out.report.percent_reduction =
        100.0 * static_cast<double>(features.cols() - out.model.k)
        / static_cast<double>(features.cols());
    return out;
}

std::string to_string(DeathMetric metric) {
    return metric == DeathMetric::deaths_over_confirmed ? "deaths_over_confirmed"
                                                        : "deaths_over_population";
}

DeathMetric death_metric_from_string(const std::string& name) {
    if (name == "deaths_over_confirmed") return DeathMetric::deaths_over_confirmed;
    if (name == "deaths_over_population") return DeathMetric::deaths_over_population;
    throw InvalidConfig("unknown death metric '" + name + "'");
}

std::optional<double> death_metric_value(const CountryRecord& rec, DeathMetric metric) {
    switch (metric) {
    case DeathMetric::deaths_over_confirmed:
        if (rec.deaths && rec.confirmed && *rec.confirmed > 0) return *rec.deaths / *rec.confirmed;
        return std::nullopt;
    case DeathMetric::deaths_over_population:
        return rec.deaths;
    }
    return std::nullopt;
}

std::vector<double> cluster_q3(const Clustering<double>& clustering,
                               const std::vector<CountryRecord>& records, DeathMetric metric,
                               const LabelingPolicy& policy, std::vector<std::string>* excluded) {
    if (records.size() != clustering.assignments.size())
        throw DimensionMismatch("records vs cluster assignments");

    std::vector<std::vector<double>> values(static_cast<std::size_t>(clustering.k));
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto v = death_metric_value(records[i], metric);
        if (!v) {
            if (!policy.exclude_missing_outcomes) throw MissingOutcome(records[i].country);
            if (excluded) excluded->push_back(records[i].country);
            continue;
        }
        values[static_cast<std::size_t>(clustering.assignments[i])].push_back(*v);
    }
    if (excluded) std::sort(excluded->begin(), excluded->end());

    std::vector<double> q3;
    for (int j = 0; j < clustering.k; ++j) {
        auto& member_values = values[static_cast<std::size_t>(j)];
        if (member_values.empty())
            throw MissingOutcome("cluster " + std::to_string(j) + " (no member has "
                                 + to_string(metric) + ")");
        q3.push_back(quantile(std::move(member_values), 0.75));
    }
    return q3;
}

RiskLabeling label_clusters(const Clustering<double>& clustering,
                            const std::vector<CountryRecord>& records, DeathMetric metric,
                            double threshold, const LabelingPolicy& policy) {
    if (!std::isfinite(threshold)) throw InvalidConfig("labeling threshold must be finite");

    RiskLabeling out;
    out.metric = metric;
    out.threshold = threshold;
    out.per_cluster_q3 = cluster_q3(clustering, records, metric, policy, &out.excluded);
    for (double q3 : out.per_cluster_q3) out.high.push_back(q3 > threshold);

    for (std::size_t i = 0; i < records.size(); ++i)
        if (out.high[static_cast<std::size_t>(clustering.assignments[i])])
            out.high_countries.push_back(records[i].country);
    std::sort(out.high_countries.begin(), out.high_countries.end());
    return out;
}

double threshold_from_quantile(const std::vector<double>& per_cluster_q3, double q) {
    return quantile(per_cluster_q3, q);
}

namespace {

struct Welford {
    std::size_t n = 0;
    long double sum = 0, sum_sq = 0;
    void add(double v) {
        ++n;
        sum += v;
        sum_sq += static_cast<long double>(v) * v;
    }
    double mean() const { return n ? static_cast<double>(sum / static_cast<long double>(n)) : 0; }
    double sample_std() const {
        if (n < 2) return std::numeric_limits<double>::quiet_NaN();
        const long double m = sum / static_cast<long double>(n);
        const long double var = (sum_sq - static_cast<long double>(n) * m * m)
                                / static_cast<long double>(n - 1);
        return static_cast<double>(std::sqrt(std::max(var, 0.0L)));
    }
};

std::optional<GroupStats> outcome_stats(const std::vector<CountryRecord>& records,
                                        const std::vector<bool>& is_high,
                                        std::optional<double> CountryRecord::* field) {
    Welford high, low;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& v = records[i].*field;
        if (!v) continue;
        (is_high[i] ? high : low).add(*v);
    }
    if (high.n == 0 || low.n == 0) return std::nullopt;
    return GroupStats{high.mean(), high.sample_std(), low.mean(), low.sample_std(), high.n, low.n};
}

} // namespace

GroupComparison compare_groups(const CleanResult& cleaned, const RiskLabeling& labeling) {
    const std::size_t n = cleaned.records.size();
    std::unordered_set<std::string> high_keys;
    for (const std::string& name : labeling.high_countries)
        high_keys.insert(normalize_country(name));

    GroupComparison out;
    std::vector<bool> is_high(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        is_high[i] = high_keys.count(cleaned.records[i].key) > 0;
        (is_high[i] ? out.n_high : out.n_low)++;
    }
    if (out.n_high == 0) throw EmptyGroup("no high-mortality country");
    if (out.n_low == 0) throw EmptyGroup("no low-mortality country");

    out.feature_names = cleaned.feature_names;
    for (Index j = 0; j < cleaned.features.cols(); ++j) {
        Welford high, low;
        for (std::size_t i = 0; i < n; ++i)
            (is_high[i] ? high : low).add(cleaned.features(static_cast<Index>(i), j));
        out.features.push_back(
            {high.mean(), high.sample_std(), low.mean(), low.sample_std(), high.n, low.n});
    }

    out.obesity = outcome_stats(cleaned.records, is_high, &CountryRecord::obesity);
    out.undernourished = outcome_stats(cleaned.records, is_high, &CountryRecord::undernourished);
    out.kcal = outcome_stats(cleaned.records, is_high, &CountryRecord::kcal_per_day);
    if (out.kcal && out.kcal->low_mean != 0)
        out.kcal_relative_difference = (out.kcal->high_mean - out.kcal->low_mean) / out.kcal->low_mean;
    return out;
}

OverlapReport top_deaths_overlap(const RiskLabeling& labeling,
                                 const std::vector<std::string>& top_list,
                                 const std::vector<CountryRecord>& all_records) {
    std::unordered_set<std::string> known;
    for (const CountryRecord& rec : all_records) known.insert(rec.key);
    std::unordered_set<std::string> high_keys;
    for (const std::string& name : labeling.high_countries)
        high_keys.insert(normalize_country(name));

    OverlapReport out;
    out.high_count = high_keys.size();

    std::set<std::string> list_keys;
    for (const std::string& raw : top_list) {
        const std::string key = normalize_country(raw);
        if (key.empty()) continue;
        if (!known.count(key)) out.unmatched_names.push_back(raw);
        list_keys.insert(key);
    }
    out.top_list_size = list_keys.size();
    std::sort(out.unmatched_names.begin(), out.unmatched_names.end());

    for (const std::string& name : labeling.high_countries)
        if (list_keys.count(normalize_country(name))) out.matched.push_back(name);
    std::sort(out.matched.begin(), out.matched.end());
    out.intersection = out.matched.size();
    out.fraction = out.high_count
                       ? static_cast<double>(out.intersection) / static_cast<double>(out.high_count)
                       : 0.0;
    return out;
}

std::vector<std::string> read_country_list(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string(), 0, "cannot open file");
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::size_t begin = line.find_first_not_of(" \t");
        if (begin == std::string::npos || line[begin] == '#') continue;
        const std::size_t end = line.find_last_not_of(" \t") + 1;
        out.push_back(line.substr(begin, end - begin));
    }
    return out;
}

ClusterSizeStats cluster_size_stats(const Clustering<double>& clustering) {
    ClusterSizeStats out;
    out.sizes.assign(static_cast<std::size_t>(clustering.k), 0);
    for (int a : clustering.assignments) ++out.sizes[static_cast<std::size_t>(a)];
    std::vector<double> sizes(out.sizes.begin(), out.sizes.end());
    out.mean = mean(sizes);
    out.std = sample_std(sizes);
    return out;
}

} // namespace dietclust::pipeline
