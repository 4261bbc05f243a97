#include "dietclust/pipeline/clean.hpp"

#include <cmath>

#include "dietclust/stats.hpp"

namespace dietclust::pipeline {

CleanResult clean(const CountryTable& table, const CleaningPolicy& policy) {
    if (table.records.empty()) throw EmptyInput("country table");
    if (!(policy.censored_fraction >= 0.0 && policy.censored_fraction <= 1.0))
        throw InvalidConfig("censored_fraction must lie in [0, 1]");
    const std::size_t d = table.feature_names.size();
    for (const CountryRecord& rec : table.records)
        if (rec.food.size() != d)
            throw SchemaError("record '" + rec.country + "' has " + std::to_string(rec.food.size())
                              + " features, expected " + std::to_string(d));

    CleanResult out;

    std::vector<std::size_t> kept_rows;
    for (std::size_t r = 0; r < table.records.size(); ++r) {
        const CountryRecord& rec = table.records[r];
        const bool complete =
            std::none_of(rec.food.begin(), rec.food.end(), [](double v) { return std::isnan(v); });
        if (policy.missing == MissingPolicy::drop_rows && !complete) {
            out.report.dropped_countries.push_back(rec.country);
        } else {
            kept_rows.push_back(r);
        }
    }
    if (kept_rows.empty()) throw AllRowsDropped("every country has a missing food feature");

    for (std::size_t r : kept_rows) {
        CountryRecord rec = table.records[r];
        if (rec.undernourished_censored && rec.undernourished) {
            const double bound = *rec.undernourished;
            rec.undernourished = policy.censored_fraction * bound;
            out.report.censored.push_back({rec.country, bound, *rec.undernourished});
        }
        out.records.push_back(std::move(rec));
    }

    const std::size_t n = out.records.size();
    std::vector<std::size_t> kept_cols;
    std::vector<std::vector<double>> columns(d);
    for (std::size_t j = 0; j < d; ++j) {
        auto& col = columns[j];
        col.resize(n);
        std::vector<double> present;
        for (std::size_t i = 0; i < n; ++i) {
            col[i] = out.records[i].food[j];
            if (!std::isnan(col[i])) present.push_back(col[i]);
        }
        if (present.empty()) {
            out.report.dropped_empty_features.push_back(table.feature_names[j]);
            continue;
        }
        if (present.size() < n) {
            const double fill = mean(present);
            for (std::size_t i = 0; i < n; ++i)
                if (std::isnan(col[i])) {
                    col[i] = fill;
                    out.report.imputations.push_back(
                        {out.records[i].country, table.feature_names[j], fill});
                }
        }

        double max_abs = 0;
        for (double v : col) max_abs = std::max(max_abs, std::abs(v));
        if (n >= 2 && sigma_is_zero(sample_std(col), max_abs)) {
            out.report.dropped_constant_features.push_back(table.feature_names[j]);
            continue;
        }
        kept_cols.push_back(j);
    }
    if (kept_cols.empty()) throw DataError("cleaning removed every feature column");

    out.features.resize(static_cast<Index>(n), static_cast<Index>(kept_cols.size()));
    for (std::size_t jj = 0; jj < kept_cols.size(); ++jj) {
        out.feature_names.push_back(table.feature_names[kept_cols[jj]]);
        for (std::size_t i = 0; i < n; ++i)
            out.features(static_cast<Index>(i), static_cast<Index>(jj)) = columns[kept_cols[jj]][i];
    }
    return out;
}

} // namespace dietclust::pipeline
