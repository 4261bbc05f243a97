#pragma once

#include "dietclust/numerics.hpp"
#include "dietclust/pipeline/dataset.hpp"

namespace dietclust::pipeline {

enum class MissingPolicy { impute_mean, drop_rows };

struct CleaningPolicy {
    MissingPolicy missing = MissingPolicy::impute_mean;
    /// "<b" undernourished values resolve to censored_fraction * b
    /// (0.5 puts "<2.5" at the interval midpoint 1.25).
    double censored_fraction = 0.5;
};

struct CleaningReport {
    std::vector<std::string> dropped_countries; ///< drop_rows policy victims
    struct Imputation {
        std::string country;
        std::string feature;
        double value;
    };
    std::vector<Imputation> imputations;
    std::vector<std::string> dropped_constant_features;
    std::vector<std::string> dropped_empty_features; ///< no present value at all
    struct CensorResolution {
        std::string country;
        double bound;
        double value;
    };
    std::vector<CensorResolution> censored;
    bool empty() const {
        return dropped_countries.empty() && imputations.empty() && dropped_constant_features.empty()
               && dropped_empty_features.empty() && censored.empty();
    }
};

struct CleanResult {
    Matrix features; ///< rows align with records, no NaN, no constant column
    std::vector<std::string> feature_names;
    std::vector<CountryRecord> records; ///< cleaned copies (censored values resolved)
    CleaningReport report;
};

/// Applies the missing-data policy to the food features, resolves censored
/// undernourished values, and drops constant columns (they carry no signal
/// and standardization cannot scale them). Every change lands in the report.
CleanResult clean(const CountryTable& table, const CleaningPolicy& policy = {});

} // namespace dietclust::pipeline
