#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dietclust/errors.hpp"

namespace dietclust::pipeline {

struct CountryRecord {
    std::string country; ///< display name (spelling of the first source)
    std::string key;     ///< normalized join key, unique within a table
    std::vector<double> food; ///< one value per feature_names entry, NaN = missing

    std::optional<double> obesity;
    std::optional<double> undernourished; ///< bound when censored, else the value
    bool undernourished_censored = false; ///< source said "<x"
    std::optional<double> confirmed;
    std::optional<double> deaths;
    std::optional<double> recovered;
    std::optional<double> active;
    std::optional<double> population;
    std::optional<double> kcal_per_day;   ///< from the reference file, if joined
};

struct JoinReport {
    std::map<std::string, std::vector<std::string>> dropped; ///< source label -> country names
    std::vector<std::string> unmatched_kcal_reference;       ///< reference rows with no table row
    std::size_t matched = 0;
};

struct CountryTable {
    std::vector<std::string> feature_names; ///< source-prefixed, e.g. "fat:Meat"
    std::vector<CountryRecord> records;     ///< sorted by key
    JoinReport join;
};

/// Reads the four per-source food CSVs, inner-joins them on the normalized
/// country name and concatenates each source's category columns into one
/// feature vector per country (columns prefixed fat:, kg:, kcal:, protein:).
/// Outcome columns (obesity .. population) come from the fat file. The
/// optional reference CSV (Country, KcalPerDay) fills kcal_per_day.
CountryTable load_dataset(const std::filesystem::path& fat_csv,
                          const std::filesystem::path& kg_csv,
                          const std::filesystem::path& kcal_csv,
                          const std::filesystem::path& protein_csv,
                          const std::optional<std::filesystem::path>& kcal_reference = {});

} // namespace dietclust::pipeline
