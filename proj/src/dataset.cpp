#include "dietclust/pipeline/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <unordered_map>

#include "dietclust/pipeline/country_names.hpp"
#include "dietclust/pipeline/csv.hpp"

namespace dietclust::pipeline {

namespace {

constexpr const char* kOutcomeColumns[] = {
    "Obesity", "Undernourished", "Confirmed", "Deaths", "Recovered", "Active", "Population"};

struct Source {
    std::string label;
    CsvTable table;
    std::size_t country_col = 0;
    std::vector<std::size_t> feature_cols;
    std::unordered_map<std::string, std::size_t> by_key; ///< normalized name -> row
};

Source load_source(const std::string& label, const std::filesystem::path& path) {
    Source src;
    src.label = label;
    src.table = read_csv(path);
    src.country_col = require_column(src.table, "Country");
    for (const char* name : kOutcomeColumns) require_column(src.table, name);

    std::set<std::string> skip(std::begin(kOutcomeColumns), std::end(kOutcomeColumns));
    for (std::size_t i = 0; i < src.table.header.size(); ++i) {
        const std::string& name = src.table.header[i];
        if (i == src.country_col || skip.count(name)) continue;
        if (name.rfind("Unit", 0) == 0) continue;
        src.feature_cols.push_back(i);
    }
    if (src.feature_cols.empty())
        throw SchemaError(path.string() + ": no food category columns");

    for (std::size_t r = 0; r < src.table.rows.size(); ++r) {
        const std::string& raw = src.table.rows[r][src.country_col];
        const std::string key = normalize_country(raw);
        if (key.empty())
            throw ParseError(path.string(), src.table.row_lines[r], "empty country name");
        if (!src.by_key.emplace(key, r).second)
            throw SchemaError(path.string() + ": duplicate country '" + raw + "'");
    }
    return src;
}

double checked_percent(const std::optional<double>& v, const CsvTable& table, std::size_t row,
                       const std::string& column) {
    if (v && *v < 0)
        throw ParseError(table.source.string(), table.row_lines[row],
                         "column '" + column + "': negative value");
    return v ? *v : std::numeric_limits<double>::quiet_NaN();
}

std::optional<double> outcome(const CsvTable& table, std::size_t row, const std::string& column) {
    const auto v = parse_number(table.rows[row][*find_column(table, column)],
                                table.source, table.row_lines[row], column);
    if (v && *v < 0)
        throw ParseError(table.source.string(), table.row_lines[row],
                         "column '" + column + "': negative value");
    return v;
}

} // namespace

CountryTable load_dataset(const std::filesystem::path& fat_csv,
                          const std::filesystem::path& kg_csv,
                          const std::filesystem::path& kcal_csv,
                          const std::filesystem::path& protein_csv,
                          const std::optional<std::filesystem::path>& kcal_reference) {
    std::vector<Source> sources;
    sources.push_back(load_source("fat", fat_csv));
    sources.push_back(load_source("kg", kg_csv));
    sources.push_back(load_source("kcal", kcal_csv));
    sources.push_back(load_source("protein", protein_csv));

    CountryTable out;
    for (const Source& src : sources)
        for (std::size_t col : src.feature_cols)
            out.feature_names.push_back(src.label + ":" + src.table.header[col]);

    std::vector<std::string> shared;
    for (const auto& [key, row] : sources[0].by_key) {
        (void)row;
        bool everywhere = true;
        for (std::size_t s = 1; s < sources.size() && everywhere; ++s)
            everywhere = sources[s].by_key.count(key) > 0;
        if (everywhere) shared.push_back(key);
    }
    std::sort(shared.begin(), shared.end());
    if (shared.empty()) throw JoinError("no country appears in all four files");
    const std::set<std::string> shared_set(shared.begin(), shared.end());

    for (const Source& src : sources) {
        std::vector<std::string> dropped;
        for (std::size_t r = 0; r < src.table.rows.size(); ++r) {
            const std::string& raw = src.table.rows[r][src.country_col];
            if (!shared_set.count(normalize_country(raw))) dropped.push_back(raw);
        }
        std::sort(dropped.begin(), dropped.end());
        out.join.dropped[src.label] = std::move(dropped);
    }
    out.join.matched = shared.size();

    const CsvTable& fat = sources[0].table;
    for (const std::string& key : shared) {
        CountryRecord rec;
        rec.key = key;
        const std::size_t fat_row = sources[0].by_key.at(key);
        rec.country = fat.rows[fat_row][sources[0].country_col];

        for (const Source& src : sources) {
            const std::size_t r = src.by_key.at(key);
            for (std::size_t col : src.feature_cols) {
                const auto v = parse_number(src.table.rows[r][col], src.table.source,
                                            src.table.row_lines[r], src.table.header[col]);
                rec.food.push_back(checked_percent(v, src.table, r, src.table.header[col]));
            }
        }

        rec.obesity = outcome(fat, fat_row, "Obesity");
        rec.confirmed = outcome(fat, fat_row, "Confirmed");
        rec.deaths = outcome(fat, fat_row, "Deaths");
        rec.recovered = outcome(fat, fat_row, "Recovered");
        rec.active = outcome(fat, fat_row, "Active");
        rec.population = outcome(fat, fat_row, "Population");

        // Undernourished may be censored: "<2.5" means below 2.5
        {
            const std::string& field = fat.rows[fat_row][*find_column(fat, "Undernourished")];
            const std::size_t begin = field.find_first_not_of(" \t");
            if (begin != std::string::npos && field[begin] == '<') {
                rec.undernourished_censored = true;
                rec.undernourished = parse_number(field.substr(begin + 1), fat.source,
                                                  fat.row_lines[fat_row], "Undernourished");
                if (!rec.undernourished || *rec.undernourished < 0)
                    throw ParseError(fat.source.string(), fat.row_lines[fat_row],
                                     "column 'Undernourished': bad censored value '" + field + "'");
            } else {
                rec.undernourished = outcome(fat, fat_row, "Undernourished");
            }
        }

        out.records.push_back(std::move(rec));
    }

    if (kcal_reference) {
        const CsvTable ref = read_csv(*kcal_reference);
        const std::size_t country_col = require_column(ref, "Country");
        const std::size_t kcal_col = require_column(ref, "KcalPerDay");
        std::unordered_map<std::string, CountryRecord*> by_key;
        for (CountryRecord& rec : out.records) by_key[rec.key] = &rec;
        for (std::size_t r = 0; r < ref.rows.size(); ++r) {
            const std::string& raw = ref.rows[r][country_col];
            const auto it = by_key.find(normalize_country(raw));
            if (it == by_key.end()) {
                out.join.unmatched_kcal_reference.push_back(raw);
                continue;
            }
            it->second->kcal_per_day =
                parse_number(ref.rows[r][kcal_col], ref.source, ref.row_lines[r], "KcalPerDay");
        }
        std::sort(out.join.unmatched_kcal_reference.begin(),
                  out.join.unmatched_kcal_reference.end());
    }

    return out;
}

} // namespace dietclust::pipeline
