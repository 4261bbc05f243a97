#include "dietclust/pipeline/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

#include "dietclust/pipeline/csv.hpp"
#include "dietclust/rng.hpp"

namespace dietclust::pipeline {

namespace {

const std::vector<std::string>& roster() {
    static const std::vector<std::string> names = {
        "Afghanistan", "Albania", "Algeria", "Angola", "Antigua and Barbuda", "Argentina",
        "Armenia", "Australia", "Austria", "Azerbaijan", "Bahamas", "Bahrain", "Bangladesh",
        "Barbados", "Belarus", "Belgium", "Belize", "Benin", "Bolivia",
        "Bosnia and Herzegovina", "Botswana", "Brazil", "Bulgaria", "Burkina Faso",
        "Cabo Verde", "Cambodia", "Cameroon", "Canada", "Central African Republic", "Chad",
        "Chile", "China", "Colombia", "Congo", "Costa Rica", "Cote d'Ivoire", "Croatia",
        "Cuba", "Cyprus", "Czech Republic", "Democratic Republic of the Congo", "Denmark",
        "Djibouti", "Dominica", "Dominican Republic", "Ecuador", "Egypt", "El Salvador",
        "Estonia", "Eswatini", "Ethiopia", "Fiji", "Finland", "France", "Gabon", "Gambia",
        "Georgia", "Germany", "Ghana", "Greece", "Grenada", "Guatemala", "Guinea",
        "Guinea-Bissau", "Guyana", "Haiti", "Honduras", "Hungary", "Iceland", "India",
        "Indonesia", "Iran", "Iraq", "Ireland", "Israel", "Italy", "Jamaica", "Japan",
        "Jordan", "Kazakhstan", "Kenya", "Kuwait", "Kyrgyzstan", "Laos", "Latvia", "Lebanon",
        "Lesotho", "Liberia", "Lithuania", "Luxembourg", "Madagascar", "Malawi", "Malaysia",
        "Maldives", "Mali", "Malta", "Mauritania", "Mauritius", "Mexico", "Moldova",
        "Mongolia", "Montenegro", "Morocco", "Mozambique", "Myanmar", "Namibia", "Nepal",
        "Netherlands", "New Zealand", "Nicaragua", "Niger", "Nigeria", "North Korea",
        "North Macedonia", "Norway", "Oman", "Pakistan", "Panama", "Paraguay", "Peru",
        "Philippines", "Poland", "Portugal", "Qatar", "Romania", "Russia", "Rwanda",
        "Saint Kitts and Nevis", "Saint Lucia", "Saint Vincent and the Grenadines", "Samoa",
        "Saudi Arabia", "Senegal", "Serbia", "Sierra Leone", "Slovakia", "Slovenia",
        "Solomon Islands", "South Africa", "South Korea", "Spain", "Sri Lanka", "Sudan",
        "Suriname", "Sweden", "Switzerland", "Syria", "Taiwan*", "Tajikistan", "Tanzania",
        "Thailand", "Timor-Leste", "Togo", "Trinidad and Tobago", "Tunisia", "Turkey",
        "Turkmenistan", "Uganda", "Ukraine", "United Arab Emirates", "United Kingdom",
        "United States of America", "Uruguay", "Uzbekistan", "Vanuatu", "Venezuela",
        "Vietnam", "Yemen", "Zambia", "Zimbabwe"};
    if (names.size() != 170) throw std::logic_error("fixture roster drifted from 170 entries");
    return names;
}

const std::vector<std::string>& base_categories() {
    static const std::vector<std::string> cats = {
        "Alcoholic Beverages", "Animal Products", "Animal fats", "Aquatic Products, Other",
        "Cereals - Excluding Beer", "Eggs", "Fish, Seafood", "Fruits - Excluding Wine",
        "Meat", "Milk - Excluding Butter", "Miscellaneous", "Offals", "Oilcrops", "Pulses",
        "Spices", "Starchy Roots", "Stimulants", "Sugar & Sweeteners", "Sugar Crops",
        "Treenuts", "Vegetable Oils", "Vegetables", "Vegetal Products"};
    return cats;
}

double category_base(const std::string& cat) {
    static const std::map<std::string, double> table = {
        {"Alcoholic Beverages", 2.5}, {"Animal Products", 20.0}, {"Animal fats", 3.5},
        {"Aquatic Products, Other", 0.1}, {"Cereals - Excluding Beer", 22.0}, {"Eggs", 1.5},
        {"Fish, Seafood", 2.5}, {"Fruits - Excluding Wine", 5.0}, {"Infant food", 0.05},
        {"Meat", 6.0}, {"Milk - Excluding Butter", 8.0}, {"Miscellaneous", 0.6},
        {"Offals", 0.5}, {"Oilcrops", 1.8}, {"Pulses", 2.2}, {"Spices", 0.4},
        {"Starchy Roots", 5.0}, {"Stimulants", 0.8}, {"Sugar & Sweeteners", 7.0},
        {"Sugar Crops", 0.3}, {"Treenuts", 0.5}, {"Vegetable Oils", 5.0},
        {"Vegetables", 6.0}, {"Vegetal Products", 9.0}};
    return table.at(cat);
}

// How strongly the development score pushes the category up or down. Animal
// products and sugar track wealth, cereals and roots track its absence.
double development_weight(const std::string& cat) {
    static const std::map<std::string, double> table = {
        {"Alcoholic Beverages", 0.8}, {"Animal Products", 2.2}, {"Animal fats", 2.0},
        {"Aquatic Products, Other", 0.0}, {"Cereals - Excluding Beer", -2.0}, {"Eggs", 1.2},
        {"Fish, Seafood", 0.3}, {"Fruits - Excluding Wine", -0.1}, {"Infant food", 0.0},
        {"Meat", 1.8}, {"Milk - Excluding Butter", 1.8}, {"Miscellaneous", 0.2},
        {"Offals", -0.6}, {"Oilcrops", -0.5}, {"Pulses", -1.2}, {"Spices", -0.4},
        {"Starchy Roots", -1.6}, {"Stimulants", 0.6}, {"Sugar & Sweeteners", 1.4},
        {"Sugar Crops", -0.2}, {"Treenuts", 0.4}, {"Vegetable Oils", 0.3},
        {"Vegetables", -0.3}, {"Vegetal Products", -2.2}};
    return table.at(cat);
}

struct SourceLayout {
    std::string label;
    std::string file;
    std::vector<std::string> categories;
};

std::vector<SourceLayout> source_layouts() {
    std::vector<std::string> with_infant = base_categories();
    with_infant.insert(with_infant.begin() + 8, "Infant food"); // keeps alphabetical order
    return {
        {"fat", "Fat_Supply_Quantity_Data.csv", base_categories()},
        {"kg", "Food_Supply_Quantity_kg_Data.csv", with_infant},
        {"kcal", "Food_Supply_kcal_Data.csv", with_infant},
        {"protein", "Protein_Supply_Quantity_Data.csv", base_categories()},
    };
}

// A couple of sources spell a few countries differently; the loader's name
// normalization has to bridge them for the join to keep all 170.
std::string spelling_for(const std::string& label, const std::string& canonical) {
    if (label == "kg" && canonical == "Czech Republic") return "Czechia";
    if (label == "kcal" && canonical == "Vietnam") return "Viet Nam";
    if (label == "protein" && canonical == "United States of America") return "United States";
    return canonical;
}

// FAOSTAT-style long names in the kcal reference file.
std::string reference_spelling(const std::string& canonical) {
    static const std::map<std::string, std::string> table = {
        {"South Korea", "Republic of Korea"},
        {"Russia", "Russian Federation"},
        {"Vietnam", "Viet Nam"},
        {"Iran", "Iran (Islamic Republic of)"},
        {"Bolivia", "Bolivia (Plurinational State of)"},
        {"Venezuela", "Venezuela (Bolivarian Republic of)"},
        {"Tanzania", "United Republic of Tanzania"},
        {"Syria", "Syrian Arab Republic"},
        {"Laos", "Lao People's Democratic Republic"},
        {"Moldova", "Republic of Moldova"},
        {"Taiwan*", "China, Taiwan Province of"},
        {"United Kingdom", "United Kingdom of Great Britain and Northern Ireland"},
    };
    const auto it = table.find(canonical);
    return it == table.end() ? canonical : it->second;
}

// Johns-Hopkins-style short names in the top-deaths list.
std::string csse_spelling(const std::string& canonical) {
    static const std::map<std::string, std::string> table = {
        {"United States of America", "US"},
        {"South Korea", "Korea, South"},
        {"Myanmar", "Burma"},
        {"Czech Republic", "Czechia"},
        {"Democratic Republic of the Congo", "Congo (Kinshasa)"},
        {"Congo", "Congo (Brazzaville)"},
        {"Cabo Verde", "Cape Verde"},
    };
    const auto it = table.find(canonical);
    return it == table.end() ? canonical : it->second;
}

struct CountryDraw {
    std::string name;
    double dev = 0;
    std::vector<double> features; ///< global order: fat, kg, kcal, protein blocks
    double obesity = 0, undernourished = 0, confirmed = 0, deaths = 0, recovered = 0,
           active = 0, population = 0, kcal = 0;
    bool censor_under = false;
    bool blank_under = false;
    bool blank_covid = false;
    std::set<std::size_t> blank_features;
};

constexpr int kFactors = 23;

std::string round4(double v) { return format_double(std::round(v * 1e4) / 1e4); }
std::string round1(double v) { return format_double(std::round(v * 10) / 10); }

CountryDraw draw_country(const FixtureSpec& spec, std::size_t index, const std::string& name,
                         const std::vector<std::vector<double>>& loadings) {
    CountryDraw c;
    c.name = name;
    SplitMix64 rng(derive_seed(spec.seed, 100 + index));

    c.dev = rng.next_double();
    std::vector<double> z(kFactors);
    z[0] = 2.0 * c.dev - 1.0;
    for (int f = 1; f < kFactors; ++f) z[f] = rng.next_gaussian();

    const std::size_t d = loadings.size();
    c.features.resize(d);
    for (std::size_t j = 0; j < d; ++j) {
        double t = 1.15 * rng.next_gaussian();
        for (int f = 0; f < kFactors; ++f) t += loadings[j][f] * z[f];
        const double base = loadings[j].back(); // slot kFactors holds the base level
        c.features[j] = std::max(base * (1.0 + 0.08 * t), 0.02 * base);
    }

    c.confirmed = std::min(8.0 * std::pow(c.dev, 1.6) * std::exp(0.5 * rng.next_gaussian()), 15.0);
    c.deaths =
        0.0015 + std::min(0.11 * std::pow(c.dev, 2.2) * std::exp(0.45 * rng.next_gaussian()), 0.5);
    c.deaths = std::min(c.deaths, 0.9 * c.confirmed);
    c.recovered = c.confirmed * (0.45 + 0.4 * rng.next_double());
    c.active = std::max(c.confirmed - c.recovered - c.deaths, 0.0);
    c.obesity = std::clamp(3.5 + 28.0 * c.dev + 2.0 * rng.next_gaussian(), 1.0, 45.0);
    c.undernourished = std::max(1.0 + 38.0 * std::pow(1.0 - c.dev, 2.0) + 2.0 * rng.next_gaussian(), 0.4);
    c.censor_under = c.undernourished < 2.5;
    c.population = std::round(2e5 * std::exp(4.2 * rng.next_double()));
    c.kcal = 2080.0 + 1320.0 * c.dev + 90.0 * rng.next_gaussian();
    return c;
}

CountryDraw draw_blob_country(const FixtureSpec& spec, std::size_t index, const std::string& name,
                              const std::vector<std::vector<double>>& centers) {
    CountryDraw c;
    c.name = name;
    SplitMix64 rng(derive_seed(spec.seed, 100 + index));
    const std::size_t b = index % centers.size();
    const std::size_t d = centers[b].size();
    c.features.resize(d);
    for (std::size_t j = 0; j < d; ++j) c.features[j] = centers[b][j] + rng.next_gaussian();

    const double lift = static_cast<double>(b);
    c.confirmed = std::max(2.0 + 3.0 * lift + 0.2 * rng.next_gaussian(), 0.1);
    c.deaths = std::max((0.02 + 0.08 * lift) * (1.0 + 0.1 * rng.next_gaussian()), 0.001);
    c.deaths = std::min(c.deaths, 0.9 * c.confirmed);
    c.recovered = c.confirmed * 0.6;
    c.active = std::max(c.confirmed - c.recovered - c.deaths, 0.0);
    c.obesity = std::max(5.0 + 8.0 * lift + rng.next_gaussian(), 1.0);
    c.undernourished = std::max(20.0 - 6.0 * lift + rng.next_gaussian(), 0.4);
    c.censor_under = c.undernourished < 2.5;
    c.population = std::round(2e5 * std::exp(4.2 * rng.next_double()));
    c.kcal = 2200.0 + 300.0 * lift + 50.0 * rng.next_gaussian();
    return c;
}

void write_source(const std::filesystem::path& path, const SourceLayout& layout,
                  std::size_t feature_offset, const std::vector<CountryDraw>& countries,
                  const std::vector<std::size_t>& order) {
    std::vector<std::string> header;
    header.push_back("Country");
    for (const std::string& cat : layout.categories) header.push_back(cat);
    for (const char* name : {"Obesity", "Undernourished", "Confirmed", "Deaths", "Recovered",
                             "Active", "Population"})
        header.push_back(name);
    header.push_back("Unit (all except Population)");

    std::vector<std::vector<std::string>> rows;
    for (std::size_t idx : order) {
        const CountryDraw& c = countries[idx];
        std::vector<std::string> row;
        row.push_back(spelling_for(layout.label, c.name));
        for (std::size_t j = 0; j < layout.categories.size(); ++j) {
            const std::size_t global = feature_offset + j;
            row.push_back(c.blank_features.count(global) ? "" : round4(c.features[global]));
        }
        row.push_back(round4(c.obesity));
        if (c.blank_under)
            row.push_back("");
        else if (c.censor_under)
            row.push_back("<2.5");
        else
            row.push_back(round4(c.undernourished));
        for (double v : {c.confirmed, c.deaths, c.recovered, c.active})
            row.push_back(c.blank_covid ? "" : round4(v));
        row.push_back(format_double(c.population));
        row.push_back("%");
        rows.push_back(std::move(row));
    }
    write_csv(path, header, rows);
}

} // namespace

const std::vector<std::string>& fixture_countries() { return roster(); }

FixturePaths write_fixture(const std::filesystem::path& dir, const FixtureSpec& spec) {
    std::filesystem::create_directories(dir);
    const std::vector<SourceLayout> layouts = source_layouts();
    std::size_t total_features = 0;
    for (const SourceLayout& l : layouts) total_features += l.categories.size();

    const bool blobs = spec.blob_count > 0;
    std::size_t n = blobs ? 90 : roster().size();
    if (spec.countries > 0) n = std::min<std::size_t>(spec.countries, roster().size());

    std::vector<CountryDraw> countries;
    if (blobs) {
        std::vector<std::vector<double>> centers(spec.blob_count);
        for (int b = 0; b < spec.blob_count; ++b) {
            SplitMix64 crng(derive_seed(spec.seed, 40 + b));
            centers[b].resize(total_features);
            for (double& v : centers[b]) v = 20.0 + 60.0 * crng.next_double();
        }
        for (std::size_t i = 0; i < n; ++i)
            countries.push_back(draw_blob_country(spec, i, roster()[i], centers));
    } else {
        // Per-feature factor loadings; slot kFactors carries the base level so
        // draw_country gets everything in one table.
        std::vector<std::vector<double>> loadings(total_features);
        SplitMix64 lrng(derive_seed(spec.seed, 7));
        std::size_t j = 0;
        for (const SourceLayout& l : layouts) {
            for (const std::string& cat : l.categories) {
                loadings[j].resize(kFactors + 1);
                for (int f = 0; f < kFactors; ++f) loadings[j][f] = lrng.next_gaussian();
                loadings[j][0] = 2.0 * development_weight(cat) + 0.4 * loadings[j][0];
                loadings[j][kFactors] = category_base(cat);
                ++j;
            }
        }
        for (std::size_t i = 0; i < n; ++i)
            countries.push_back(draw_country(spec, i, roster()[i], loadings));
        // one extra row only the fat file carries, so the join has to drop it
        countries.push_back(draw_country(spec, n, "South Sudan", loadings));

        SplitMix64 mrng(derive_seed(spec.seed, 3));
        for (int hole = 0; hole < 8; ++hole) {
            const std::size_t ci = mrng.next_below(n);
            countries[ci].blank_features.insert(mrng.next_below(total_features));
        }
        for (int hole = 0; hole < 2; ++hole) countries[mrng.next_below(n)].blank_under = true;
        countries[mrng.next_below(n)].blank_covid = true;
    }

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::vector<std::size_t> fat_order = order;
    if (!blobs) fat_order.push_back(n); // South Sudan

    FixturePaths paths;
    std::size_t offset = 0;
    std::filesystem::path* slots[] = {&paths.fat, &paths.kg, &paths.kcal, &paths.protein};
    for (std::size_t s = 0; s < layouts.size(); ++s) {
        *slots[s] = dir / layouts[s].file;
        write_source(*slots[s], layouts[s], offset, countries,
                     layouts[s].label == "fat" ? fat_order : order);
        offset += layouts[s].categories.size();
    }

    if (!blobs) {
        paths.kcal_reference = dir / "kcal_reference.csv";
        std::vector<std::vector<std::string>> rows;
        for (std::size_t i = 0; i < n; ++i)
            rows.push_back({reference_spelling(countries[i].name), round1(countries[i].kcal)});
        rows.push_back({"Netherlands Antilles", "2500"});
        write_csv(paths.kcal_reference, {"Country", "KcalPerDay"}, rows);

        paths.top_deaths = dir / "top_deaths.txt";
        std::vector<std::size_t> ranked;
        for (std::size_t i = 0; i < n; ++i)
            if (!countries[i].blank_covid) ranked.push_back(i);
        std::sort(ranked.begin(), ranked.end(), [&](std::size_t a, std::size_t b) {
            if (countries[a].deaths != countries[b].deaths)
                return countries[a].deaths > countries[b].deaths;
            return countries[a].name < countries[b].name;
        });
        if (ranked.size() > 30) ranked.resize(30);
        std::string text = "# 30 highest reported death rates\n";
        for (std::size_t i : ranked) text += csse_spelling(countries[i].name) + "\n";
        std::ofstream out(dir / "top_deaths.txt", std::ios::binary);
        out << text;
    }
    return paths;
}

} // namespace dietclust::pipeline
