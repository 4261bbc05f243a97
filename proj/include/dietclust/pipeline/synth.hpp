#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace dietclust::pipeline {

/// Deterministic stand-in for the public country/diet dataset: 170 countries,
/// 94 food features across the four source files, outcome columns with
/// censored and missing entries, a kcal reference file and a top-deaths list.
/// Food profiles follow a latent-factor model whose first factor tracks a
/// per-country development score; mortality outcomes rise with the same
/// score, so diet structure and death rates correlate the way the real
/// dataset's do.
struct FixtureSpec {
    std::uint64_t seed = 4242;
    /// 0 = realistic diet mode. Otherwise that many well-separated feature
    /// blobs (for planted-cluster tests); outcome columns still populated.
    int blob_count = 0;
    int countries = 0; ///< 0 = all 170 (diet) or 90 (blob mode)
};

struct FixturePaths {
    std::filesystem::path fat;
    std::filesystem::path kg;
    std::filesystem::path kcal;
    std::filesystem::path protein;
    std::filesystem::path kcal_reference; ///< empty in blob mode
    std::filesystem::path top_deaths;     ///< empty in blob mode
};

FixturePaths write_fixture(const std::filesystem::path& dir, const FixtureSpec& spec = {});

/// The 170 display names the diet fixture uses (sorted as shipped, not by key).
const std::vector<std::string>& fixture_countries();

} // namespace dietclust::pipeline
