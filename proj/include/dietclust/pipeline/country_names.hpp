#pragma once

#include <string>
#include <string_view>

namespace dietclust::pipeline {

/// Join key for a country name: trim, casefold, strip diacritics and
/// punctuation noise, collapse whitespace, then map known aliases (US ==
/// United States of America, Korea, South == South Korea, ...) to one
/// canonical form. Different sources spell the same country differently;
/// every join and lookup goes through this.
std::string normalize_country(std::string_view raw);

} // namespace dietclust::pipeline
