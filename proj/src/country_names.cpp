#include "dietclust/pipeline/country_names.hpp"

#include <cctype>
#include <unordered_map>

namespace dietclust::pipeline {

namespace {

// Latin-1 supplement accents that appear in country names (UTF-8 0xC3 xx).
char fold_latin1(unsigned char second) {
    switch (second) {
    case 0xA0: case 0xA1: case 0xA2: case 0xA3: case 0xA4: case 0xA5:
    case 0x80: case 0x81: case 0x82: case 0x83: case 0x84: case 0x85: return 'a';
    case 0xA7: case 0x87: return 'c';
    case 0xA8: case 0xA9: case 0xAA: case 0xAB:
    case 0x88: case 0x89: case 0x8A: case 0x8B: return 'e';
    case 0xAC: case 0xAD: case 0xAE: case 0xAF:
    case 0x8C: case 0x8D: case 0x8E: case 0x8F: return 'i';
    case 0xB1: case 0x91: return 'n';
    case 0xB2: case 0xB3: case 0xB4: case 0xB5: case 0xB6:
    case 0x92: case 0x93: case 0x94: case 0x95: case 0x96: return 'o';
    case 0xB9: case 0xBA: case 0xBB: case 0xBC:
    case 0x99: case 0x9A: case 0x9B: case 0x9C: return 'u';
    case 0xBD: case 0x9D: return 'y';
    default: return 0;
    }
}

const std::unordered_map<std::string, std::string>& alias_table() {
    static const std::unordered_map<std::string, std::string> table = {
        {"us", "united states of america"},
        {"usa", "united states of america"},
        {"united states", "united states of america"},
        {"uk", "united kingdom"},
        {"great britain", "united kingdom"},
        {"united kingdom of great britain and northern ireland", "united kingdom"},
        {"korea, south", "south korea"},
        {"republic of korea", "south korea"},
        {"korea (republic of)", "south korea"},
        {"korea, north", "north korea"},
        {"democratic people's republic of korea", "north korea"},
        {"russian federation", "russia"},
        {"viet nam", "vietnam"},
        {"iran (islamic republic of)", "iran"},
        {"islamic republic of iran", "iran"},
        {"bolivia (plurinational state of)", "bolivia"},
        {"venezuela (bolivarian republic of)", "venezuela"},
        {"united republic of tanzania", "tanzania"},
        {"syrian arab republic", "syria"},
        {"lao people's democratic republic", "laos"},
        {"lao pdr", "laos"},
        {"republic of moldova", "moldova"},
        {"macedonia", "north macedonia"},
        {"the former yugoslav republic of macedonia", "north macedonia"},
        {"czechia", "czech republic"},
        {"slovak republic", "slovakia"},
        {"kyrgyz republic", "kyrgyzstan"},
        {"burma", "myanmar"},
        {"cape verde", "cabo verde"},
        {"ivory coast", "cote d'ivoire"},
        {"congo (brazzaville)", "congo"},
        {"republic of the congo", "congo"},
        {"congo (kinshasa)", "democratic republic of the congo"},
        {"egypt, arab rep", "egypt"},
        {"gambia, the", "gambia"},
        {"the gambia", "gambia"},
        {"bahamas, the", "bahamas"},
        {"the bahamas", "bahamas"},
        {"st kitts and nevis", "saint kitts and nevis"},
        {"st lucia", "saint lucia"},
        {"st vincent and the grenadines", "saint vincent and the grenadines"},
        {"swaziland", "eswatini"},
        {"east timor", "timor-leste"},
        {"timor leste", "timor-leste"},
        {"brunei darussalam", "brunei"},
        {"china, taiwan province of", "taiwan"},
        {"taiwan province of china", "taiwan"},
        {"china, hong kong sar", "hong kong"},
        {"hong kong sar, china", "hong kong"},
        {"china, macao sar", "macao"},
        {"burkina", "burkina faso"},
    };
    return table;
}

} // namespace

std::string normalize_country(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const unsigned char c = static_cast<unsigned char>(raw[i]);
        char mapped = 0;
        if (c == 0xC3 && i + 1 < raw.size()) {
            mapped = fold_latin1(static_cast<unsigned char>(raw[i + 1]));
            if (mapped) ++i;
        }
        if (!mapped) {
            if (c == 0xE2 && i + 2 < raw.size() && static_cast<unsigned char>(raw[i + 1]) == 0x80
                && static_cast<unsigned char>(raw[i + 2]) == 0x99) {
                mapped = '\'';  // curly apostrophe
                i += 2;
            } else if (c == '*' || c == '.' || c == '"') {
                continue;
            } else if (std::isspace(c)) {
                pending_space = true;
                continue;
            } else {
                mapped = static_cast<char>(std::tolower(c));
            }
        }
        if (pending_space && !out.empty()) out += ' ';
        pending_space = false;
        out += mapped;
    }

    const auto& aliases = alias_table();
    if (auto it = aliases.find(out); it != aliases.end()) return it->second;
    return out;
}

} // namespace dietclust::pipeline
