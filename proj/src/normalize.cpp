/*
    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        https://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.
*/
#include "dariq/normalize.hpp"

#include <cstdio>

#include <nlohmann/json.hpp>

#include "dariq/csv.hpp"
#include "dariq/embedded.hpp"
#include "dariq/error.hpp"
#include "dariq/utf8.hpp"

namespace dariq {

using json = nlohmann::json;

namespace {

std::string hex(char32_t cp) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "U+%04X", static_cast<unsigned>(cp));
    return buf;
}

}  // namespace

NormalizationProfile NormalizationProfile::defaults() {
    NormalizationProfile p;
    for (char32_t cp = 0; cp <= 31; ++cp) {
        p.nonprinting.insert(cp);
    }
    for (char32_t cp : {127, 129, 141, 143, 144, 157}) {
        p.nonprinting.insert(cp);
    }
    p.spaces = {0x20, 0xA0};
    p.substitutions = {{kArabicYeh, kFarsiYeh}};
    return p;
}

NormalizationProfile NormalizationProfile::with_arabic_kaf() const {
    NormalizationProfile p = *this;
    p.substitutions[kArabicKaf] = kKeheh;
    p.validate();
    return p;
}

void NormalizationProfile::validate() const {
    for (char32_t cp : spaces) {
        if (nonprinting.contains(cp)) {
            throw Error(ErrorCode::Config, hex(cp) + " is both a space and a nonprinting codepoint");
        }
    }
    if (nonprinting.contains(kSpace)) {
        throw Error(ErrorCode::Config, "U+0020 cannot be nonprinting");
    }
    for (const auto& [from, to] : substitutions) {
        if (nonprinting.contains(from) || is_space(from)) {
            throw Error(ErrorCode::Config, "substitution source " + hex(from) +
                                               " is a nonprinting or space codepoint");
        }
        if (nonprinting.contains(to) || is_space(to)) {
            throw Error(ErrorCode::Config, "substitution target " + hex(to) +
                                               " is a nonprinting or space codepoint");
        }
        if (from == kZwnj || to == kZwnj) {
            throw Error(ErrorCode::Config, "ZWNJ cannot take part in substitutions");
        }
        // Walk the chain; more steps than entries means a cycle.
        char32_t cur = from;
        std::size_t steps = 0;
        for (auto it = substitutions.find(cur); it != substitutions.end(); it = substitutions.find(cur)) {
            cur = it->second;
            if (++steps > substitutions.size()) {
                throw Error(ErrorCode::Config, "substitution map has a cycle through " + hex(from));
            }
        }
    }
}

char32_t NormalizationProfile::substitute(char32_t cp) const {
    for (auto it = substitutions.find(cp); it != substitutions.end(); it = substitutions.find(cp)) {
        cp = it->second;
    }
    return cp;
}

namespace {

JoinControlPolicy parse_policy(const json& j, const char* key, JoinControlPolicy fallback) {
    if (!j.contains(key)) {
        return fallback;
    }
    const auto s = j.at(key).get<std::string>();
    if (s == "keep") return JoinControlPolicy::Keep;
    if (s == "strip") return JoinControlPolicy::Strip;
    throw Error(ErrorCode::Config, std::string("'") + key + "' must be \"keep\" or \"strip\"");
}

std::set<char32_t> parse_codepoints(const json& arr, const char* key) {
    std::set<char32_t> out;
    for (const auto& v : arr) {
        const auto n = v.get<std::int64_t>();
        if (n < 0 || n > 0x10FFFF) {
            throw Error(ErrorCode::Config, std::string("'") + key + "' holds an out-of-range codepoint");
        }
        out.insert(static_cast<char32_t>(n));
    }
    return out;
}

}  // namespace

NormalizationProfile NormalizationProfile::from_json(std::string_view text) {
    NormalizationProfile p = defaults();
    try {
        const json j = json::parse(text);
        if (!j.is_object()) {
            throw Error(ErrorCode::Config, "normalization profile must be a JSON object");
        }
        if (j.contains("nonprinting")) p.nonprinting = parse_codepoints(j.at("nonprinting"), "nonprinting");
        if (j.contains("spaces")) p.spaces = parse_codepoints(j.at("spaces"), "spaces");
        if (j.contains("substitutions")) {
            p.substitutions.clear();
            for (const auto& pair : j.at("substitutions")) {
                if (!pair.is_array() || pair.size() != 2) {
                    throw Error(ErrorCode::Config, "each substitution must be a [from, to] pair");
                }
                p.substitutions[static_cast<char32_t>(pair[0].get<std::uint32_t>())] =
                    static_cast<char32_t>(pair[1].get<std::uint32_t>());
            }
        }
        p.display_join_control = parse_policy(j, "display_zwnj", p.display_join_control);
        p.key_join_control = parse_policy(j, "key_zwnj", p.key_join_control);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::Config, std::string("malformed normalization profile: ") + e.what());
    }
    p.validate();
    return p;
}

NormalizationProfile NormalizationProfile::load(const std::filesystem::path& path) {
    try {
        return from_json(csv::read_text_file(path));
    } catch (const Error& e) {
        if (e.code() == ErrorCode::Config) {
            throw Error(ErrorCode::Config, path.string() + ": " + e.what());
        }
        throw Error(ErrorCode::Config, e.what());
    }
}

std::string NormalizationProfile::to_json() const {
    json j;
    j["nonprinting"] = json::array();
    for (char32_t cp : nonprinting) j["nonprinting"].push_back(static_cast<std::uint32_t>(cp));
    j["spaces"] = json::array();
    for (char32_t cp : spaces) j["spaces"].push_back(static_cast<std::uint32_t>(cp));
    j["substitutions"] = json::array();
    for (const auto& [from, to] : substitutions) {
        j["substitutions"].push_back({static_cast<std::uint32_t>(from), static_cast<std::uint32_t>(to)});
    }
    auto name = [](JoinControlPolicy p) { return p == JoinControlPolicy::Keep ? "keep" : "strip"; };
    j["display_zwnj"] = name(display_join_control);
    j["key_zwnj"] = name(key_join_control);
    return j.dump(2);
}

// ---- codepoint primitives -------------------------------------------------

namespace {

std::u32string clean_with(std::u32string_view text, const NormalizationProfile& profile,
                          JoinControlPolicy zwnj) {
    std::u32string out;
    out.reserve(text.size());
    for (char32_t cp : text) {
        if (profile.nonprinting.contains(cp) || (cp == kZwnj && zwnj == JoinControlPolicy::Strip)) {
            continue;
        }
        out.push_back(profile.spaces.contains(cp) ? kSpace : cp);
    }
    return out;
}

}  // namespace

std::u32string clean(std::u32string_view text, const NormalizationProfile& profile) {
    return clean_with(text, profile, profile.display_join_control);
}

std::u32string substitute(std::u32string_view text, const NormalizationProfile& profile) {
    std::u32string out(text);
    if (profile.substitutions.empty()) {
        return out;
    }
    for (char32_t& cp : out) {
        cp = profile.substitute(cp);
    }
    return out;
}

std::u32string trim_builtin(std::u32string_view text) {
    std::u32string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size() && text[i] == kSpace) {
        ++i;
    }
    bool pending_space = false;
    for (; i < text.size(); ++i) {
        if (text[i] == kSpace) {
            pending_space = true;
            continue;
        }
        if (pending_space) {
            out.push_back(kSpace);
            pending_space = false;
        }
        out.push_back(text[i]);
    }
    return out;
}

std::u32string strip_all_spaces(std::u32string_view text, const NormalizationProfile& profile) {
    std::u32string out;
    out.reserve(text.size());
    for (char32_t cp : text) {
        if (!profile.is_space(cp)) {
            out.push_back(cp);
        }
    }
    return out;
}

std::u32string normalize(std::u32string_view text, const NormalizationProfile& profile) {
    return trim_builtin(substitute(clean(text, profile), profile));
}

std::u32string normalized_key(std::u32string_view text, const NormalizationProfile& profile) {
    return strip_all_spaces(substitute(clean_with(text, profile, profile.key_join_control), profile),
                            profile);
}

// ---- UTF-8 front ends -----------------------------------------------------

std::string clean(std::string_view text, const NormalizationProfile& profile) {
    return utf8::encode(clean(utf8::decode(text), profile));
}

std::string substitute(std::string_view text, const NormalizationProfile& profile) {
    return utf8::encode(substitute(utf8::decode(text), profile));
}

std::string trim_builtin(std::string_view text) {
    return utf8::encode(trim_builtin(utf8::decode(text)));
}

std::string strip_all_spaces(std::string_view text, const NormalizationProfile& profile) {
    return utf8::encode(strip_all_spaces(utf8::decode(text), profile));
}

std::string strip_all_spaces(std::string_view text) {
    static const NormalizationProfile profile = NormalizationProfile::defaults();
    return strip_all_spaces(text, profile);
}

std::string normalize(std::string_view text, const NormalizationProfile& profile) {
    return utf8::encode(normalize(utf8::decode(text), profile));
}

std::string normalized_key(std::string_view text, const NormalizationProfile& profile) {
    return utf8::encode(normalized_key(utf8::decode(text), profile));
}

// ---- lexicon ----------------------------------------------------------------

void Lexicon::add(std::string_view spelling, const NormalizationProfile& profile) {
    std::string key = normalized_key(spelling, profile);
    if (key.empty()) {
        throw Error(ErrorCode::InvalidArgument, "lexicon spelling is blank after normalization");
    }
    std::string canonical = normalize(spelling, profile);
    auto [it, inserted] = entries_.try_emplace(std::move(key), canonical);
    if (!inserted && it->second != canonical) {
        throw Error(ErrorCode::AmbiguousKey, "lexicon key '" + it->first + "' maps to both '" +
                                                 it->second + "' and '" + canonical + "'");
    }
}

Lexicon Lexicon::from_spellings(std::span<const std::string> spellings,
                                const NormalizationProfile& profile) {
    Lexicon lex;
    for (const auto& s : spellings) {
        lex.add(s, profile);
    }
    return lex;
}

Lexicon Lexicon::load_csv(const std::filesystem::path& path, const NormalizationProfile& profile) {
    return parse_csv(csv::read_text_file(path), profile, path.string());
}

Lexicon Lexicon::defaults(const NormalizationProfile& profile) {
    return parse_csv(embedded::file("lexicon.csv"), profile, "lexicon.csv");
}

Lexicon Lexicon::parse_csv(std::string_view text, const NormalizationProfile& profile, const std::string& source) {
    if (!utf8::is_valid(text)) {
        throw Error(ErrorCode::Encoding, source + ": invalid UTF-8");
    }
    Lexicon lex;
    const auto rows = csv::parse(text);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        const auto where = source + ":" + std::to_string(row.line);
        if (row.fields.size() == 1 && row.fields[0].empty()) {
            continue;
        }
        if (!row.error.empty() || row.fields.size() != 2) {
            throw Error(ErrorCode::Schema, where + ": expected two columns (key, canonical)");
        }
        if (i == 0 && row.fields[0] == "key" && row.fields[1] == "canonical") {
            continue;
        }
        const auto& key = row.fields[0];
        const auto& canonical = row.fields[1];
        if (!key.empty() && key != normalized_key(canonical, profile)) {
            throw Error(ErrorCode::Schema,
                        where + ": key '" + key + "' does not match the canonical spelling's key");
        }
        try {
            lex.add(canonical, profile);
        } catch (const Error& e) {
            throw Error(e.code(), where + ": " + e.what());
        }
    }
    return lex;
}

const std::string* Lexicon::find(std::string_view key) const {
    auto it = entries_.find(std::string(key));
    return it == entries_.end() ? nullptr : &it->second;
}

std::string tailored_trim(std::string_view text, const Lexicon& lexicon,
                          const NormalizationProfile& profile) {
    if (const auto* canonical = lexicon.find(normalized_key(text, profile))) {
        return *canonical;
    }
    return normalize(text, profile);
}

}  // namespace dariq
