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
#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dariq/normalize.hpp"
#include "dariq/records.hpp"

namespace dariq {

inline constexpr std::string_view kUnknownProvince = "UNKNOWN";

/// The 34 canonical provinces plus spelling aliases. Lookups go through
/// normalized_key and ASCII case folding, so "Herat", "herat" and "هرات"
/// all resolve to "Herat".
class ProvinceTable {
public:
    /// CSV with header id,name,aliases; aliases separated by '|'.
    static ProvinceTable parse_csv(std::string_view text, const NormalizationProfile& profile,
                                   const std::string& source = "provinces.csv");
    static ProvinceTable load_csv(const std::filesystem::path& path, const NormalizationProfile& profile);
    /// Table shipped in data/provinces.csv.
    static ProvinceTable defaults(const NormalizationProfile& profile);

    /// Canonical id, or kUnknownProvince.
    std::string canonicalize(std::string_view spelling) const;
    const std::vector<std::pair<std::string, std::string>>& provinces() const noexcept { return provinces_; }

private:
    std::string fold(std::string_view spelling) const;

    NormalizationProfile profile_;
    std::vector<std::pair<std::string, std::string>> provinces_;  // (id, native name)
    std::map<std::string, std::string> aliases_;                  // folded spelling -> id
};

struct MatchKey {
    std::string first_key;
    std::string father_key;
    std::string school_key;
    std::string province_key;
    int year = 0;

    auto operator<=>(const MatchKey&) const = default;
    std::string to_string() const;
};

/// Builds the composite join key. Throws Error(MissingComponent) naming the
/// first blank component. An unrecognized province yields
/// province_key == kUnknownProvince; the join treats such rows as unmatched.
MatchKey composite_key(const PersonRecord& record, const NormalizationProfile& profile,
                       const ProvinceTable& provinces);
MatchKey composite_key(const SchoolRecord& record, const NormalizationProfile& profile,
                       const ProvinceTable& provinces);

struct Unmatched {
    std::string id;
    std::string reason;  // "no partner" or the missing component

    bool operator==(const Unmatched&) const = default;
};

struct Collision {
    std::string key;
    std::vector<std::string> ids_left;
    std::vector<std::string> ids_right;

    bool operator==(const Collision&) const = default;
};

struct LinkageResult {
    std::vector<std::pair<std::string, std::string>> matched;  // (left id, right id), left file order
    std::vector<Unmatched> unmatched_left;
    std::vector<Unmatched> unmatched_right;
    std::vector<Collision> collisions;  // ordered by key

    std::string matches_csv() const;
    std::string to_json() const;
};

/// A row reduced to its id and key (or the reason it has none).
struct KeyedRow {
    std::string id;
    std::optional<MatchKey> key;
    std::string missing;
};

/// Hash join on MatchKey. A key held by exactly one row on each side is a
/// match; a key held by two or more rows on either side is a collision and
/// all its rows go there; everything else is unmatched.
LinkageResult join_keyed(std::span<const KeyedRow> left, std::span<const KeyedRow> right);

template <class Record>
std::vector<KeyedRow> key_rows(const Dataset<Record>& dataset, const NormalizationProfile& profile,
                               const ProvinceTable& provinces, unsigned jobs = 1);

template <class Left, class Right>
LinkageResult exact_join(const Dataset<Left>& left, const Dataset<Right>& right,
                         const NormalizationProfile& profile, const ProvinceTable& provinces, unsigned jobs = 1) {
    const auto l = key_rows(left, profile, provinces, jobs);
    const auto r = key_rows(right, profile, provinces, jobs);
    return join_keyed(l, r);
}

extern template std::vector<KeyedRow> key_rows(const PersonDataset&, const NormalizationProfile&,
                                               const ProvinceTable&, unsigned);
extern template std::vector<KeyedRow> key_rows(const SchoolDataset&, const NormalizationProfile&,
                                               const ProvinceTable&, unsigned);

/// Sørensen-Dice over codepoint multisets: 2|A∩B| / (|A|+|B|); 1 when both
/// are empty. Anagrams score 1.
double dice_similarity(std::string_view a, std::string_view b);

/// 1 - levenshtein(a, b) / max(|a|, |b|) over codepoints; 1 when both are empty.
double edit_ratio(std::string_view a, std::string_view b);

std::size_t levenshtein(std::u32string_view a, std::u32string_view b);

struct PitfallEntry {
    std::string a;
    std::string b;
    double dice = 0;
    double edit = 0;
    bool keys_equal = false;
    bool dice_false_positive = false;
    bool edit_false_positive = false;

    bool flagged() const noexcept { return dice_false_positive || edit_false_positive; }
};

struct PitfallReport {
    double threshold = 0;
    std::vector<PitfallEntry> entries;

    std::size_t flagged_count() const;
    std::string to_json() const;
};

/// Scores each pair both ways and flags a score at or above `threshold`
/// whose normalized keys nonetheless differ.
PitfallReport audit_fuzzy_pitfalls(std::span<const std::pair<std::string, std::string>> pairs, double threshold,
                                   const NormalizationProfile& profile);

}  // namespace dariq
