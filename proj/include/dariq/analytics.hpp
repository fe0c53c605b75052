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
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dariq/normalize.hpp"
#include "dariq/records.hpp"

namespace dariq {

/// How raw names are turned into aggregation keys.
///   Raw          the cell as stored
///   BuiltinTrim  normalize(): clean, substitute, spreadsheet trim
///   Stripped     normalized_key(): every space removed
enum class Keying { Raw, BuiltinTrim, Stripped };

Keying parse_keying(std::string_view name);
std::string_view to_string(Keying keying) noexcept;

/// Computes the aggregation key, or "" when the value counts as missing.
/// A value is missing under every keying when its normalized key is empty,
/// so all three keyings agree on which rows contribute.
std::string frequency_key(std::string_view raw, Keying keying, const NormalizationProfile& profile);

struct FrequencyEntry {
    std::size_t count = 0;
    std::map<std::string, std::size_t> spellings;  // raw spelling -> occurrences
    std::map<std::pair<Gender, std::string>, std::size_t> cells;  // (gender, normalized province)

    /// Modal raw spelling; ties go to the lexicographically least.
    const std::string& display() const;
    std::size_t count_for(std::optional<Gender> gender, const std::optional<std::string>& province) const;
    void merge(const FrequencyEntry& other);

    bool operator==(const FrequencyEntry&) const = default;
};

struct FrequencyTable {
    NameField field = NameField::FirstName;
    Keying keying = Keying::Stripped;
    std::map<std::string, FrequencyEntry> entries;
    std::size_t contributing_rows = 0;
    std::size_t missing_rows = 0;

    /// Commutative, associative union of counts.
    void merge(const FrequencyTable& other);

    bool operator==(const FrequencyTable&) const = default;
};

/// Counts one name column. `jobs` > 1 builds per-chunk tables on worker
/// threads and merges them; the result equals the single-threaded build.
FrequencyTable build_frequency_table(const PersonDataset& dataset, NameField field, Keying keying,
                                     const NormalizationProfile& profile, unsigned jobs = 1);

struct RankFilter {
    std::optional<Gender> gender;
    std::optional<std::string> province;  // matched against normalize(province)
};

struct RankedName {
    std::size_t rank = 0;  // 1-based
    std::string key;
    std::string display;
    std::size_t count = 0;

    bool operator==(const RankedName&) const = default;
};

/// Descending by count, ties by key in byte order. Entries with a zero
/// count under the filter are dropped. Throws Error(InvalidArgument) when
/// n is zero.
std::vector<RankedName> top_n(const FrequencyTable& table, std::size_t n, const RankFilter& filter = {},
                              const NormalizationProfile& profile = NormalizationProfile::defaults());

struct RankShift {
    std::string key;  // key in the `after` table
    std::string display;
    std::string before_key;  // highest-ranked `before` key folding into `key`
    std::size_t before_count = 0;
    std::size_t after_count = 0;
    std::optional<std::size_t> before_rank;
    std::optional<std::size_t> after_rank;
    bool entered_top_n = false;
    bool left_top_n = false;

    long long count_delta() const { return static_cast<long long>(after_count) - static_cast<long long>(before_count); }
    /// Positive when the name moved up.
    std::optional<long long> rank_delta() const;
};

struct RankShiftReport {
    std::size_t n = 0;
    std::vector<RankShift> shifts;  // ordered by after rank, then before rank

    const RankShift* find(std::string_view after_key) const;
    std::string to_json() const;
};

/// Aligns two tables over the same column. Every `before` key is folded into
/// the `after` key space with frequency_key(key, after.keying); the
/// representative of an `after` key is its highest-ranked `before` key.
/// Only names ranked within n on either side are reported.
RankShiftReport compare_rankings(const FrequencyTable& before, const FrequencyTable& after, std::size_t n,
                                 const NormalizationProfile& profile);

}  // namespace dariq
