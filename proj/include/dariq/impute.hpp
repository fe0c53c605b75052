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
#include <string>
#include <vector>

#include "dariq/normalize.hpp"
#include "dariq/records.hpp"

namespace dariq {

enum class ImputeKey { FirstName, HighSchool };
enum class ImputeTarget { Gender, Province };

/// Per-key winner statistics over rows whose target is present.
struct ReferenceEntry {
    std::map<std::string, std::size_t> histogram;  // value -> occurrences
    std::optional<std::string> winning_value;      // empty when tied
    std::size_t winner_count = 0;
    std::size_t total_count = 0;

    std::size_t distinct_values() const noexcept { return histogram.size(); }
    bool ambiguous() const noexcept { return !winning_value.has_value(); }

    bool operator==(const ReferenceEntry&) const = default;
};

struct ReferenceTable {
    ImputeKey key_field = ImputeKey::FirstName;
    ImputeTarget target = ImputeTarget::Gender;
    std::map<std::string, ReferenceEntry> entries;

    const ReferenceEntry* find(const std::string& key) const;
    void merge(const ReferenceTable& other);

    bool operator==(const ReferenceTable&) const = default;
};

/// Gender values are "M"/"F"; province values are normalize(province).
ReferenceTable build_reference(const PersonDataset& dataset, ImputeKey key_field, ImputeTarget target,
                               const NormalizationProfile& profile, unsigned jobs = 1);

struct ImputationPolicy {
    std::size_t min_support = 2;
    double dominance = 0.9;  // must be in (0.5, 1.0]
    bool use_school_hint = false;
    std::map<std::string, Gender> school_gender_keywords;

    /// Throws Error(Config) on out-of-range thresholds or non-binary keyword genders.
    void validate() const;

    /// JSON object {"keywords": {"<keyword>": "M"|"F", ...}}.
    static std::map<std::string, Gender> load_school_hints(const std::filesystem::path& path);
    static std::map<std::string, Gender> parse_school_hints(std::string_view json_text);
    /// Keyword map shipped in data/school_hints.json.
    static std::map<std::string, Gender> default_school_hints();
};

struct SchoolHint {
    std::optional<Gender> gender;  // nullopt = NONE
    bool tie = false;              // two equally long keywords disagreed
};

/// Longest matching keyword decides; keywords and school name are compared
/// by normalized key (substring match). Equal-length disagreeing keywords
/// yield NONE with `tie` set.
SchoolHint school_gender_hint(std::string_view high_school, const ImputationPolicy& policy,
                              const NormalizationProfile& profile);

struct Conflict {
    std::string key;
    std::map<std::string, std::size_t> histogram;
};

struct ImputationReport {
    ImputeTarget target = ImputeTarget::Gender;
    std::size_t initial_missing = 0;
    std::size_t filled = 0;
    std::size_t skipped_ambiguous = 0;    // tie, below dominance, or multi-valued location
    std::size_t skipped_low_support = 0;  // total_count < min_support
    std::size_t still_missing = 0;        // everything else left blank (no key, no reference, hint veto)
    std::size_t no_reference = 0;
    std::size_t hint_vetoed = 0;
    std::size_t hint_ties = 0;
    std::size_t untouched_existing = 0;
    std::vector<Conflict> conflicts;       // sorted by key, one per key
    std::vector<std::size_t> filled_rows;  // dataset indices, ascending

    std::string to_json() const;
};

struct ImputationResult {
    PersonDataset dataset;
    ImputationReport report;
};

/// Fills MISSING genders from `ref` (first_name -> gender). A row is filled
/// only if its key has total_count >= min_support, a strict winner, and
/// winner_count / total_count >= dominance. With use_school_hint a
/// contradicting school hint vetoes the fill. Present values are never
/// touched.
ImputationResult impute_gender(const PersonDataset& dataset, const ReferenceTable& ref,
                               const ImputationPolicy& policy, const NormalizationProfile& profile);

/// Fills MISSING provinces from `ref` (high_school -> province). Same gates
/// as gender, and any school key seen in two or more provinces is refused
/// and listed as a conflict.
ImputationResult impute_location(const PersonDataset& dataset, const ReferenceTable& ref,
                                 const ImputationPolicy& policy, const NormalizationProfile& profile);

}  // namespace dariq
