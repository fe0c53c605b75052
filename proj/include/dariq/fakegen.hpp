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
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "dariq/analytics.hpp"
#include "dariq/linkage.hpp"
#include "dariq/records.hpp"
#include "dariq/transliterate.hpp"

namespace dariq {

struct ProviderEntry {
    std::string surface;
    std::string ascii;
    std::uint64_t weight = 1;

    bool operator==(const ProviderEntry&) const = default;
};

/// Weighted name lists for the fake-record generator. Export format is a
/// plain JSON object of arrays of {surface, ascii, weight}.
struct ProviderData {
    std::vector<ProviderEntry> male_first;
    std::vector<ProviderEntry> female_first;
    std::vector<ProviderEntry> family;
    std::vector<ProviderEntry> provinces;
    std::vector<ProviderEntry> institutions;

    /// Throws Error(Config) on a zero weight, a blank ascii for a non-blank
    /// surface, or two entries of one list sharing a normalized key.
    void validate(const NormalizationProfile& profile) const;

    std::string to_json() const;
    static ProviderData from_json(std::string_view text);
    static ProviderData load(const std::filesystem::path& path);

    bool operator==(const ProviderData&) const = default;
};

struct ProviderLimits {
    std::size_t male_first = 1000;
    std::size_t female_first = 1000;
    std::size_t family = 1000;
    std::size_t institutions = 1000;
};

/// Top-k names per category by count, weight = count. `first_names` must be
/// a first_name table (split by gender through its cells), `family_names` a
/// family_name table; `institutions` a high-school frequency list (may be
/// empty). Throws Error(InsufficientData) when a name category is empty.
ProviderData build_provider(const FrequencyTable& first_names, const FrequencyTable& family_names,
                            const std::vector<std::pair<std::string, std::size_t>>& institutions,
                            const ProvinceTable& provinces, const TransliterationTable& translit,
                            const ProviderLimits& limits = {},
                            const NormalizationProfile& profile = NormalizationProfile::defaults());

/// Per-field blanking probabilities, each in [0, 1].
struct MissingRates {
    double gender = 0;
    double province = 0;
    double high_school = 0;
    double graduation_year = 0;

    void validate() const;
};

struct GeneratorOptions {
    int first_year = 1380;
    int last_year = 1400;
};

/// n records drawn from `provider` by a xoshiro256** stream seeded with
/// `seed`. Every record consumes the same number of draws, so output is a
/// pure function of (provider, n, seed, rates, options).
PersonDataset generate_records(const ProviderData& provider, std::size_t n, std::uint64_t seed,
                               const MissingRates& rates = {}, const GeneratorOptions& options = {});

}  // namespace dariq
