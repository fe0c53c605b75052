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
#include "dariq/fakegen.hpp"

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

#include "dariq/csv.hpp"
#include "dariq/error.hpp"
#include "dariq/random.hpp"

namespace dariq {

using ojson = nlohmann::ordered_json;

namespace {

constexpr const char* kLists[] = {"male_first", "female_first", "family", "provinces", "institutions"};

std::vector<ProviderEntry>& list(ProviderData& p, std::size_t i) {
    switch (i) {
        case 0: return p.male_first;
        case 1: return p.female_first;
        case 2: return p.family;
        case 3: return p.provinces;
        default: return p.institutions;
    }
}

const std::vector<ProviderEntry>& list(const ProviderData& p, std::size_t i) {
    return list(const_cast<ProviderData&>(p), i);
}

}  // namespace

void ProviderData::validate(const NormalizationProfile& profile) const {
    for (std::size_t l = 0; l < std::size(kLists); ++l) {
        std::set<std::string> keys;
        for (const auto& e : list(*this, l)) {
            const std::string where = std::string(kLists[l]) + " entry '" + e.surface + "'";
            if (e.weight == 0) {
                throw Error(ErrorCode::Config, where + " has zero weight");
            }
            if (!e.surface.empty() && e.ascii.empty()) {
                throw Error(ErrorCode::Config, where + " has no ascii form");
            }
            if (!keys.insert(normalized_key(e.surface, profile)).second) {
                throw Error(ErrorCode::Config, where + " duplicates another entry's key");
            }
        }
    }
}

std::string ProviderData::to_json() const {
    ojson j;
    for (std::size_t l = 0; l < std::size(kLists); ++l) {
        auto arr = ojson::array();
        for (const auto& e : list(*this, l)) {
            arr.push_back({{"surface", e.surface}, {"ascii", e.ascii}, {"weight", e.weight}});
        }
        j[kLists[l]] = std::move(arr);
    }
    return j.dump(2);
}

ProviderData ProviderData::from_json(std::string_view text) {
    ProviderData p;
    try {
        const auto j = nlohmann::json::parse(text);
        for (std::size_t l = 0; l < std::size(kLists); ++l) {
            if (!j.contains(kLists[l])) continue;
            for (const auto& e : j.at(kLists[l])) {
                std::uint64_t weight = 1;
                if (e.contains("weight")) {
                    // get<uint64_t>() would truncate 1.5 or wrap -1.
                    if (!e.at("weight").is_number_unsigned()) {
                        throw Error(ErrorCode::Config, std::string("provider list '") + kLists[l] +
                                                           "': weight must be a non-negative integer");
                    }
                    weight = e.at("weight").get<std::uint64_t>();
                }
                list(p, l).push_back({e.at("surface").get<std::string>(), e.at("ascii").get<std::string>(), weight});
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Config, std::string("malformed provider JSON: ") + e.what());
    }
    return p;
}

ProviderData ProviderData::load(const std::filesystem::path& path) {
    std::string text;
    try {
        text = csv::read_text_file(path);
    } catch (const Error& e) {
        throw Error(ErrorCode::Config, e.what());
    }
    try {
        return from_json(text);
    } catch (const Error& e) {
        throw Error(ErrorCode::Config, path.string() + ": " + e.what());
    }
}

namespace {

std::vector<ProviderEntry> top_entries(const FrequencyTable& table, std::size_t limit, std::optional<Gender> gender,
                                       const TransliterationTable& translit, const NormalizationProfile& profile,
                                       const char* category) {
    std::vector<ProviderEntry> out;
    if (limit == 0) {
        return out;
    }
    for (const auto& r : top_n(table, limit, {gender, std::nullopt}, profile)) {
        const std::string surface = normalize(r.display, profile);
        out.push_back({surface, translit.apply(surface), r.count});
    }
    if (out.empty()) {
        throw Error(ErrorCode::InsufficientData, std::string("no names available for ") + category);
    }
    return out;
}

}  // namespace

ProviderData build_provider(const FrequencyTable& first_names, const FrequencyTable& family_names,
                            const std::vector<std::pair<std::string, std::size_t>>& institutions,
                            const ProvinceTable& provinces, const TransliterationTable& translit,
                            const ProviderLimits& limits, const NormalizationProfile& profile) {
    ProviderData p;
    p.male_first = top_entries(first_names, limits.male_first, Gender::Male, translit, profile, "male_first");
    p.female_first = top_entries(first_names, limits.female_first, Gender::Female, translit, profile, "female_first");
    p.family = top_entries(family_names, limits.family, std::nullopt, translit, profile, "family");
    for (const auto& [id, name] : provinces.provinces()) {
        p.provinces.push_back({name, id, 1});
    }

    // Institutions: merge by key, then top-k by count with key order on ties.
    std::map<std::string, std::pair<std::string, std::size_t>> merged;
    for (const auto& [name, count] : institutions) {
        std::string key = normalized_key(name, profile);
        if (key.empty() || count == 0) continue;
        auto& slot = merged[key];
        if (slot.first.empty()) slot.first = normalize(name, profile);
        slot.second += count;
    }
    std::vector<std::pair<std::string, std::pair<std::string, std::size_t>>> ranked(merged.begin(), merged.end());
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.second.second > b.second.second; });
    for (std::size_t i = 0; i < ranked.size() && i < limits.institutions; ++i) {
        const auto& [surface, count] = ranked[i].second;
        p.institutions.push_back({surface, translit.apply(surface), count});
    }
    return p;
}

void MissingRates::validate() const {
    for (double r : {gender, province, high_school, graduation_year}) {
        if (!(r >= 0.0 && r <= 1.0)) {
            throw Error(ErrorCode::InvalidArgument, "missing rates must lie in [0, 1], got " + format_decimal(r));
        }
    }
}

namespace {

struct Sampler {
    const std::vector<ProviderEntry>* entries = nullptr;
    std::vector<std::uint64_t> cumulative;

    explicit Sampler(const std::vector<ProviderEntry>& list) : entries(&list) {
        std::uint64_t total = 0;
        for (const auto& e : list) {
            total += e.weight;
            cumulative.push_back(total);
        }
    }

    // Always consumes draws so the stream stays aligned across providers.
    const std::string& draw(Xoshiro256& rng) const {
        static const std::string empty;
        if (cumulative.empty()) {
            rng.next();
            return empty;
        }
        return (*entries)[rng.weighted(cumulative)].surface;
    }
};

}  // namespace

PersonDataset generate_records(const ProviderData& provider, std::size_t n, std::uint64_t seed,
                               const MissingRates& rates, const GeneratorOptions& options) {
    rates.validate();
    if (options.last_year < options.first_year) {
        throw Error(ErrorCode::InvalidArgument, "generator year range is empty");
    }
    if (n > 0 && (provider.male_first.empty() || provider.female_first.empty())) {
        throw Error(ErrorCode::InsufficientData, "provider needs both male and female first names");
    }
    const Sampler male(provider.male_first), female(provider.female_first), family(provider.family),
        province(provider.provinces), school(provider.institutions);
    const auto span = static_cast<std::uint64_t>(options.last_year - options.first_year) + 1;

    PersonDataset ds;
    ds.source = "generated(seed=" + std::to_string(seed) + ")";
    ds.records.reserve(n);
    Xoshiro256 rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        PersonRecord r;
        r.id = "G" + std::to_string(i + 1);
        const bool is_male = rng.below(2) == 0;
        r.gender = is_male ? Gender::Male : Gender::Female;
        r.first_name = (is_male ? male : female).draw(rng);
        r.family_name = family.draw(rng);
        r.father_name = male.draw(rng);
        r.grandfather_name = male.draw(rng);
        r.province = province.draw(rng);
        r.high_school = school.draw(rng);
        r.graduation_year = options.first_year + static_cast<int>(rng.below(span));
        r.score = static_cast<double>(rng.below(3601)) / 10.0;

        if (rng.unit() < rates.gender) r.gender = Gender::Missing;
        if (rng.unit() < rates.province) r.province.clear();
        if (rng.unit() < rates.high_school) r.high_school.clear();
        if (rng.unit() < rates.graduation_year) r.graduation_year.reset();
        ds.records.push_back(std::move(r));
    }
    ds.rows_read = n;
    return ds;
}

}  // namespace dariq
