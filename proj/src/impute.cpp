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
#include "dariq/impute.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "dariq/csv.hpp"
#include "dariq/embedded.hpp"
#include "dariq/error.hpp"
#include "dariq/parallel.hpp"

namespace dariq {

const ReferenceEntry* ReferenceTable::find(const std::string& key) const {
    auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
}

namespace {

void recompute_winner(ReferenceEntry& e) {
    e.total_count = 0;
    e.winner_count = 0;
    e.winning_value.reset();
    bool tie = false;
    for (const auto& [value, n] : e.histogram) {
        e.total_count += n;
        if (n > e.winner_count) {
            e.winner_count = n;
            e.winning_value = value;
            tie = false;
        } else if (n == e.winner_count) {
            tie = true;
        }
    }
    if (tie) {
        e.winning_value.reset();
    }
}

}  // namespace

void ReferenceTable::merge(const ReferenceTable& other) {
    for (const auto& [key, entry] : other.entries) {
        auto& mine = entries[key];
        for (const auto& [value, n] : entry.histogram) {
            mine.histogram[value] += n;
        }
        recompute_winner(mine);
    }
}

namespace {

const std::string& key_source(const PersonRecord& r, ImputeKey k) {
    return k == ImputeKey::FirstName ? r.first_name : r.high_school;
}

// The target value as a reference string, or "" when missing.
std::string target_value(const PersonRecord& r, ImputeTarget t, const NormalizationProfile& profile) {
    if (t == ImputeTarget::Gender) {
        return std::string(to_code(r.gender));
    }
    return normalize(r.province, profile);
}

std::string_view to_string(ImputeTarget t) { return t == ImputeTarget::Gender ? "gender" : "location"; }

}  // namespace

ReferenceTable build_reference(const PersonDataset& dataset, ImputeKey key_field, ImputeTarget target,
                               const NormalizationProfile& profile, unsigned jobs) {
    const auto& rows = dataset.records;
    std::vector<ReferenceTable> parts(std::max(1u, jobs));
    const std::size_t used = for_each_chunk(rows.size(), jobs, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        auto& part = parts[chunk];
        for (std::size_t i = begin; i < end; ++i) {
            std::string value = target_value(rows[i], target, profile);
            if (value.empty()) continue;
            std::string key = normalized_key(key_source(rows[i], key_field), profile);
            if (key.empty()) continue;
            ++part.entries[std::move(key)].histogram[std::move(value)];
        }
    });
    ReferenceTable ref;
    ref.key_field = key_field;
    ref.target = target;
    for (std::size_t c = 0; c < used; ++c) {
        ref.merge(parts[c]);
    }
    return ref;
}

// ---- policy -----------------------------------------------------------------

void ImputationPolicy::validate() const {
    if (!(dominance > 0.5 && dominance <= 1.0)) {
        throw Error(ErrorCode::Config, "dominance must be in (0.5, 1.0], got " + format_decimal(dominance));
    }
    for (const auto& [kw, g] : school_gender_keywords) {
        if (g == Gender::Missing) {
            throw Error(ErrorCode::Config, "school hint keyword '" + kw + "' must map to M or F");
        }
        if (kw.empty()) {
            throw Error(ErrorCode::Config, "school hint keyword is empty");
        }
    }
}

std::map<std::string, Gender> ImputationPolicy::parse_school_hints(std::string_view json_text) {
    std::map<std::string, Gender> out;
    try {
        const auto j = nlohmann::json::parse(json_text);
        for (const auto& [kw, code] : j.at("keywords").items()) {
            auto g = parse_gender(code.get<std::string>());
            if (!g || *g == Gender::Missing) {
                throw Error(ErrorCode::Config, "school hint '" + kw + "' must map to \"M\" or \"F\"");
            }
            out[kw] = *g;
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Config, std::string("malformed school hints: ") + e.what());
    }
    return out;
}

std::map<std::string, Gender> ImputationPolicy::load_school_hints(const std::filesystem::path& path) {
    std::string text;
    try {
        text = csv::read_text_file(path);
    } catch (const Error& e) {
        throw Error(ErrorCode::Config, e.what());
    }
    try {
        return parse_school_hints(text);
    } catch (const Error& e) {
        throw Error(ErrorCode::Config, path.string() + ": " + e.what());
    }
}

std::map<std::string, Gender> ImputationPolicy::default_school_hints() {
    return parse_school_hints(embedded::file("school_hints.json"));
}

SchoolHint school_gender_hint(std::string_view high_school, const ImputationPolicy& policy,
                              const NormalizationProfile& profile) {
    SchoolHint hint;
    const std::string school = normalized_key(high_school, profile);
    if (school.empty()) {
        return hint;
    }
    std::size_t best_len = 0;
    for (const auto& [keyword, gender] : policy.school_gender_keywords) {
        const std::string kw = normalized_key(keyword, profile);
        if (kw.empty() || school.find(kw) == std::string::npos) {
            continue;
        }
        const std::size_t len = kw.size();
        if (len > best_len) {
            best_len = len;
            hint.gender = gender;
            hint.tie = false;
        } else if (len == best_len && !hint.tie && hint.gender != gender) {
            hint.tie = true;
        }
    }
    if (hint.tie) {
        hint.gender.reset();
    }
    return hint;
}

// ---- imputation -------------------------------------------------------------

std::string ImputationReport::to_json() const {
    nlohmann::ordered_json j;
    j["target"] = to_string(target);
    j["initial_missing"] = initial_missing;
    j["filled_count"] = filled;
    j["skipped_ambiguous"] = skipped_ambiguous;
    j["skipped_low_support"] = skipped_low_support;
    j["still_missing"] = still_missing;
    j["no_reference"] = no_reference;
    j["hint_vetoed"] = hint_vetoed;
    j["hint_ties"] = hint_ties;
    j["untouched_existing"] = untouched_existing;
    j["conflicts"] = nlohmann::ordered_json::array();
    for (const auto& c : conflicts) {
        nlohmann::ordered_json h = nlohmann::ordered_json::object();
        for (const auto& [v, n] : c.histogram) h[v] = n;
        j["conflicts"].push_back({{"key", c.key}, {"histogram", h}});
    }
    j["filled_rows"] = filled_rows;
    return j.dump(2);
}

namespace {

enum class Decision { Fill, LowSupport, Ambiguous, NoReference };

Decision decide(const ReferenceEntry* e, const ImputationPolicy& policy, bool refuse_multi_valued) {
    if (e == nullptr) return Decision::NoReference;
    if (e->total_count < policy.min_support) return Decision::LowSupport;
    if (e->ambiguous()) return Decision::Ambiguous;
    if (refuse_multi_valued && e->distinct_values() >= 2) return Decision::Ambiguous;
    const double share = static_cast<double>(e->winner_count) / static_cast<double>(e->total_count);
    if (share < policy.dominance) return Decision::Ambiguous;
    return Decision::Fill;
}

template <class IsMissing, class Apply, class Veto>
ImputationResult impute(const PersonDataset& dataset, const ReferenceTable& ref, const ImputationPolicy& policy,
                        const NormalizationProfile& profile, ImputeKey key_field, bool refuse_multi_valued,
                        IsMissing is_missing, Apply apply, Veto veto) {
    policy.validate();
    ImputationResult result{dataset, {}};
    auto& report = result.report;
    report.target = ref.target;
    std::map<std::string, const ReferenceEntry*> conflicts;
    for (std::size_t i = 0; i < result.dataset.records.size(); ++i) {
        auto& row = result.dataset.records[i];
        if (!is_missing(row)) {
            ++report.untouched_existing;
            continue;
        }
        ++report.initial_missing;
        const std::string key = normalized_key(key_source(row, key_field), profile);
        const ReferenceEntry* entry = key.empty() ? nullptr : ref.find(key);
        switch (decide(entry, policy, refuse_multi_valued)) {
            case Decision::NoReference:
                ++report.no_reference;
                ++report.still_missing;
                break;
            case Decision::LowSupport:
                ++report.skipped_low_support;
                break;
            case Decision::Ambiguous:
                ++report.skipped_ambiguous;
                if (entry->distinct_values() >= 2) conflicts.emplace(key, entry);
                break;
            case Decision::Fill:
                if (veto(row, *entry->winning_value, report)) {
                    ++report.hint_vetoed;
                    ++report.still_missing;
                    break;
                }
                apply(row, *entry->winning_value);
                ++report.filled;
                report.filled_rows.push_back(i);
                break;
        }
    }
    for (const auto& [key, entry] : conflicts) {
        report.conflicts.push_back({key, entry->histogram});
    }
    return result;
}

}  // namespace

ImputationResult impute_gender(const PersonDataset& dataset, const ReferenceTable& ref,
                               const ImputationPolicy& policy, const NormalizationProfile& profile) {
    if (ref.target != ImputeTarget::Gender) {
        throw Error(ErrorCode::InvalidArgument, "impute_gender needs a gender reference table");
    }
    return impute(
        dataset, ref, policy, profile, ref.key_field, false,
        [](const PersonRecord& r) { return r.gender == Gender::Missing; },
        [](PersonRecord& r, const std::string& v) { r.gender = *parse_gender(v); },
        [&](const PersonRecord& r, const std::string& v, ImputationReport& report) {
            if (!policy.use_school_hint) return false;
            const auto hint = school_gender_hint(r.high_school, policy, profile);
            if (hint.tie) ++report.hint_ties;
            return hint.gender && to_code(*hint.gender) != v;
        });
}

ImputationResult impute_location(const PersonDataset& dataset, const ReferenceTable& ref,
                                 const ImputationPolicy& policy, const NormalizationProfile& profile) {
    if (ref.target != ImputeTarget::Province) {
        throw Error(ErrorCode::InvalidArgument, "impute_location needs a province reference table");
    }
    return impute(
        dataset, ref, policy, profile, ref.key_field, true,
        [](const PersonRecord& r) { return r.province.empty(); },
        [](PersonRecord& r, const std::string& v) { r.province = v; },
        [](const PersonRecord&, const std::string&, ImputationReport&) { return false; });
}

}  // namespace dariq
