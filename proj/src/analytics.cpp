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
#include "dariq/analytics.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "dariq/error.hpp"
#include "dariq/parallel.hpp"

namespace dariq {

Keying parse_keying(std::string_view name) {
    if (name == "raw") return Keying::Raw;
    if (name == "builtin_trim") return Keying::BuiltinTrim;
    if (name == "stripped") return Keying::Stripped;
    throw Error(ErrorCode::InvalidArgument,
                "unknown keying '" + std::string(name) + "' (expected raw, builtin_trim or stripped)");
}

std::string_view to_string(Keying keying) noexcept {
    switch (keying) {
        case Keying::Raw: return "raw";
        case Keying::BuiltinTrim: return "builtin_trim";
        case Keying::Stripped: return "stripped";
    }
    return "";
}

std::string frequency_key(std::string_view raw, Keying keying, const NormalizationProfile& profile) {
    std::string key = normalized_key(raw, profile);
    if (key.empty()) {
        return key;
    }
    switch (keying) {
        case Keying::Raw: return std::string(raw);
        case Keying::BuiltinTrim: return normalize(raw, profile);
        case Keying::Stripped: break;
    }
    return key;
}

const std::string& FrequencyEntry::display() const {
    static const std::string empty;
    const std::string* best = &empty;
    std::size_t best_count = 0;
    // std::map iterates in key order, so the first maximum is the least.
    for (const auto& [spelling, n] : spellings) {
        if (n > best_count) {
            best = &spelling;
            best_count = n;
        }
    }
    return *best;
}

std::size_t FrequencyEntry::count_for(std::optional<Gender> gender, const std::optional<std::string>& province) const {
    if (!gender && !province) {
        return count;
    }
    std::size_t n = 0;
    for (const auto& [cell, c] : cells) {
        if (gender && cell.first != *gender) continue;
        if (province && cell.second != *province) continue;
        n += c;
    }
    return n;
}

void FrequencyEntry::merge(const FrequencyEntry& other) {
    count += other.count;
    for (const auto& [s, n] : other.spellings) spellings[s] += n;
    for (const auto& [c, n] : other.cells) cells[c] += n;
}

void FrequencyTable::merge(const FrequencyTable& other) {
    for (const auto& [key, entry] : other.entries) {
        entries[key].merge(entry);
    }
    contributing_rows += other.contributing_rows;
    missing_rows += other.missing_rows;
}

FrequencyTable build_frequency_table(const PersonDataset& dataset, NameField field, Keying keying,
                                     const NormalizationProfile& profile, unsigned jobs) {
    const auto& rows = dataset.records;
    std::vector<FrequencyTable> parts(std::max(1u, jobs));
    const std::size_t used = for_each_chunk(rows.size(), jobs, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        auto& table = parts[chunk];
        for (std::size_t i = begin; i < end; ++i) {
            const auto& rec = rows[i];
            const std::string& raw = name_of(rec, field);
            std::string key = frequency_key(raw, keying, profile);
            if (key.empty()) {
                ++table.missing_rows;
                continue;
            }
            auto& entry = table.entries[std::move(key)];
            ++entry.count;
            ++entry.spellings[raw];
            ++entry.cells[{rec.gender, normalize(rec.province, profile)}];
            ++table.contributing_rows;
        }
    });
    FrequencyTable out;
    out.field = field;
    out.keying = keying;
    for (std::size_t c = 0; c < used; ++c) {
        out.merge(parts[c]);
    }
    return out;
}

namespace {

struct Counted {
    const std::string* key;
    const FrequencyEntry* entry;
    std::size_t count;
};

std::vector<Counted> ranked(const FrequencyTable& table, const RankFilter& filter,
                            const NormalizationProfile& profile) {
    std::optional<std::string> province;
    if (filter.province) {
        province = normalize(*filter.province, profile);
    }
    std::vector<Counted> all;
    all.reserve(table.entries.size());
    for (const auto& [key, entry] : table.entries) {
        const std::size_t n = entry.count_for(filter.gender, province);
        if (n > 0) {
            all.push_back({&key, &entry, n});
        }
    }
    std::sort(all.begin(), all.end(), [](const Counted& a, const Counted& b) {
        if (a.count != b.count) return a.count > b.count;
        return *a.key < *b.key;
    });
    return all;
}

}  // namespace

std::vector<RankedName> top_n(const FrequencyTable& table, std::size_t n, const RankFilter& filter,
                              const NormalizationProfile& profile) {
    if (n == 0) {
        throw Error(ErrorCode::InvalidArgument, "top_n requires n >= 1");
    }
    const auto all = ranked(table, filter, profile);
    std::vector<RankedName> out;
    for (std::size_t i = 0; i < all.size() && i < n; ++i) {
        out.push_back({i + 1, *all[i].key, all[i].entry->display(), all[i].count});
    }
    return out;
}

std::optional<long long> RankShift::rank_delta() const {
    if (!before_rank || !after_rank) {
        return std::nullopt;
    }
    return static_cast<long long>(*before_rank) - static_cast<long long>(*after_rank);
}

const RankShift* RankShiftReport::find(std::string_view after_key) const {
    for (const auto& s : shifts) {
        if (s.key == after_key) return &s;
    }
    return nullptr;
}

std::string RankShiftReport::to_json() const {
    nlohmann::ordered_json j;
    j["n"] = n;
    j["shifts"] = nlohmann::ordered_json::array();
    auto opt = [](const std::optional<std::size_t>& v) { return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(); };
    for (const auto& s : shifts) {
        nlohmann::ordered_json e;
        e["key"] = s.key;
        e["display"] = s.display;
        e["before_key"] = s.before_key;
        e["before_count"] = s.before_count;
        e["after_count"] = s.after_count;
        e["count_delta"] = s.count_delta();
        e["before_rank"] = opt(s.before_rank);
        e["after_rank"] = opt(s.after_rank);
        const auto rd = s.rank_delta();
        e["rank_delta"] = rd ? nlohmann::ordered_json(*rd) : nlohmann::ordered_json();
        e["entered_top_n"] = s.entered_top_n;
        e["left_top_n"] = s.left_top_n;
        j["shifts"].push_back(std::move(e));
    }
    return j.dump(2);
}

RankShiftReport compare_rankings(const FrequencyTable& before, const FrequencyTable& after, std::size_t n,
                                 const NormalizationProfile& profile) {
    if (n == 0) {
        throw Error(ErrorCode::InvalidArgument, "compare_rankings requires n >= 1");
    }
    const auto before_ranked = ranked(before, {}, profile);
    const auto after_ranked = ranked(after, {}, profile);

    std::map<std::string, RankShift> by_key;
    for (std::size_t i = 0; i < after_ranked.size(); ++i) {
        auto& s = by_key[*after_ranked[i].key];
        s.key = *after_ranked[i].key;
        s.display = after_ranked[i].entry->display();
        s.after_count = after_ranked[i].count;
        s.after_rank = i + 1;
    }
    // before_ranked is in rank order, so the first fold hit is the representative.
    for (std::size_t i = 0; i < before_ranked.size(); ++i) {
        std::string folded = frequency_key(*before_ranked[i].key, after.keying, profile);
        auto& s = by_key[folded];
        if (s.before_rank) {
            continue;
        }
        if (s.key.empty()) {
            s.key = folded;
            s.display = before_ranked[i].entry->display();
        }
        s.before_key = *before_ranked[i].key;
        s.before_count = before_ranked[i].count;
        s.before_rank = i + 1;
    }

    RankShiftReport report;
    report.n = n;
    for (auto& [key, s] : by_key) {
        const bool was_in = s.before_rank && *s.before_rank <= n;
        const bool is_in = s.after_rank && *s.after_rank <= n;
        if (!was_in && !is_in) {
            continue;
        }
        s.entered_top_n = is_in && !was_in;
        s.left_top_n = was_in && !is_in;
        report.shifts.push_back(std::move(s));
    }
    constexpr auto kNone = std::numeric_limits<std::size_t>::max();
    std::sort(report.shifts.begin(), report.shifts.end(), [&](const RankShift& a, const RankShift& b) {
        const auto ar = a.after_rank.value_or(kNone), br = b.after_rank.value_or(kNone);
        if (ar != br) return ar < br;
        return a.before_rank.value_or(kNone) < b.before_rank.value_or(kNone);
    });
    return report;
}

}  // namespace dariq
