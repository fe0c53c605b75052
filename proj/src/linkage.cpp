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
#include "dariq/linkage.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "dariq/csv.hpp"
#include "dariq/embedded.hpp"
#include "dariq/error.hpp"
#include "dariq/parallel.hpp"
#include "dariq/utf8.hpp"

namespace dariq {

// ---- provinces --------------------------------------------------------------

std::string ProvinceTable::fold(std::string_view spelling) const {
    std::string key = normalized_key(spelling, profile_);
    std::string out;
    out.reserve(key.size());
    for (char c : key) {
        if (c >= 'A' && c <= 'Z') {
            out.push_back(static_cast<char>(c - 'A' + 'a'));
        } else if (c != '-' && c != '_' && c != '.') {
            out.push_back(c);
        }
    }
    return out;
}

ProvinceTable ProvinceTable::parse_csv(std::string_view text, const NormalizationProfile& profile,
                                       const std::string& source) {
    ProvinceTable table;
    table.profile_ = profile;
    const auto rows = csv::parse(text);
    bool header = true;
    for (const auto& row : rows) {
        if (row.fields.size() == 1 && row.fields[0].empty()) continue;
        const auto where = source + ":" + std::to_string(row.line);
        if (!row.error.empty() || row.fields.size() != 3) {
            throw Error(ErrorCode::Config, where + ": expected three columns (id, name, aliases)");
        }
        if (header) {
            header = false;
            if (row.fields[0] == "id") continue;
        }
        const auto& id = row.fields[0];
        if (id.empty()) {
            throw Error(ErrorCode::Config, where + ": empty province id");
        }
        table.provinces_.emplace_back(id, row.fields[1]);
        std::vector<std::string> spellings = {id, row.fields[1]};
        std::string_view aliases = row.fields[2];
        while (!aliases.empty()) {
            const auto bar = aliases.find('|');
            spellings.emplace_back(aliases.substr(0, bar));
            aliases = bar == std::string_view::npos ? std::string_view{} : aliases.substr(bar + 1);
        }
        for (const auto& s : spellings) {
            const auto folded = table.fold(s);
            if (folded.empty()) continue;
            auto [it, inserted] = table.aliases_.emplace(folded, id);
            if (!inserted && it->second != id) {
                throw Error(ErrorCode::Config,
                            where + ": spelling '" + s + "' already names province " + it->second);
            }
        }
    }
    return table;
}

ProvinceTable ProvinceTable::load_csv(const std::filesystem::path& path, const NormalizationProfile& profile) {
    std::string text;
    try {
        text = csv::read_text_file(path);
    } catch (const Error& e) {
        throw Error(ErrorCode::Config, e.what());
    }
    return parse_csv(text, profile, path.string());
}

ProvinceTable ProvinceTable::defaults(const NormalizationProfile& profile) {
    return parse_csv(embedded::file("provinces.csv"), profile);
}

std::string ProvinceTable::canonicalize(std::string_view spelling) const {
    auto it = aliases_.find(fold(spelling));
    return it == aliases_.end() ? std::string(kUnknownProvince) : it->second;
}

// ---- keys -------------------------------------------------------------------

std::string MatchKey::to_string() const {
    return first_key + "|" + father_key + "|" + school_key + "|" + province_key + "|" + std::to_string(year);
}

namespace {

template <class Record>
MatchKey make_key(const Record& r, const NormalizationProfile& profile, const ProvinceTable& provinces) {
    auto component = [&](const std::string& raw, const char* name) {
        std::string key = normalized_key(raw, profile);
        if (key.empty()) {
            throw Error(ErrorCode::MissingComponent, "record " + r.id + ": " + name + " is missing");
        }
        return key;
    };
    MatchKey k;
    k.first_key = component(r.first_name, "first_name");
    k.father_key = component(r.father_name, "father_name");
    if (normalized_key(r.province, profile).empty()) {
        throw Error(ErrorCode::MissingComponent, "record " + r.id + ": province is missing");
    }
    k.province_key = provinces.canonicalize(r.province);
    k.school_key = component(r.high_school, "high_school");
    if (!r.graduation_year) {
        throw Error(ErrorCode::MissingComponent, "record " + r.id + ": graduation_year is missing");
    }
    k.year = *r.graduation_year;
    return k;
}

struct MatchKeyHash {
    std::size_t operator()(const MatchKey& k) const noexcept {
        std::size_t h = std::hash<std::string>{}(k.first_key);
        auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
        mix(std::hash<std::string>{}(k.father_key));
        mix(std::hash<std::string>{}(k.school_key));
        mix(std::hash<std::string>{}(k.province_key));
        mix(std::hash<int>{}(k.year));
        return h;
    }
};

}  // namespace

MatchKey composite_key(const PersonRecord& record, const NormalizationProfile& profile,
                       const ProvinceTable& provinces) {
    return make_key(record, profile, provinces);
}

MatchKey composite_key(const SchoolRecord& record, const NormalizationProfile& profile,
                       const ProvinceTable& provinces) {
    return make_key(record, profile, provinces);
}

template <class Record>
std::vector<KeyedRow> key_rows(const Dataset<Record>& dataset, const NormalizationProfile& profile,
                               const ProvinceTable& provinces, unsigned jobs) {
    std::vector<KeyedRow> out(dataset.records.size());
    for_each_chunk(out.size(), jobs, [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto& rec = dataset.records[i];
            auto& row = out[i];
            row.id = rec.id;
            try {
                row.key = make_key(rec, profile, provinces);
                if (row.key->province_key == kUnknownProvince) {
                    row.missing = "province '" + rec.province + "' not recognized";
                    row.key.reset();
                }
            } catch (const Error& e) {
                if (e.code() != ErrorCode::MissingComponent) throw;
                row.missing = e.what();
            }
        }
    });
    return out;
}

template std::vector<KeyedRow> key_rows(const PersonDataset&, const NormalizationProfile&, const ProvinceTable&,
                                        unsigned);
template std::vector<KeyedRow> key_rows(const SchoolDataset&, const NormalizationProfile&, const ProvinceTable&,
                                        unsigned);

// ---- join -------------------------------------------------------------------

LinkageResult join_keyed(std::span<const KeyedRow> left, std::span<const KeyedRow> right) {
    using Index = std::unordered_map<MatchKey, std::vector<std::size_t>, MatchKeyHash>;
    auto index = [](std::span<const KeyedRow> rows) {
        Index idx;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].key) idx[*rows[i].key].push_back(i);
        }
        return idx;
    };
    const Index li = index(left);
    const Index ri = index(right);
    auto count = [](const Index& idx, const MatchKey& k) -> std::size_t {
        auto it = idx.find(k);
        return it == idx.end() ? 0 : it->second.size();
    };

    LinkageResult result;
    std::map<MatchKey, Collision> collisions;
    auto collide = [&](const MatchKey& k) {
        auto [it, inserted] = collisions.try_emplace(k);
        if (!inserted) return;
        it->second.key = k.to_string();
        if (auto l = li.find(k); l != li.end()) {
            for (std::size_t i : l->second) it->second.ids_left.push_back(left[i].id);
        }
        if (auto r = ri.find(k); r != ri.end()) {
            for (std::size_t i : r->second) it->second.ids_right.push_back(right[i].id);
        }
    };

    for (const auto& row : left) {
        if (!row.key) {
            result.unmatched_left.push_back({row.id, row.missing});
            continue;
        }
        const std::size_t nl = count(li, *row.key);
        const std::size_t nr = count(ri, *row.key);
        if (nl > 1 || nr > 1) {
            collide(*row.key);
        } else if (nr == 1) {
            result.matched.emplace_back(row.id, right[ri.at(*row.key).front()].id);
        } else {
            result.unmatched_left.push_back({row.id, "no partner"});
        }
    }
    for (const auto& row : right) {
        if (!row.key) {
            result.unmatched_right.push_back({row.id, row.missing});
            continue;
        }
        const std::size_t nl = count(li, *row.key);
        const std::size_t nr = count(ri, *row.key);
        if (nl > 1 || nr > 1) {
            collide(*row.key);
        } else if (nl == 0) {
            result.unmatched_right.push_back({row.id, "no partner"});
        }
    }
    for (auto& [k, c] : collisions) {
        result.collisions.push_back(std::move(c));
    }
    return result;
}

std::string LinkageResult::matches_csv() const {
    std::ostringstream out;
    csv::write_row(out, {"idA", "idB"});
    for (const auto& [a, b] : matched) {
        csv::write_row(out, {a, b});
    }
    return std::move(out).str();
}

std::string LinkageResult::to_json() const {
    nlohmann::ordered_json j;
    j["matched_count"] = matched.size();
    j["matched"] = nlohmann::ordered_json::array();
    for (const auto& [a, b] : matched) j["matched"].push_back({{"idA", a}, {"idB", b}});
    auto unmatched = [](const std::vector<Unmatched>& v) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& u : v) arr.push_back({{"id", u.id}, {"reason", u.reason}});
        return arr;
    };
    j["unmatched_left"] = unmatched(unmatched_left);
    j["unmatched_right"] = unmatched(unmatched_right);
    j["collisions"] = nlohmann::ordered_json::array();
    for (const auto& c : collisions) {
        j["collisions"].push_back({{"key", c.key}, {"ids_left", c.ids_left}, {"ids_right", c.ids_right}});
    }
    return j.dump(2);
}

// ---- similarity -------------------------------------------------------------

double dice_similarity(std::string_view a, std::string_view b) {
    auto ca = utf8::decode(a);
    auto cb = utf8::decode(b);
    if (ca.empty() && cb.empty()) {
        return 1.0;
    }
    std::sort(ca.begin(), ca.end());
    std::sort(cb.begin(), cb.end());
    std::size_t common = 0;
    auto i = ca.begin();
    auto j = cb.begin();
    while (i != ca.end() && j != cb.end()) {
        if (*i == *j) {
            ++common;
            ++i;
            ++j;
        } else if (*i < *j) {
            ++i;
        } else {
            ++j;
        }
    }
    return 2.0 * static_cast<double>(common) / static_cast<double>(ca.size() + cb.size());
}

std::size_t levenshtein(std::u32string_view a, std::u32string_view b) {
    if (a.size() < b.size()) std::swap(a, b);
    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t up = row[j];
            row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
            diag = up;
        }
    }
    return row[b.size()];
}

double edit_ratio(std::string_view a, std::string_view b) {
    const auto ca = utf8::decode(a);
    const auto cb = utf8::decode(b);
    const std::size_t longest = std::max(ca.size(), cb.size());
    if (longest == 0) {
        return 1.0;
    }
    return 1.0 - static_cast<double>(levenshtein(ca, cb)) / static_cast<double>(longest);
}

std::size_t PitfallReport::flagged_count() const {
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(), [](const PitfallEntry& e) { return e.flagged(); }));
}

std::string PitfallReport::to_json() const {
    nlohmann::ordered_json j;
    j["threshold"] = threshold;
    j["flagged"] = flagged_count();
    j["pairs"] = nlohmann::ordered_json::array();
    for (const auto& e : entries) {
        j["pairs"].push_back({{"a", e.a},
                              {"b", e.b},
                              {"dice", e.dice},
                              {"edit_ratio", e.edit},
                              {"keys_equal", e.keys_equal},
                              {"dice_false_positive", e.dice_false_positive},
                              {"edit_false_positive", e.edit_false_positive}});
    }
    return j.dump(2);
}

PitfallReport audit_fuzzy_pitfalls(std::span<const std::pair<std::string, std::string>> pairs, double threshold,
                                   const NormalizationProfile& profile) {
    PitfallReport report;
    report.threshold = threshold;
    for (const auto& [a, b] : pairs) {
        PitfallEntry e;
        e.a = a;
        e.b = b;
        e.dice = dice_similarity(a, b);
        e.edit = edit_ratio(a, b);
        e.keys_equal = normalized_key(a, profile) == normalized_key(b, profile);
        e.dice_false_positive = !e.keys_equal && e.dice >= threshold;
        e.edit_false_positive = !e.keys_equal && e.edit >= threshold;
        report.entries.push_back(std::move(e));
    }
    return report;
}

}  // namespace dariq
