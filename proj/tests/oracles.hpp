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

// Deliberately naive reference implementations. They share no code with the
// library beyond the data types and are written for obviousness, not speed.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "dariq/analytics.hpp"
#include "dariq/impute.hpp"
#include "dariq/linkage.hpp"
#include "dariq/normalize.hpp"
#include "dariq/records.hpp"
#include "dariq/utf8.hpp"

namespace oracle {

using dariq::Gender;
using dariq::NormalizationProfile;
using dariq::PersonDataset;
using dariq::PersonRecord;

inline bool in(const std::set<char32_t>& s, char32_t cp) { return s.find(cp) != s.end(); }

inline std::u32string clean(const std::u32string& s, const NormalizationProfile& p, bool drop_zwnj) {
    std::u32string out;
    for (char32_t cp : s) {
        if (in(p.nonprinting, cp)) continue;
        if (drop_zwnj && cp == 0x200C) continue;
        if (cp == U' ' || in(p.spaces, cp)) {
            out += U' ';
        } else {
            out += cp;
        }
    }
    return out;
}

inline std::u32string substitute(std::u32string s, const NormalizationProfile& p) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& cp : s) {
            auto it = p.substitutions.find(cp);
            if (it != p.substitutions.end()) {
                cp = it->second;
                changed = true;
            }
        }
    }
    return s;
}

// Split on U+0020, drop empty words, join with one space.
inline std::u32string trim(const std::u32string& s) {
    std::vector<std::u32string> words(1);
    for (char32_t cp : s) {
        if (cp == U' ') {
            words.emplace_back();
        } else {
            words.back() += cp;
        }
    }
    std::u32string out;
    for (const auto& w : words) {
        if (w.empty()) continue;
        if (!out.empty()) out += U' ';
        out += w;
    }
    return out;
}

inline std::u32string strip(const std::u32string& s, const NormalizationProfile& p) {
    std::u32string out;
    for (char32_t cp : s) {
        if (cp != U' ' && !in(p.spaces, cp)) out += cp;
    }
    return out;
}

inline std::string normalize(const std::string& s, const NormalizationProfile& p) {
    return dariq::utf8::encode(trim(substitute(clean(dariq::utf8::decode(s), p, false), p)));
}

inline std::string key(const std::string& s, const NormalizationProfile& p) {
    return dariq::utf8::encode(strip(substitute(clean(dariq::utf8::decode(s), p, true), p), p));
}

// ---- frequency / ranking ---------------------------------------------------

// (key, count) sorted by count desc then key, truncated to n.
inline std::vector<std::pair<std::string, std::size_t>> top_n(const PersonDataset& ds, dariq::NameField field,
                                                              std::size_t n, std::optional<Gender> gender,
                                                              const NormalizationProfile& p) {
    std::vector<std::string> keys;
    for (const auto& r : ds.records) {
        if (gender && r.gender != *gender) continue;
        const auto k = key(dariq::name_of(r, field), p);
        if (!k.empty()) keys.push_back(k);
    }
    std::vector<std::pair<std::string, std::size_t>> counted;
    for (const auto& k : keys) {
        bool seen = false;
        for (auto& [ck, c] : counted) {
            if (ck == k) {
                ++c;
                seen = true;
            }
        }
        if (!seen) counted.emplace_back(k, 1);
    }
    std::sort(counted.begin(), counted.end(), [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    if (counted.size() > n) counted.resize(n);
    return counted;
}

// ---- imputation --------------------------------------------------------------

struct ImputeOutcome {
    PersonDataset dataset;
    std::size_t filled = 0;
    std::size_t ambiguous = 0;
    std::size_t low_support = 0;
    std::size_t still_missing = 0;
};

// For every row with a missing target, rescans every row for donors.
template <class GetKey, class GetValue, class IsMissing, class Set>
ImputeOutcome impute(const PersonDataset& ds, const dariq::ImputationPolicy& policy, bool refuse_multi, GetKey get_key,
                     GetValue get_value, IsMissing is_missing, Set set,
                     std::function<std::optional<std::string>(const PersonRecord&)> hint) {
    ImputeOutcome out{ds, 0, 0, 0, 0};
    std::vector<std::string> keys, values;
    for (const auto& r : ds.records) {
        keys.push_back(get_key(r));
        values.push_back(get_value(r));
    }
    for (std::size_t i = 0; i < out.dataset.records.size(); ++i) {
        auto& row = out.dataset.records[i];
        if (!is_missing(row)) continue;
        const std::string& k = keys[i];
        std::map<std::string, std::size_t> votes;
        if (!k.empty()) {
            for (std::size_t d = 0; d < ds.records.size(); ++d) {
                if (!values[d].empty() && keys[d] == k) ++votes[values[d]];
            }
        }
        std::size_t total = 0, best = 0, at_best = 0;
        std::string winner;
        for (const auto& [v, c] : votes) total += c;
        for (const auto& [v, c] : votes) best = std::max(best, c);
        for (const auto& [v, c] : votes) {
            if (c == best) {
                ++at_best;
                winner = v;
            }
        }
        if (total == 0) {
            ++out.still_missing;
        } else if (total < policy.min_support) {
            ++out.low_support;
        } else if (at_best > 1 || (refuse_multi && votes.size() > 1) ||
                   static_cast<double>(best) / static_cast<double>(total) < policy.dominance) {
            ++out.ambiguous;
        } else if (auto h = hint(row); h && *h != winner) {
            ++out.still_missing;
        } else {
            set(row, winner);
            ++out.filled;
        }
    }
    return out;
}

inline std::optional<std::string> school_hint(const PersonRecord& r, const dariq::ImputationPolicy& policy,
                                              const NormalizationProfile& p) {
    if (!policy.use_school_hint) return std::nullopt;
    const std::string school = key(r.high_school, p);
    std::size_t best = 0;
    std::set<std::string> genders;
    for (const auto& [kw, g] : policy.school_gender_keywords) {
        const std::string k = key(kw, p);
        if (k.empty() || school.find(k) == std::string::npos) continue;
        if (k.size() > best) {
            best = k.size();
            genders.clear();
        }
        if (k.size() == best) genders.insert(std::string(dariq::to_code(g)));
    }
    if (genders.size() != 1) return std::nullopt;
    return *genders.begin();
}

inline ImputeOutcome impute_gender(const PersonDataset& ds, const dariq::ImputationPolicy& policy,
                                   const NormalizationProfile& p) {
    return impute(
        ds, policy, false, [&](const PersonRecord& r) { return key(r.first_name, p); },
        [](const PersonRecord& r) { return std::string(dariq::to_code(r.gender)); },
        [](const PersonRecord& r) { return r.gender == Gender::Missing; },
        [](PersonRecord& r, const std::string& v) { r.gender = v == "M" ? Gender::Male : Gender::Female; },
        [&](const PersonRecord& r) { return school_hint(r, policy, p); });
}

inline ImputeOutcome impute_location(const PersonDataset& ds, const dariq::ImputationPolicy& policy,
                                     const NormalizationProfile& p) {
    return impute(
        ds, policy, true, [&](const PersonRecord& r) { return key(r.high_school, p); },
        [&](const PersonRecord& r) { return normalize(r.province, p); },
        [](const PersonRecord& r) { return r.province.empty(); },
        [](PersonRecord& r, const std::string& v) { r.province = v; },
        [](const PersonRecord&) { return std::optional<std::string>(); });
}

// ---- linkage -----------------------------------------------------------------

inline std::optional<std::string> link_key(const std::string& first, const std::string& father,
                                           const std::string& school, const std::string& province,
                                           std::optional<int> year, const dariq::ProvinceTable& provinces,
                                           const NormalizationProfile& p) {
    const auto f = key(first, p), fa = key(father, p), s = key(school, p);
    if (f.empty() || fa.empty() || s.empty() || key(province, p).empty() || !year) return std::nullopt;
    const auto prov = provinces.canonicalize(province);
    if (prov == dariq::kUnknownProvince) return std::nullopt;
    return f + "|" + fa + "|" + s + "|" + prov + "|" + std::to_string(*year);
}

// Nested loop: a pair matches when keys are equal and neither key occurs
// twice on either side.
inline std::set<std::pair<std::string, std::string>> exact_join(const PersonDataset& left,
                                                                const dariq::SchoolDataset& right,
                                                                const dariq::ProvinceTable& provinces,
                                                                const NormalizationProfile& p) {
    std::vector<std::optional<std::string>> lk, rk;
    for (const auto& r : left.records)
        lk.push_back(link_key(r.first_name, r.father_name, r.high_school, r.province, r.graduation_year, provinces, p));
    for (const auto& r : right.records)
        rk.push_back(link_key(r.first_name, r.father_name, r.high_school, r.province, r.graduation_year, provinces, p));
    auto occurrences = [](const std::vector<std::optional<std::string>>& v, const std::string& k) {
        return std::count(v.begin(), v.end(), std::optional<std::string>(k));
    };
    std::set<std::pair<std::string, std::string>> out;
    for (std::size_t i = 0; i < lk.size(); ++i) {
        for (std::size_t j = 0; j < rk.size(); ++j) {
            if (lk[i] && rk[j] && *lk[i] == *rk[j] && occurrences(lk, *lk[i]) == 1 && occurrences(rk, *rk[j]) == 1) {
                out.emplace(left.records[i].id, right.records[j].id);
            }
        }
    }
    return out;
}

// ---- similarity ----------------------------------------------------------------

inline std::size_t levenshtein(const std::u32string& a, const std::u32string& b) {
    std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
    for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
    for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j) {
            d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + (a[i - 1] != b[j - 1])});
        }
    }
    return d[a.size()][b.size()];
}

inline double dice(const std::u32string& a, const std::u32string& b) {
    if (a.empty() && b.empty()) return 1.0;
    std::multiset<char32_t> rest(b.begin(), b.end());
    std::size_t common = 0;
    for (char32_t cp : a) {
        auto it = rest.find(cp);
        if (it != rest.end()) {
            rest.erase(it);
            ++common;
        }
    }
    return 2.0 * static_cast<double>(common) / static_cast<double>(a.size() + b.size());
}

}  // namespace oracle
