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
#include <random>
#include <string>
#include <vector>

#include "dariq/records.hpp"

namespace fixtures {

// Arabic-Yeh spellings, as typed on keyboards without Persian Yeh.
inline const std::string kFatemeh = "فاطمه";
inline const std::string kZabiullah = "ذبيح الله";

struct SpacingVariant {
    std::string canonical;
    std::string variant;
    std::size_t variant_len;   // codepoints as written
    std::size_t trimmed_len;   // after the spreadsheet-style trim
    bool trimmed_matches;      // trim(variant) == canonical
    std::size_t stripped_len;  // after removing every space
};

// Eight spacing defects of two common names: stray trailing, inner and
// leading spaces and a dropped word break.
inline std::vector<SpacingVariant> spacing_variants() {
    return {
        {kFatemeh, "فاطمه ", 6, 5, true, 5},
        {kFatemeh, "فا طمه", 6, 6, false, 5},
        {kFatemeh, "فا  طمه", 7, 6, false, 5},
        {kFatemeh, "  فاطمه", 7, 5, true, 5},
        {kZabiullah, "  ذبيح الله", 11, 9, true, 8},
        {kZabiullah, "ذ بيح الله", 10, 10, false, 8},
        {kZabiullah, "ذبيح  الله", 10, 9, true, 8},
        {kZabiullah, "ذبيحالله", 8, 8, false, 8},
    };
}

struct SimilarPair {
    std::string a;
    std::string b;
    double dice_2dp;
};

// Distinct names that character-bag similarity rates as near-identical.
inline std::vector<SimilarPair> lookalike_pairs() {
    return {
        {"عبدالرحيم", "عبدالكريم", 0.89},
        {"كمال الدين", "جمال الدين", 0.90},
        {"محمد تميم", "محمد صميم", 0.89},
        {"وحيد", "وحيدة", 0.89},
        {"رامز", "مزار", 1.00},
    };
}

inline dariq::PersonRecord person(std::string id, std::string first, dariq::Gender gender, std::string province = "",
                                  std::string school = "") {
    dariq::PersonRecord r;
    r.id = std::move(id);
    r.first_name = std::move(first);
    r.gender = gender;
    r.province = std::move(province);
    r.high_school = std::move(school);
    return r;
}

// Re-ranking fixture of exactly 1700 rows. Counts (canonical + variants):
//   Zabiullah   300 + 62 untrimmable variants (31 "ذ بيح الله", 31 "ذبيحالله")
//   Samiullah    83 + 1 double-space variant (the trim already repairs it)
//   Hamidullah   81 + 5 single-space variants (3 "حميد الله", 2 "ح ميدالله")
// plus filler names of 50 rows each and female names.
struct RerankFixture {
    dariq::PersonDataset dataset;
    static constexpr std::size_t kZabCanonical = 300;
    static constexpr std::size_t kZabVariants = 62;
    static constexpr std::size_t kSamCanonical = 83;
    static constexpr std::size_t kSamVariants = 1;
    static constexpr std::size_t kHamCanonical = 81;
    static constexpr std::size_t kHamVariants = 5;
};

inline RerankFixture rerank_fixture() {
    RerankFixture f;
    auto& rows = f.dataset.records;
    auto add = [&](const std::string& name, dariq::Gender g, std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) {
            rows.push_back(person("r" + std::to_string(rows.size() + 1), name, g, "کابل"));
        }
    };
    using dariq::Gender;
    add(kZabiullah, Gender::Male, RerankFixture::kZabCanonical);
    add("ذ بيح الله", Gender::Male, 31);
    add("ذبيحالله", Gender::Male, 31);
    add("سميع الله", Gender::Male, RerankFixture::kSamCanonical);
    add("سميع  الله", Gender::Male, RerankFixture::kSamVariants);
    add("حميدالله", Gender::Male, RerankFixture::kHamCanonical);
    add("حميد الله", Gender::Male, 3);
    add("ح ميدالله", Gender::Male, 2);
    // 300 + 62 + 84 + 86 = 532 rows so far.
    const char* fillers[] = {"نجيب الله", "عبدالله", "روح الله", "احسان الله", "نقيب الله", "اسدالله",
                             "رحمت الله", "وحيدالله", "حبيب الله", "نعمت الله"};
    for (const char* n : fillers) add(n, Gender::Male, 50);  // 500 -> 1032
    const char* female[] = {"فاطمه", "فرشته", "مريم", "زهرا", "فرزانه", "مرسل", "تمنا", "مرضيه", "سميرا",
                            "خاطره", "شكويه", "معصومه"};
    for (const char* n : female) add(n, Gender::Female, 55);  // 660 -> 1692
    add("نرگس", Gender::Female, 8);                           // 1700
    f.dataset.rows_read = rows.size();
    return f;
}

// ---- randomized datasets -----------------------------------------------------

inline const std::vector<std::string>& name_pool() {
    static const std::vector<std::string> pool = {
        "ذبيح الله", "ذبیح الله", "ذبيحالله", "ذ بيح الله", "فاطمه", "فا طمه", "فاطمه ", "مريم", "مریم",
        "طوفان",    "زهرا",     "نصير احمد", "محمد",      "محمد ",  "احمد", "علی",   "علي",    "نرگس",
        " ",        "",         "فرزانه",   "فرزا\u200cنه", "حميدالله"};
    return pool;
}

inline const std::vector<std::string>& school_pool() {
    static const std::vector<std::string> pool = {
        "لیسه حبیبیه", "لیسه  حبیبیه", "لیسه نسوان هرات", "لیسه ذکور", "لیسه استقلال", "لیسه عالی غازی",
        "لیسه دختران کابل", "لیسه پسران کابل", "", " "};
    return pool;
}

inline const std::vector<std::string>& province_pool() {
    static const std::vector<std::string> pool = {"کابل", "كابل", "هرات", "Herat", "herat", "بلخ",
                                                  "Balkh", "Narnia", "", "کابل "};
    return pool;
}

// Random person rows; every target field is blanked with probability
// `missing`, so roughly that share of rows needs imputation.
inline dariq::PersonDataset random_persons(std::mt19937_64& rng, std::size_t n, double missing) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto pick = [&](const std::vector<std::string>& v) { return v[rng() % v.size()]; };
    dariq::PersonDataset ds;
    for (std::size_t i = 0; i < n; ++i) {
        dariq::PersonRecord r;
        r.id = "p" + std::to_string(i + 1);
        r.first_name = pick(name_pool());
        r.father_name = pick(name_pool());
        r.high_school = pick(school_pool());
        r.province = pick(province_pool());
        r.gender = rng() % 2 ? dariq::Gender::Male : dariq::Gender::Female;
        r.graduation_year = 1390 + static_cast<int>(rng() % 4);
        if (u(rng) < missing) r.gender = dariq::Gender::Missing;
        if (u(rng) < missing) r.province.clear();
        ds.records.push_back(std::move(r));
    }
    ds.rows_read = n;
    return ds;
}

}  // namespace fixtures
