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
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "dariq/error.hpp"
#include "dariq/linkage.hpp"
#include "dariq/utf8.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace dariq;

namespace {

const NormalizationProfile& P() {
    static const auto p = NormalizationProfile::defaults();
    return p;
}

const ProvinceTable& provinces() {
    static const auto t = ProvinceTable::defaults(P());
    return t;
}

PersonRecord left_row(std::string id, std::string first, std::string father, std::string school, std::string prov,
                      std::optional<int> year) {
    PersonRecord r;
    r.id = std::move(id);
    r.first_name = std::move(first);
    r.father_name = std::move(father);
    r.high_school = std::move(school);
    r.province = std::move(prov);
    r.graduation_year = year;
    return r;
}

SchoolRecord right_row(std::string id, std::string first, std::string father, std::string school, std::string prov,
                       std::optional<int> year) {
    SchoolRecord r;
    r.id = std::move(id);
    r.first_name = std::move(first);
    r.father_name = std::move(father);
    r.high_school = std::move(school);
    r.province = std::move(prov);
    r.graduation_year = year;
    return r;
}

SchoolDataset random_schools(std::mt19937_64& rng, std::size_t n) {
    auto pick = [&](const std::vector<std::string>& v) { return v[rng() % v.size()]; };
    SchoolDataset ds;
    for (std::size_t i = 0; i < n; ++i) {
        ds.records.push_back(right_row("s" + std::to_string(i + 1), pick(fixtures::name_pool()),
                                       pick(fixtures::name_pool()), pick(fixtures::school_pool()),
                                       pick(fixtures::province_pool()), 1390 + static_cast<int>(rng() % 4)));
    }
    return ds;
}

std::set<std::pair<std::string, std::string>> as_set(const LinkageResult& r) {
    return {r.matched.begin(), r.matched.end()};
}

}  // namespace

TEST_SUITE("linkage") {

TEST_CASE("province aliases canonicalize") {
    CHECK(provinces().canonicalize("هرات") == "Herat");
    CHECK(provinces().canonicalize(" herat ") == "Herat");
    CHECK(provinces().canonicalize("كابل") == "Kabul");
    CHECK(provinces().canonicalize("Narnia") == kUnknownProvince);
    CHECK(provinces().provinces().size() == 34);
    CHECK_THROWS_AS(ProvinceTable::parse_csv("id,name,aliases\nA,x,\nB,x,\n", P()), Error);
}

TEST_CASE("composite key names the missing component") {
    const auto r = left_row("7", "ذبيح الله", "", "لیسه", "کابل", 1395);
    try {
        composite_key(r, P(), provinces());
        FAIL("expected a missing-component error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MissingComponent);
        CHECK(std::string(e.what()).find("father_name") != std::string::npos);
    }
    const auto ok = composite_key(left_row("8", "ذبيح الله", "نصير احمد", "لیسه", "کابل", 1395), P(), provinces());
    CHECK(ok.province_key == "Kabul");
    CHECK(ok.first_key == normalized_key("ذبيحالله", P()));
}

TEST_CASE("spacing variants link; duplicates collide; unknown provinces stay unmatched") {
    PersonDataset left;
    SchoolDataset right;
    const auto variants = fixtures::spacing_variants();
    for (std::size_t i = 0; i < variants.size(); ++i) {
        const auto& v = variants[i];
        const auto school = "لیسه " + std::to_string(i);
        left.records.push_back(left_row("L" + std::to_string(i), v.variant, "محمد", school, "Herat", 1395));
        right.records.push_back(right_row("R" + std::to_string(i), v.canonical, "محمد ", school, "هرات", 1395));
    }
    left.records.push_back(left_row("D1", "مريم", "احمد", "لیسه x", "Kabul", 1396));
    left.records.push_back(left_row("D2", "مریم", "احمد", "لیسه  x", "کابل", 1396));
    right.records.push_back(right_row("D3", "مريم", "احمد", "لیسه x", "kabul", 1396));
    left.records.push_back(left_row("U1", "زهرا", "احمد", "لیسه y", "Narnia", 1396));
    right.records.push_back(right_row("U2", "زهرا", "احمد", "لیسه y", "Narnia", 1396));

    const auto res = exact_join(left, right, P(), provinces());
    CHECK(res.matched.size() == variants.size());
    REQUIRE(res.collisions.size() == 1);
    CHECK(res.collisions[0].ids_left == std::vector<std::string>{"D1", "D2"});
    CHECK(res.collisions[0].ids_right == std::vector<std::string>{"D3"});
    REQUIRE(res.unmatched_left.size() == 1);
    CHECK(res.unmatched_left[0].id == "U1");
    CHECK(res.unmatched_left[0].reason.find("Narnia") != std::string::npos);
    CHECK(res.matches_csv().rfind("idA,idB\n", 0) == 0);
}

TEST_CASE("every row lands in exactly one bucket") {
    std::mt19937_64 rng(4);
    const auto left = fixtures::random_persons(rng, 200, 0.1);
    const auto right = random_schools(rng, 200);
    const auto res = exact_join(left, right, P(), provinces());
    std::size_t in_collisions_left = 0, in_collisions_right = 0;
    for (const auto& c : res.collisions) {
        in_collisions_left += c.ids_left.size();
        in_collisions_right += c.ids_right.size();
    }
    CHECK(res.matched.size() + res.unmatched_left.size() + in_collisions_left == left.records.size());
    CHECK(res.matched.size() + res.unmatched_right.size() + in_collisions_right == right.records.size());
}

TEST_CASE("exact join equals the nested-loop oracle") {
    std::mt19937_64 rng(99);
    for (int round = 0; round < 5; ++round) {
        const auto left = fixtures::random_persons(rng, 120, 0.05);
        const auto right = random_schools(rng, 120);
        const auto res = exact_join(left, right, P(), provinces(), 1 + round % 3);
        CHECK(as_set(res) == oracle::exact_join(left, right, provinces(), P()));
    }
}

TEST_CASE("dice and edit similarity") {
    for (const auto& pair : fixtures::lookalike_pairs()) {
        CAPTURE(pair.a);
        const double d = dice_similarity(pair.a, pair.b);
        CHECK(std::round(d * 100) / 100 == doctest::Approx(pair.dice_2dp));
        CHECK(d == doctest::Approx(oracle::dice(utf8::decode(pair.a), utf8::decode(pair.b))));
    }
    CHECK(dice_similarity("", "") == 1.0);
    CHECK(edit_ratio("كمال الدين", "جمال الدين") == doctest::Approx(0.9));
    CHECK(edit_ratio("", "") == 1.0);
    CHECK(levenshtein(U"kitten", U"sitting") == 3);
}

TEST_CASE("levenshtein equals the DP oracle") {
    std::mt19937_64 rng(8);
    const std::u32string alphabet = U"abcذبيح";
    for (int i = 0; i < 500; ++i) {
        std::u32string a, b;
        for (std::size_t k = rng() % 9; k > 0; --k) a += alphabet[rng() % alphabet.size()];
        for (std::size_t k = rng() % 9; k > 0; --k) b += alphabet[rng() % alphabet.size()];
        CHECK(levenshtein(a, b) == oracle::levenshtein(a, b));
        CHECK(levenshtein(a, b) == levenshtein(b, a));
    }
}

TEST_CASE("pitfall audit flags look-alikes but not spacing variants") {
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& p : fixtures::lookalike_pairs()) pairs.emplace_back(p.a, p.b);
    pairs.emplace_back("فا طمه", "فاطمه");
    const auto rep = audit_fuzzy_pitfalls(pairs, 0.85, P());
    REQUIRE(rep.entries.size() == 6);
    for (std::size_t i = 0; i < 5; ++i) CHECK(rep.entries[i].dice_false_positive);
    CHECK(rep.entries[5].keys_equal);
    CHECK_FALSE(rep.entries[5].flagged());
    CHECK(rep.flagged_count() == 5);
}

}
