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

#include <random>

#include "dariq/error.hpp"
#include "dariq/impute.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace dariq;
using fixtures::person;

namespace {

const NormalizationProfile& P() {
    static const auto p = NormalizationProfile::defaults();
    return p;
}

ImputationResult run_gender(const PersonDataset& ds, const ImputationPolicy& policy = {}) {
    const auto ref = build_reference(ds, ImputeKey::FirstName, ImputeTarget::Gender, P());
    return impute_gender(ds, ref, policy, P());
}

ImputationResult run_location(const PersonDataset& ds, const ImputationPolicy& policy = {}) {
    const auto ref = build_reference(ds, ImputeKey::HighSchool, ImputeTarget::Province, P());
    return impute_location(ds, ref, policy, P());
}

}  // namespace

TEST_SUITE("impute") {

TEST_CASE("fills from identical names, never overwrites") {
    PersonDataset ds;
    ds.records = {person("1", "ذبيح الله", Gender::Male), person("2", "ذبيحالله", Gender::Male),
                  person("3", "ذ بيح الله", Gender::Missing), person("4", "فاطمه", Gender::Female)};
    const auto res = run_gender(ds);
    CHECK(res.dataset.records[2].gender == Gender::Male);
    CHECK(res.report.filled == 1);
    CHECK(res.report.filled_rows == std::vector<std::size_t>{2});
    CHECK(res.report.untouched_existing == 3);
    for (std::size_t i : {0, 1, 3}) CHECK(res.dataset.records[i] == ds.records[i]);
}

TEST_CASE("a tied name is never filled") {
    PersonDataset ds;
    ds.records = {person("1", "طوفان", Gender::Male), person("2", "طوفان", Gender::Female),
                  person("3", "طوفان", Gender::Missing)};
    const auto res = run_gender(ds);
    CHECK(res.dataset.records[2].gender == Gender::Missing);
    CHECK(res.report.skipped_ambiguous == 1);
    REQUIRE(res.report.conflicts.size() == 1);
    CHECK(res.report.conflicts[0].histogram.at("M") == 1);
}

TEST_CASE("support and dominance gates") {
    PersonDataset ds;
    ds.records = {person("1", "مريم", Gender::Female), person("2", "مريم", Gender::Missing)};
    auto res = run_gender(ds);
    CHECK(res.report.skipped_low_support == 1);

    ImputationPolicy one;
    one.min_support = 1;
    res = run_gender(ds, one);
    CHECK(res.report.filled == 1);

    // 9 F vs 1 M: share 0.9 passes the default, 0.95 does not.
    PersonDataset mixed;
    for (int i = 0; i < 9; ++i) mixed.records.push_back(person("f" + std::to_string(i), "ثریا", Gender::Female));
    mixed.records.push_back(person("m", "ثریا", Gender::Male));
    mixed.records.push_back(person("x", "ثریا", Gender::Missing));
    CHECK(run_gender(mixed).report.filled == 1);
    ImputationPolicy strict;
    strict.dominance = 0.95;
    CHECK(run_gender(mixed, strict).report.skipped_ambiguous == 1);
}

TEST_CASE("school keywords veto a contradicting fill") {
    PersonDataset ds;
    ds.records = {person("1", "روشن", Gender::Male), person("2", "روشن", Gender::Male),
                  person("3", "روشن", Gender::Missing, "", "لیسه نسوان هرات"),
                  person("4", "روشن", Gender::Missing, "", "لیسه پسران")};
    ImputationPolicy policy;
    policy.use_school_hint = true;
    policy.school_gender_keywords = ImputationPolicy::default_school_hints();
    const auto res = run_gender(ds, policy);
    CHECK(res.dataset.records[2].gender == Gender::Missing);
    CHECK(res.dataset.records[3].gender == Gender::Male);
    CHECK(res.report.hint_vetoed == 1);
}

TEST_CASE("school hint: longest keyword wins, equal-length disagreement is a tie") {
    ImputationPolicy policy;
    policy.school_gender_keywords = {{"نسوان", Gender::Female}, {"ذکور", Gender::Male}, {"لیسه نسوان", Gender::Male}};
    CHECK(school_gender_hint("لیسه نسوان", policy, P()).gender == Gender::Male);
    policy.school_gender_keywords = {{"ابب", Gender::Female}, {"ابت", Gender::Male}};
    const auto h = school_gender_hint("ابب ابت", policy, P());
    CHECK(h.tie);
    CHECK_FALSE(h.gender);
    CHECK_FALSE(school_gender_hint("", policy, P()).gender);
}

TEST_CASE("location refuses schools seen in two provinces") {
    PersonDataset ds;
    ds.records = {person("1", "a", Gender::Male, "کابل", "لیسه حبیبیه"), person("2", "b", Gender::Male, "کابل", "لیسه حبیبیه"),
                  person("3", "c", Gender::Male, "", "لیسه حبیبیه"), person("4", "d", Gender::Male, "هرات", "لیسه غازی"),
                  person("5", "e", Gender::Male, "کابل", "لیسه غازی"), person("6", "f", Gender::Male, "", "لیسه غازی")};
    ImputationPolicy loose;
    loose.dominance = 0.51;
    const auto res = run_location(ds, loose);
    CHECK(res.dataset.records[2].province == "کابل");
    CHECK(res.dataset.records[5].province.empty());
    CHECK(res.report.skipped_ambiguous == 1);
}

TEST_CASE("report counts add up") {
    std::mt19937_64 rng(21);
    const auto ds = fixtures::random_persons(rng, 400, 0.3);
    for (const auto& res : {run_gender(ds), run_location(ds)}) {
        const auto& r = res.report;
        CHECK(r.filled + r.skipped_ambiguous + r.skipped_low_support + r.still_missing == r.initial_missing);
        CHECK(r.initial_missing + r.untouched_existing == ds.records.size());
        CHECK(r.filled_rows.size() == r.filled);
    }
}

TEST_CASE("matches the brute-force oracle") {
    std::mt19937_64 rng(1234);
    for (int round = 0; round < 8; ++round) {
        const auto ds = fixtures::random_persons(rng, 150 + rng() % 200, 0.25);
        ImputationPolicy policy;
        policy.min_support = 1 + rng() % 3;
        policy.dominance = round % 2 ? 0.6 : 0.9;
        policy.use_school_hint = round % 3 == 0;
        policy.school_gender_keywords = ImputationPolicy::default_school_hints();

        const auto got = run_gender(ds, policy);
        const auto want = oracle::impute_gender(ds, policy, P());
        CHECK(got.dataset.records == want.dataset.records);
        CHECK(got.report.filled == want.filled);
        CHECK(got.report.skipped_low_support == want.low_support);
        CHECK(got.report.skipped_ambiguous == want.ambiguous);

        const auto got_loc = run_location(ds, policy);
        const auto want_loc = oracle::impute_location(ds, policy, P());
        CHECK(got_loc.dataset.records == want_loc.dataset.records);
        CHECK(got_loc.report.filled == want_loc.filled);
    }
}

TEST_CASE("reference build is thread-count independent") {
    std::mt19937_64 rng(77);
    const auto ds = fixtures::random_persons(rng, 1000, 0.2);
    const auto one = build_reference(ds, ImputeKey::FirstName, ImputeTarget::Gender, P(), 1);
    CHECK(build_reference(ds, ImputeKey::FirstName, ImputeTarget::Gender, P(), 4) == one);
}

TEST_CASE("policy validation") {
    ImputationPolicy p;
    p.dominance = 0.5;
    CHECK_THROWS_AS(p.validate(), Error);
    CHECK_THROWS_AS(ImputationPolicy::parse_school_hints(R"({"keywords": {"x": "Q"}})"), Error);
    CHECK(ImputationPolicy::default_school_hints().size() >= 6);
}

}
