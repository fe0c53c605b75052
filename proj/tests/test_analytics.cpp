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

#include "dariq/analytics.hpp"
#include "dariq/error.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace dariq;

namespace {

const NormalizationProfile& P() {
    static const auto p = NormalizationProfile::defaults();
    return p;
}

}  // namespace

TEST_SUITE("analytics") {

TEST_CASE("keyings differ only in how spacing variants fold") {
    CHECK(frequency_key(" فاطمه ", Keying::Raw, P()) == " فاطمه ");
    CHECK(frequency_key(" فاطمه ", Keying::BuiltinTrim, P()) == "فاطمه");
    CHECK(frequency_key("فا طمه", Keying::BuiltinTrim, P()) == "فا طمه");
    CHECK(frequency_key("فا طمه", Keying::Stripped, P()) == "فاطمه");
    for (auto k : {Keying::Raw, Keying::BuiltinTrim, Keying::Stripped}) {
        CHECK(frequency_key("  ", k, P()).empty());
        CHECK(frequency_key("", k, P()).empty());
    }
}

TEST_CASE("top_n under stripped keying equals the counting oracle") {
    std::mt19937_64 rng(11);
    for (int round = 0; round < 10; ++round) {
        const auto ds = fixtures::random_persons(rng, 300, 0.2);
        const auto table = build_frequency_table(ds, NameField::FirstName, Keying::Stripped, P());
        for (auto g : {std::optional<Gender>{}, std::optional<Gender>{Gender::Male}}) {
            const auto got = top_n(table, 5, {g, std::nullopt}, P());
            const auto want = oracle::top_n(ds, NameField::FirstName, 5, g, P());
            REQUIRE(got.size() == want.size());
            for (std::size_t i = 0; i < got.size(); ++i) {
                CHECK(got[i].rank == i + 1);
                CHECK(got[i].key == want[i].first);
                CHECK(got[i].count == want[i].second);
            }
        }
    }
}

TEST_CASE("parallel build equals the serial build") {
    std::mt19937_64 rng(5);
    const auto ds = fixtures::random_persons(rng, 997, 0.3);
    const auto serial = build_frequency_table(ds, NameField::FirstName, Keying::Stripped, P(), 1);
    for (unsigned jobs : {2u, 3u, 8u}) {
        CHECK(build_frequency_table(ds, NameField::FirstName, Keying::Stripped, P(), jobs) == serial);
    }
}

TEST_CASE("contributing and missing rows partition the input") {
    std::mt19937_64 rng(3);
    const auto ds = fixtures::random_persons(rng, 500, 0.1);
    for (auto k : {Keying::Raw, Keying::BuiltinTrim, Keying::Stripped}) {
        const auto t = build_frequency_table(ds, NameField::FirstName, k, P());
        CHECK(t.contributing_rows + t.missing_rows == ds.records.size());
    }
}

TEST_CASE("display is the most common raw spelling") {
    PersonDataset ds;
    ds.records = {fixtures::person("1", "ذبيحالله", Gender::Male), fixtures::person("2", "ذبيح الله", Gender::Male),
                  fixtures::person("3", "ذبيح الله", Gender::Male)};
    const auto t = build_frequency_table(ds, NameField::FirstName, Keying::Stripped, P());
    const auto top = top_n(t, 1);
    REQUIRE(top.size() == 1);
    CHECK(top[0].display == "ذبيح الله");
    CHECK(top[0].count == 3);
}

TEST_CASE("filters by gender and province") {
    PersonDataset ds;
    ds.records = {fixtures::person("1", "فاطمه", Gender::Female, "هرات"),
                  fixtures::person("2", "فاطمه", Gender::Female, "کابل"),
                  fixtures::person("3", "فاطمه", Gender::Missing, "کابل"),
                  fixtures::person("4", "محمد", Gender::Male, "کابل")};
    const auto t = build_frequency_table(ds, NameField::FirstName, Keying::Stripped, P());
    CHECK(top_n(t, 5, {Gender::Female, std::nullopt}).at(0).count == 2);
    CHECK(top_n(t, 5, {std::nullopt, std::string("کابل")}).size() == 2);
    CHECK(top_n(t, 5, {Gender::Female, std::string(" کابل ")}).at(0).count == 1);
    CHECK(top_n(t, 5, {Gender::Male, std::string("هرات")}).empty());
    CHECK_THROWS_AS(top_n(t, 0), Error);
}

TEST_CASE("merge is commutative") {
    std::mt19937_64 rng(9);
    const auto a = build_frequency_table(fixtures::random_persons(rng, 100, 0.2), NameField::FirstName,
                                         Keying::Stripped, P());
    const auto b = build_frequency_table(fixtures::random_persons(rng, 100, 0.2), NameField::FirstName,
                                         Keying::Stripped, P());
    auto ab = a;
    ab.merge(b);
    auto ba = b;
    ba.merge(a);
    CHECK(ab == ba);
}

TEST_CASE("rank shift between keyings") {
    const auto f = fixtures::rerank_fixture();
    const auto before = build_frequency_table(f.dataset, NameField::FirstName, Keying::BuiltinTrim, P());
    const auto after = build_frequency_table(f.dataset, NameField::FirstName, Keying::Stripped, P());
    const auto rep = compare_rankings(before, after, 5, P());
    const auto* zab = rep.find(normalized_key("ذبيح الله", P()));
    REQUIRE(zab != nullptr);
    CHECK(zab->count_delta() == 62);
    const auto* ham = rep.find(normalized_key("حميدالله", P()));
    REQUIRE(ham != nullptr);
    CHECK(ham->rank_delta() == 1);
    CHECK(rep.to_json().find("\"shifts\"") != std::string::npos);
}

}
