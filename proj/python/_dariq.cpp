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
// Python bindings. Tabular data crosses the boundary as CSV text and
// reports as JSON text; the dariq package wraps these into Python objects.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "dariq/analytics.hpp"
#include "dariq/error.hpp"
#include "dariq/fakegen.hpp"
#include "dariq/impute.hpp"
#include "dariq/linkage.hpp"
#include "dariq/ner.hpp"
#include "dariq/normalize.hpp"
#include "dariq/records.hpp"
#include "dariq/transliterate.hpp"

namespace py = pybind11;
using namespace dariq;

namespace {

using Profile = NormalizationProfile;

std::vector<std::tuple<std::size_t, std::string, std::string, std::size_t>> top_n_py(
    const std::string& csv, const std::string& field, std::size_t n, const std::string& keying,
    const std::optional<std::string>& gender, const Profile& profile) {
    const auto ds = parse_person_csv(csv, "<input>");
    const auto table = build_frequency_table(ds, parse_name_field(field), parse_keying(keying), profile);
    RankFilter filter;
    if (gender) {
        const auto g = parse_gender(*gender);
        if (!g) throw Error(ErrorCode::InvalidArgument, "gender must be M, F or empty, got '" + *gender + "'");
        filter.gender = *g;
    }
    std::vector<std::tuple<std::size_t, std::string, std::string, std::size_t>> out;
    for (const auto& r : top_n(table, n, filter, profile)) out.emplace_back(r.rank, r.key, r.display, r.count);
    return out;
}

std::pair<std::string, std::string> impute_py(const std::string& csv, const std::string& target,
                                              std::size_t min_support, double dominance, bool use_school_hint,
                                              const Profile& profile) {
    const auto ds = parse_person_csv(csv, "<input>");
    ImputationPolicy policy;
    policy.min_support = min_support;
    policy.dominance = dominance;
    policy.use_school_hint = use_school_hint;
    policy.school_gender_keywords = ImputationPolicy::default_school_hints();
    policy.validate();
    ImputationResult result;
    if (target == "gender") {
        result = impute_gender(ds, build_reference(ds, ImputeKey::FirstName, ImputeTarget::Gender, profile), policy,
                               profile);
    } else if (target == "province") {
        result = impute_location(ds, build_reference(ds, ImputeKey::HighSchool, ImputeTarget::Province, profile),
                                 policy, profile);
    } else {
        throw Error(ErrorCode::InvalidArgument, "target must be gender or province, got '" + target + "'");
    }
    return {to_csv(result.dataset), result.report.to_json()};
}

std::pair<std::string, std::string> link_py(const std::string& left, const std::string& right,
                                            const Profile& profile) {
    const auto l = parse_person_csv(left, "<left>");
    const auto r = parse_school_csv(right, "<right>");
    const auto result = exact_join(l, r, profile, ProvinceTable::defaults(profile));
    return {result.matches_csv(), result.to_json()};
}

std::string generate_py(const std::string& provider_json, std::size_t n, std::uint64_t seed, double missing_gender,
                        double missing_province, double missing_school, double missing_year) {
    const auto provider = ProviderData::from_json(provider_json);
    provider.validate(Profile::defaults());
    const MissingRates rates{missing_gender, missing_province, missing_school, missing_year};
    rates.validate();
    return to_csv(generate_records(provider, n, seed, rates));
}

std::string tag_py(const std::string& text, const std::string& gazetteer_csv, bool with_provinces,
                   const Profile& profile) {
    auto g = Gazetteer::parse_csv(gazetteer_csv, profile);
    if (with_provinces) g.add_provinces(ProvinceTable::defaults(profile));
    return entities_to_json(text, tag_text(text, g));
}

std::string validate_py(const std::string& csv, const std::string& schema) {
    if (schema == "person") return validate(parse_person_csv(csv, "<input>")).to_json();
    if (schema == "school") return validate(parse_school_csv(csv, "<input>")).to_json();
    throw Error(ErrorCode::InvalidArgument, "schema must be person or school, got '" + schema + "'");
}

}  // namespace

PYBIND11_MODULE(_dariq, m) {
    m.doc() = "Name normalization, imputation and linkage for Persian/Dari records";

    // Messages already name the offending file, row or argument.
    py::register_exception<Error>(m, "DariqError", PyExc_ValueError);

    py::class_<Profile>(m, "Profile")
        .def_static("defaults", &Profile::defaults)
        .def_static("from_json", &Profile::from_json, py::arg("text"))
        .def_static("load", [](const std::string& path) { return Profile::load(path); }, py::arg("path"))
        .def("with_arabic_kaf", &Profile::with_arabic_kaf)
        .def("to_json", &Profile::to_json);

    const auto defaults = Profile::defaults();
    using Fn = std::string (*)(std::string_view, const Profile&);
    m.def("clean", static_cast<Fn>(&clean), py::arg("text"), py::arg("profile") = defaults);
    m.def("substitute", static_cast<Fn>(&substitute), py::arg("text"), py::arg("profile") = defaults);
    m.def("strip_all_spaces", static_cast<Fn>(&strip_all_spaces), py::arg("text"), py::arg("profile") = defaults);
    m.def("normalize", static_cast<Fn>(&normalize), py::arg("text"), py::arg("profile") = defaults);
    m.def("normalized_key", static_cast<Fn>(&normalized_key), py::arg("text"), py::arg("profile") = defaults);
    m.def("trim_builtin", static_cast<std::string (*)(std::string_view)>(&trim_builtin), py::arg("text"));

    m.def("dice_similarity", &dice_similarity, py::arg("a"), py::arg("b"));
    m.def("edit_ratio", &edit_ratio, py::arg("a"), py::arg("b"));
    m.def(
        "transliterate",
        [](const std::string& text) {
            static const auto table = TransliterationTable::defaults();
            return table.apply(text);
        },
        py::arg("text"));

    m.def("top_n", &top_n_py, py::arg("csv"), py::arg("field") = "first_name", py::arg("n") = 10,
          py::arg("keying") = "stripped", py::arg("gender") = std::nullopt, py::arg("profile") = defaults);
    m.def("impute", &impute_py, py::arg("csv"), py::arg("target"), py::arg("min_support") = 2,
          py::arg("dominance") = 0.9, py::arg("use_school_hint") = false, py::arg("profile") = defaults);
    m.def("link", &link_py, py::arg("left"), py::arg("right"), py::arg("profile") = defaults);
    m.def("generate", &generate_py, py::arg("provider_json"), py::arg("n"), py::arg("seed"),
          py::arg("missing_gender") = 0.0, py::arg("missing_province") = 0.0, py::arg("missing_school") = 0.0,
          py::arg("missing_year") = 0.0);
    m.def("tag", &tag_py, py::arg("text"), py::arg("gazetteer_csv"), py::arg("with_provinces") = true,
          py::arg("profile") = defaults);
    m.def("validate", &validate_py, py::arg("csv"), py::arg("schema") = "person");
}
