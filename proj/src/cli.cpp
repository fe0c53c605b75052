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
#include "dariq/cli.hpp"

#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dariq/analytics.hpp"
#include "dariq/csv.hpp"
#include "dariq/error.hpp"
#include "dariq/fakegen.hpp"
#include "dariq/linkage.hpp"
#include "dariq/ner.hpp"
#include "dariq/normalize.hpp"
#include "dariq/records.hpp"
#include "dariq/transliterate.hpp"
#include "dariq/utf8.hpp"

namespace dariq {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

AppConfig AppConfig::load(const fs::path& path) {
    std::string text;
    try {
        text = csv::read_text_file(path);
    } catch (const Error& e) {
        throw Error(ErrorCode::Config, e.what());
    }
    const fs::path base = path.parent_path();
    auto resolve = [&](const std::string& key, const std::string& value) {
        fs::path p = fs::path(value).is_absolute() ? fs::path(value) : base / value;
        if (key != "out_dir" && !fs::is_regular_file(p)) {
            throw Error(ErrorCode::Config, path.string() + ": '" + key + "' refers to missing file " + p.string());
        }
        return p;
    };

    AppConfig cfg;
    try {
        const auto j = nlohmann::json::parse(text);
        if (!j.is_object()) {
            throw Error(ErrorCode::Config, path.string() + ": config must be a JSON object");
        }
        for (const auto& [key, value] : j.items()) {
            if (key == "profile") cfg.profile = resolve(key, value.get<std::string>());
            else if (key == "provinces") cfg.provinces = resolve(key, value.get<std::string>());
            else if (key == "lexicon") cfg.lexicon = resolve(key, value.get<std::string>());
            else if (key == "transliteration") cfg.transliteration = resolve(key, value.get<std::string>());
            else if (key == "school_hints") cfg.school_hints = resolve(key, value.get<std::string>());
            else if (key == "out_dir") cfg.out_dir = resolve(key, value.get<std::string>());
            else if (key == "impute") {
                for (const auto& [k, v] : value.items()) {
                    if (k == "min_support") cfg.min_support = v.get<std::size_t>();
                    else if (k == "dominance") cfg.dominance = v.get<double>();
                    else if (k == "use_school_hint") cfg.use_school_hint = v.get<bool>();
                    else throw Error(ErrorCode::Config, path.string() + ": unknown key 'impute." + k + "'");
                }
            } else {
                throw Error(ErrorCode::Config, path.string() + ": unknown key '" + key + "'");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Config, path.string() + ": " + e.what());
    }
    return cfg;
}

namespace {

// Everything loaded up front so a bad config fails before any data is read.
struct Context {
    AppConfig cfg;
    NormalizationProfile profile;
    ProvinceTable provinces;
    Lexicon lexicon;
    TransliterationTable translit;
    ImputationPolicy policy;
    fs::path out_dir;
    unsigned jobs = 1;
    std::ostream* out = nullptr;

    void emit_report(const std::string& name, const std::string& json) const {
        write(name, json + "\n");
        *out << json << "\n";
    }

    fs::path write(const std::string& name, std::string_view contents) const {
        std::error_code ec;
        fs::create_directories(out_dir, ec);
        if (ec) {
            throw Error(ErrorCode::Io, "cannot create output directory " + out_dir.string() + ": " + ec.message());
        }
        const auto path = out_dir / name;
        csv::write_text_file(path, contents);
        return path;
    }
};

template <class F>
auto as_config(const F& f) {
    try {
        return f();
    } catch (const Error& e) {
        throw Error(ErrorCode::Config, e.what());
    }
}

Context make_context(const std::string& config_path, const std::string& profile_path, const std::string& out_dir,
                     unsigned jobs, std::ostream& out) {
    if (jobs == 0) {
        throw Error(ErrorCode::Config, "--jobs must be at least 1");
    }
    Context ctx;
    if (!config_path.empty()) ctx.cfg = AppConfig::load(config_path);
    if (!profile_path.empty()) ctx.cfg.profile = profile_path;
    ctx.profile = ctx.cfg.profile ? as_config([&] { return NormalizationProfile::load(*ctx.cfg.profile); })
                                  : NormalizationProfile::defaults();
    ctx.provinces = as_config([&] {
        return ctx.cfg.provinces ? ProvinceTable::load_csv(*ctx.cfg.provinces, ctx.profile)
                                 : ProvinceTable::defaults(ctx.profile);
    });
    ctx.lexicon = as_config([&] {
        return ctx.cfg.lexicon ? Lexicon::load_csv(*ctx.cfg.lexicon, ctx.profile) : Lexicon::defaults(ctx.profile);
    });
    ctx.translit = as_config([&] {
        return ctx.cfg.transliteration ? TransliterationTable::load_csv(*ctx.cfg.transliteration)
                                       : TransliterationTable::defaults();
    });
    ctx.policy.min_support = ctx.cfg.min_support;
    ctx.policy.dominance = ctx.cfg.dominance;
    ctx.policy.use_school_hint = ctx.cfg.use_school_hint;
    ctx.policy.school_gender_keywords = as_config([&] {
        return ctx.cfg.school_hints ? ImputationPolicy::load_school_hints(*ctx.cfg.school_hints)
                                    : ImputationPolicy::default_school_hints();
    });
    as_config([&] {
        ctx.policy.validate();
        return 0;
    });
    ctx.out_dir = out_dir.empty() ? ctx.cfg.out_dir : fs::path(out_dir);
    ctx.jobs = jobs;
    ctx.out = &out;
    return ctx;
}

ojson rejects_json(const std::vector<RejectedRow>& rejects) {
    auto arr = ojson::array();
    for (const auto& r : rejects) arr.push_back({{"line", r.line}, {"reason", r.reason}});
    return arr;
}

// --- normalize -------------------------------------------------------------

struct NormalizeArgs {
    std::string input;
    std::string op = "normalize";
    std::vector<std::string> columns;
    std::string output = "normalized.csv";
};

int cmd_normalize(const Context& ctx, const NormalizeArgs& a) {
    const auto text = csv::read_text_file(a.input);
    const auto rows = csv::parse(text);
    std::vector<std::vector<std::string>> table;
    for (const auto& row : rows) {
        if (row.fields.size() == 1 && row.fields[0].empty()) continue;
        if (!row.error.empty()) {
            throw Error(ErrorCode::Schema, a.input + ":" + std::to_string(row.line) + ": " + row.error);
        }
        if (!table.empty() && row.fields.size() != table.front().size()) {
            throw Error(ErrorCode::Schema, a.input + ":" + std::to_string(row.line) + ": expected " +
                                               std::to_string(table.front().size()) + " fields, got " +
                                               std::to_string(row.fields.size()));
        }
        table.push_back(row.fields);
    }
    if (table.empty()) {
        throw Error(ErrorCode::Schema, a.input + ": missing header row");
    }
    const auto& header = table.front();
    std::vector<std::size_t> targets;
    if (a.columns.empty()) {
        for (std::size_t c = 0; c < header.size(); ++c) {
            if (header[c] != "id") targets.push_back(c);
        }
    } else {
        for (const auto& name : a.columns) {
            auto it = std::find(header.begin(), header.end(), name);
            if (it == header.end()) {
                throw Error(ErrorCode::UnknownField, "--columns: '" + name + "' is not a column of " + a.input);
            }
            targets.push_back(static_cast<std::size_t>(it - header.begin()));
        }
    }

    std::function<std::string(const std::string&)> op;
    const auto& p = ctx.profile;
    if (a.op == "clean") op = [&](const std::string& s) { return utf8::encode(clean(utf8::decode(s), p)); };
    else if (a.op == "substitute") op = [&](const std::string& s) { return utf8::encode(substitute(utf8::decode(s), p)); };
    else if (a.op == "trim") op = [&](const std::string& s) { return utf8::encode(trim_builtin(utf8::decode(s))); };
    else if (a.op == "strip") op = [&](const std::string& s) { return utf8::encode(strip_all_spaces(utf8::decode(s), p)); };
    else if (a.op == "normalize") op = [&](const std::string& s) { return normalize(s, p); };
    else if (a.op == "key") op = [&](const std::string& s) { return normalized_key(s, p); };
    else op = [&](const std::string& s) { return tailored_trim(s, ctx.lexicon, p); };

    std::map<std::string, std::size_t> changed;
    for (std::size_t c : targets) changed[header[c]] = 0;
    for (std::size_t r = 1; r < table.size(); ++r) {
        for (std::size_t c : targets) {
            auto v = op(table[r][c]);
            if (v != table[r][c]) {
                ++changed[header[c]];
                table[r][c] = std::move(v);
            }
        }
    }
    std::ostringstream csv_out;
    for (const auto& row : table) csv::write_row(csv_out, row);
    const auto path = ctx.write(a.output, csv_out.str());

    ojson rep;
    rep["command"] = "normalize";
    rep["input"] = a.input;
    rep["op"] = a.op;
    rep["rows"] = table.size() - 1;
    rep["changed_cells"] = changed;
    rep["output"] = path.string();
    ctx.emit_report("normalize_report.json", rep.dump(2));
    return 0;
}

// --- topn ------------------------------------------------------------------

struct TopnArgs {
    std::string input;
    std::string field = "first_name";
    std::size_t n = 20;
    std::string by = "none";
    std::string keying = "stripped";
    std::string compare;
    std::string output = "topn.csv";
};

int cmd_topn(const Context& ctx, const TopnArgs& a) {
    const auto field = parse_name_field(a.field);
    const auto keying = parse_keying(a.keying);
    const auto ds = load_person_csv(a.input);
    const auto table = build_frequency_table(ds, field, keying, ctx.profile, ctx.jobs);

    std::vector<std::pair<std::string, RankFilter>> groups;
    if (a.by == "none") {
        groups.push_back({"", {}});
    } else if (a.by == "gender") {
        groups.push_back({"M", {Gender::Male, std::nullopt}});
        groups.push_back({"F", {Gender::Female, std::nullopt}});
    } else {
        std::set<std::string> provinces;
        for (const auto& [key, e] : table.entries) {
            for (const auto& [cell, count] : e.cells) {
                if (!cell.second.empty()) provinces.insert(cell.second);
            }
        }
        for (const auto& p : provinces) groups.push_back({p, {std::nullopt, p}});
    }

    // Romanization comes from the transliteration table; names it cannot
    // fully map get a blank ascii cell and are counted in the report.
    std::size_t unmapped = 0;
    auto ascii = [&](const std::string& display) {
        try {
            return ctx.translit.apply(normalize(display, ctx.profile));
        } catch (const Error&) {
            ++unmapped;
            return std::string();
        }
    };
    std::ostringstream csv_out;
    std::vector<std::string> header{"rank", "display", "ascii", "count"};
    if (a.by != "none") header.push_back(a.by);
    csv::write_row(csv_out, header);
    std::size_t rows = 0;
    for (const auto& [label, filter] : groups) {
        for (const auto& r : top_n(table, a.n, filter, ctx.profile)) {
            std::vector<std::string> row{std::to_string(r.rank), r.display, ascii(r.display), std::to_string(r.count)};
            if (a.by != "none") row.push_back(label);
            csv::write_row(csv_out, row);
            ++rows;
        }
    }
    const auto path = ctx.write(a.output, csv_out.str());

    ojson rep;
    rep["command"] = "topn";
    rep["input"] = a.input;
    rep["field"] = a.field;
    rep["keying"] = a.keying;
    rep["n"] = a.n;
    rep["by"] = a.by;
    rep["rows_read"] = ds.rows_read;
    rep["contributing_rows"] = table.contributing_rows;
    rep["missing_rows"] = table.missing_rows;
    rep["distinct_keys"] = table.entries.size();
    rep["output_rows"] = rows;
    rep["ascii_unmapped"] = unmapped;
    rep["output"] = path.string();
    rep["rejects"] = rejects_json(ds.rejects);
    if (!a.compare.empty()) {
        const auto before = build_frequency_table(ds, field, parse_keying(a.compare), ctx.profile, ctx.jobs);
        const auto shift = compare_rankings(before, table, a.n, ctx.profile);
        rep["rank_shift"] = ojson::parse(shift.to_json());
        rep["rank_shift"]["before_keying"] = a.compare;
    }
    ctx.emit_report("topn_report.json", rep.dump(2));
    return 0;
}

// --- impute ----------------------------------------------------------------

struct ImputeArgs {
    std::string input;
    std::string target = "gender";
    std::optional<std::size_t> min_support;
    std::optional<double> dominance;
    bool school_hint = false;
    std::string school_hints;
    std::string output = "imputed.csv";
};

int cmd_impute(Context ctx, const ImputeArgs& a) {
    if (a.min_support) ctx.policy.min_support = *a.min_support;
    if (a.dominance) ctx.policy.dominance = *a.dominance;
    if (a.school_hint) ctx.policy.use_school_hint = true;
    if (!a.school_hints.empty()) {
        ctx.policy.school_gender_keywords =
            as_config([&] { return ImputationPolicy::load_school_hints(a.school_hints); });
        ctx.policy.use_school_hint = true;
    }
    ctx.policy.validate();

    const auto ds = load_person_csv(a.input);
    ImputationResult res;
    if (a.target == "gender") {
        const auto ref = build_reference(ds, ImputeKey::FirstName, ImputeTarget::Gender, ctx.profile, ctx.jobs);
        res = impute_gender(ds, ref, ctx.policy, ctx.profile);
    } else {
        const auto ref = build_reference(ds, ImputeKey::HighSchool, ImputeTarget::Province, ctx.profile, ctx.jobs);
        res = impute_location(ds, ref, ctx.policy, ctx.profile);
    }
    const auto path = ctx.write(a.output, to_csv(res.dataset));

    ojson rep;
    rep["command"] = "impute";
    rep["input"] = a.input;
    rep["target"] = a.target == "location" ? "province" : a.target;
    rep["output"] = path.string();
    rep["rejects"] = rejects_json(ds.rejects);
    rep["report"] = ojson::parse(res.report.to_json());
    ctx.emit_report("impute_report.json", rep.dump(2));
    return 0;
}

// --- link ------------------------------------------------------------------

struct LinkArgs {
    std::string left;
    std::string right;
    std::string output = "matches.csv";
    std::string report = "link_report.json";
};

int cmd_link(const Context& ctx, const LinkArgs& a) {
    const auto left = load_person_csv(a.left);
    const auto right = load_school_csv(a.right);
    const auto result = exact_join(left, right, ctx.profile, ctx.provinces, ctx.jobs);
    const auto path = ctx.write(a.output, result.matches_csv());

    ojson rep;
    rep["command"] = "link";
    rep["left"] = a.left;
    rep["right"] = a.right;
    rep["output"] = path.string();
    rep["rejects_left"] = rejects_json(left.rejects);
    rep["rejects_right"] = rejects_json(right.rejects);
    rep["result"] = ojson::parse(result.to_json());
    ctx.emit_report(a.report, rep.dump(2));
    return 0;
}

// --- fake ------------------------------------------------------------------

struct FakeArgs {
    std::string provider;
    std::string input;
    std::size_t n = 100;
    std::uint64_t seed = 0;
    std::size_t top_k = 1000;
    MissingRates rates;
    std::string output = "fake.csv";
};

int cmd_fake(const Context& ctx, const FakeArgs& a) {
    ProviderData provider;
    std::string provider_out;
    if (!a.provider.empty()) {
        provider = ProviderData::load(a.provider);
    } else {
        const auto ds = load_person_csv(a.input);
        const auto first = build_frequency_table(ds, NameField::FirstName, Keying::Stripped, ctx.profile, ctx.jobs);
        const auto family = build_frequency_table(ds, NameField::FamilyName, Keying::Stripped, ctx.profile, ctx.jobs);
        std::map<std::string, std::size_t> schools;
        for (const auto& r : ds.records) {
            if (!r.high_school.empty()) ++schools[r.high_school];
        }
        const std::vector<std::pair<std::string, std::size_t>> inst(schools.begin(), schools.end());
        provider = build_provider(first, family, inst, ctx.provinces, ctx.translit,
                                  {a.top_k, a.top_k, a.top_k, a.top_k}, ctx.profile);
        provider_out = ctx.write("provider.json", provider.to_json() + "\n").string();
    }
    try {
        provider.validate(ctx.profile);
    } catch (const Error& e) {
        throw Error(ErrorCode::Config, (a.provider.empty() ? "derived provider" : a.provider) + ": " + e.what());
    }
    const auto ds = generate_records(provider, a.n, a.seed, a.rates);
    const auto path = ctx.write(a.output, to_csv(ds));

    ojson rep;
    rep["command"] = "fake";
    rep["seed"] = a.seed;
    rep["records"] = ds.records.size();
    rep["output"] = path.string();
    if (!provider_out.empty()) rep["provider"] = provider_out;
    ctx.emit_report("fake_report.json", rep.dump(2));
    return 0;
}

// --- ner -------------------------------------------------------------------

struct NerArgs {
    std::vector<std::string> gazetteers;
    std::vector<std::string> texts;
    std::string input;
    std::string output = "entities.jsonl";
    // build
    std::string build_input;
    bool with_provinces = false;
    std::string build_output = "gazetteer.csv";
};

int cmd_ner_build(const Context& ctx, const NerArgs& a) {
    const auto ds = load_person_csv(a.build_input);
    auto g = Gazetteer::from_dataset(ds, ctx.profile);
    if (a.with_provinces) g.add_provinces(ctx.provinces);
    const auto path = ctx.write(a.build_output, g.to_csv());
    ojson rep;
    rep["command"] = "ner build";
    rep["input"] = a.build_input;
    rep["entries"] = g.size();
    rep["output"] = path.string();
    rep["rejects"] = rejects_json(ds.rejects);
    ctx.emit_report("gazetteer_report.json", rep.dump(2));
    return 0;
}

int cmd_ner(const Context& ctx, const NerArgs& a) {
    Gazetteer g(ctx.profile);
    for (const auto& path : a.gazetteers) g.merge(Gazetteer::load_csv(path, ctx.profile));
    std::vector<std::string> docs = a.texts;
    if (!a.input.empty()) {
        std::istringstream in(csv::read_text_file(a.input));
        for (std::string line; std::getline(in, line);) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            docs.push_back(line);
        }
    }
    std::string lines;
    for (const auto& d : docs) lines += entities_to_json(d, tag_text(d, g)) + "\n";
    ctx.write(a.output, lines);
    *ctx.out << lines;
    return 0;
}

// --- validate --------------------------------------------------------------

struct ValidateArgs {
    std::string input;
    std::string schema = "person";
    YearBounds years;
};

int cmd_validate(const Context& ctx, const ValidateArgs& a) {
    if (a.years.min > a.years.max) {
        throw Error(ErrorCode::InvalidArgument, "--min-year exceeds --max-year");
    }
    const LoadOptions opts{a.years};
    const auto report = a.schema == "person" ? validate(load_person_csv(a.input, opts), a.years)
                                             : validate(load_school_csv(a.input, opts), a.years);
    ctx.emit_report("validation_report.json", report.to_json());
    return report.clean() ? 0 : 1;
}

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::Config:
        case ErrorCode::InvalidArgument:
        case ErrorCode::UnknownField:
            return 2;
        default:
            return 1;
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dari/Persian name-data cleaning, analysis and linkage toolkit", "dariq"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    app.set_version_flag("--version", "dariq 0.1.0");

    std::string config, profile, out_dir;
    unsigned jobs = 1;
    app.add_option("--config", config, "JSON config file")->check(CLI::ExistingFile);
    app.add_option("--profile", profile, "normalization profile JSON (overrides config)")->check(CLI::ExistingFile);
    app.add_option("--out-dir", out_dir, "directory for outputs and reports (default: config out_dir or .)");
    app.add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

    NormalizeArgs na;
    auto* norm = app.add_subcommand("normalize", "normalize text columns of a CSV file");
    norm->add_option("--input", na.input, "input CSV")->required()->check(CLI::ExistingFile);
    norm->add_option("--op", na.op, "operation")
        ->check(CLI::IsMember({"clean", "substitute", "trim", "strip", "normalize", "key", "tailored"}));
    norm->add_option("--columns", na.columns, "columns to rewrite (default: all but id)");
    norm->add_option("--output", na.output, "output file name inside --out-dir");

    TopnArgs ta;
    auto* topn = app.add_subcommand("topn", "most frequent names");
    topn->add_option("--input", ta.input, "person CSV")->required()->check(CLI::ExistingFile);
    topn->add_option("--field", ta.field, "name column")
        ->check(CLI::IsMember({"first_name", "family_name", "father_name", "grandfather_name"}));
    topn->add_option("--n", ta.n, "names per group")->check(CLI::PositiveNumber);
    topn->add_option("--by", ta.by, "grouping")->check(CLI::IsMember({"none", "gender", "province"}));
    topn->add_option("--keying", ta.keying, "aggregation key")
        ->check(CLI::IsMember({"raw", "builtin_trim", "stripped"}));
    topn->add_option("--compare", ta.compare, "report rank shifts from this keying to --keying")
        ->check(CLI::IsMember({"raw", "builtin_trim", "stripped"}));
    topn->add_option("--output", ta.output, "output file name inside --out-dir");

    ImputeArgs ia;
    auto* imp = app.add_subcommand("impute", "fill missing gender or province by majority vote");
    imp->add_option("--input", ia.input, "person CSV")->required()->check(CLI::ExistingFile);
    imp->add_option("--target", ia.target, "field to fill (location is an alias of province)")
        ->check(CLI::IsMember({"gender", "province", "location"}));
    imp->add_option("--min-support", ia.min_support, "minimum observations per key");
    imp->add_option("--dominance", ia.dominance, "minimum winner share, in (0.5, 1]");
    imp->add_flag("--school-hint", ia.school_hint, "let school-name keywords veto gender fills");
    imp->add_option("--school-hints", ia.school_hints, "keyword JSON for the school hint (implies --school-hint)")
        ->check(CLI::ExistingFile);
    imp->add_option("--output", ia.output, "output file name inside --out-dir");

    LinkArgs la;
    auto* link = app.add_subcommand("link", "exact join of person records to school records");
    link->add_option("--left", la.left, "person CSV")->required()->check(CLI::ExistingFile);
    link->add_option("--right", la.right, "school CSV")->required()->check(CLI::ExistingFile);
    link->add_option("--output", la.output, "output file name inside --out-dir");
    link->add_option("--report", la.report, "report file name inside --out-dir");

    FakeArgs fa;
    auto* fake = app.add_subcommand("fake", "generate synthetic person records");
    auto* prov_opt = fake->add_option("--provider", fa.provider, "provider JSON")->check(CLI::ExistingFile);
    auto* in_opt = fake->add_option("--input", fa.input, "person CSV to derive a provider from")
                       ->check(CLI::ExistingFile);
    prov_opt->excludes(in_opt);
    fake->add_option("--n", fa.n, "records to generate");
    fake->add_option("--seed", fa.seed, "generator seed");
    fake->add_option("--top-k", fa.top_k, "names kept per category when deriving a provider")
        ->check(CLI::PositiveNumber);
    fake->add_option("--missing-gender,--missing-gender-rate", fa.rates.gender)->check(CLI::Range(0.0, 1.0));
    fake->add_option("--missing-province,--missing-province-rate", fa.rates.province)->check(CLI::Range(0.0, 1.0));
    fake->add_option("--missing-school,--missing-school-rate", fa.rates.high_school)->check(CLI::Range(0.0, 1.0));
    fake->add_option("--missing-year,--missing-year-rate", fa.rates.graduation_year)->check(CLI::Range(0.0, 1.0));
    fake->add_option("--output,--out", fa.output, "output file name inside --out-dir");

    NerArgs ea;
    auto* ner = app.add_subcommand("ner", "tag person, location and institution names in text");
    ner->add_option("--gazetteer", ea.gazetteers, "gazetteer CSV (surface,type); repeat to merge several")
        ->check(CLI::ExistingFile);
    ner->add_option("--text", ea.texts, "text to tag (repeatable)");
    ner->add_option("--input,--in", ea.input, "UTF-8 text file, one document per line")->check(CLI::ExistingFile);
    ner->add_option("--output,--out", ea.output, "output file name inside --out-dir");
    ner->require_subcommand(0, 1);
    auto* ner_build = ner->add_subcommand("build", "derive a gazetteer from a person CSV");
    ner_build->add_option("--input", ea.build_input, "person CSV")->required()->check(CLI::ExistingFile);
    ner_build->add_flag("--with-provinces", ea.with_provinces, "also add the province table");
    ner_build->add_option("--output", ea.build_output, "output file name inside --out-dir");

    ValidateArgs va;
    auto* val = app.add_subcommand("validate", "check a record file and report problems");
    val->add_option("--input", va.input, "CSV file")->required()->check(CLI::ExistingFile);
    val->add_option("--schema", va.schema, "record layout")->check(CLI::IsMember({"person", "school"}));
    val->add_option("--min-year", va.years.min, "earliest plausible graduation year");
    val->add_option("--max-year", va.years.max, "latest plausible graduation year");

    std::vector<const char*> argv{"dariq"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        const Context ctx = make_context(config, profile, out_dir, jobs, out);
        if (norm->parsed()) return cmd_normalize(ctx, na);
        if (topn->parsed()) return cmd_topn(ctx, ta);
        if (imp->parsed()) return cmd_impute(ctx, ia);
        if (link->parsed()) return cmd_link(ctx, la);
        if (fake->parsed()) {
            if (fa.provider.empty() && fa.input.empty()) {
                err << "fake: one of --provider or --input is required\n";
                return 2;
            }
            return cmd_fake(ctx, fa);
        }
        if (ner_build->parsed()) return cmd_ner_build(ctx, ea);
        if (ner->parsed()) {
            if (ea.gazetteers.empty()) {
                err << "ner: --gazetteer is required\n";
                return 2;
            }
            return cmd_ner(ctx, ea);
        }
        return cmd_validate(ctx, va);
    } catch (const Error& e) {
        err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace dariq
