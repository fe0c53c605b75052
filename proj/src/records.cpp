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
#include "dariq/records.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "dariq/csv.hpp"
#include "dariq/error.hpp"
#include "dariq/utf8.hpp"

namespace dariq {

std::string_view to_code(Gender g) noexcept {
    switch (g) {
        case Gender::Male: return "M";
        case Gender::Female: return "F";
        case Gender::Missing: return "";
    }
    return "";
}

std::optional<Gender> parse_gender(std::string_view code) noexcept {
    if (code == "M") return Gender::Male;
    if (code == "F") return Gender::Female;
    if (code.empty()) return Gender::Missing;
    return std::nullopt;
}

NameField parse_name_field(std::string_view name) {
    if (name == "first_name") return NameField::FirstName;
    if (name == "family_name") return NameField::FamilyName;
    if (name == "father_name") return NameField::FatherName;
    if (name == "grandfather_name") return NameField::GrandfatherName;
    throw Error(ErrorCode::UnknownField, "unknown name field '" + std::string(name) +
                                             "' (expected first_name, family_name, father_name "
                                             "or grandfather_name)");
}

std::string_view to_string(NameField field) noexcept {
    switch (field) {
        case NameField::FirstName: return "first_name";
        case NameField::FamilyName: return "family_name";
        case NameField::FatherName: return "father_name";
        case NameField::GrandfatherName: return "grandfather_name";
    }
    return "";
}

const std::string& name_of(const PersonRecord& record, NameField field) noexcept {
    switch (field) {
        case NameField::FamilyName: return record.family_name;
        case NameField::FatherName: return record.father_name;
        case NameField::GrandfatherName: return record.grandfather_name;
        case NameField::FirstName: break;
    }
    return record.first_name;
}

const std::vector<std::string>& person_header() {
    static const std::vector<std::string> header = {
        "id",       "first_name", "family_name", "father_name", "grandfather_name", "gender",
        "province", "district",   "village",     "high_school", "graduation_year",  "score"};
    return header;
}

const std::vector<std::string>& school_header() {
    static const std::vector<std::string> header = {"id",          "first_name",      "father_name", "province",
                                                    "high_school", "graduation_year", "school_marks"};
    return header;
}

std::string format_decimal(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, end);
}

namespace {

// Maps header names to column positions; throws when a required column is
// absent.
std::vector<std::size_t> resolve_columns(const csv::Row& header_row, const std::vector<std::string>& required,
                                         const std::string& source) {
    std::unordered_map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < header_row.fields.size(); ++i) {
        pos.emplace(header_row.fields[i], i);
    }
    std::vector<std::size_t> out;
    for (const auto& name : required) {
        auto it = pos.find(name);
        if (it == pos.end()) {
            throw Error(ErrorCode::Schema, source + ": missing required column '" + name + "'");
        }
        out.push_back(it->second);
    }
    return out;
}

std::optional<int> parse_year(const std::string& cell, const YearBounds& bounds, std::string& why) {
    if (cell.empty()) {
        return std::nullopt;
    }
    int year = 0;
    auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), year);
    if (ec != std::errc{} || end != cell.data() + cell.size()) {
        why = "graduation_year '" + cell + "' is not an integer";
        return std::nullopt;
    }
    if (!bounds.contains(year)) {
        why = "graduation_year " + cell + " outside [" + std::to_string(bounds.min) + ", " +
              std::to_string(bounds.max) + "]";
        return std::nullopt;
    }
    return year;
}

std::optional<double> parse_decimal(const std::string& cell, const char* column, std::string& why) {
    if (cell.empty()) {
        return std::nullopt;
    }
    double value = 0;
    auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc{} || end != cell.data() + cell.size()) {
        why = std::string(column) + " '" + cell + "' is not a decimal number";
        return std::nullopt;
    }
    if (!std::isfinite(value)) {
        why = std::string(column) + " '" + cell + "' is not finite";
        return std::nullopt;
    }
    return value;
}

template <class Record, class Build>
Dataset<Record> parse_table(std::string_view text, std::string source, const std::vector<std::string>& header,
                            Build build) {
    Dataset<Record> ds;
    ds.source = std::move(source);
    if (auto bad = utf8::find_invalid(text)) {
        throw Error(ErrorCode::Encoding,
                    ds.source + ": not valid UTF-8 (byte offset " + std::to_string(*bad) + ")");
    }
    auto rows = csv::parse(text);
    std::size_t first = 0;
    while (first < rows.size() && rows[first].fields.size() == 1 && rows[first].fields[0].empty()) {
        ++first;
    }
    if (first == rows.size()) {
        throw Error(ErrorCode::Schema, ds.source + ": no header row");
    }
    if (!rows[first].error.empty()) {
        throw Error(ErrorCode::Schema, ds.source + ": malformed header row: " + rows[first].error);
    }
    const auto columns = resolve_columns(rows[first], header, ds.source);
    const std::size_t width = rows[first].fields.size();
    for (std::size_t r = first + 1; r < rows.size(); ++r) {
        auto& row = rows[r];
        if (row.fields.size() == 1 && row.fields[0].empty() && row.error.empty()) {
            continue;
        }
        ++ds.rows_read;
        if (!row.error.empty()) {
            ds.rejects.push_back({row.line, row.error});
            continue;
        }
        if (row.fields.size() != width) {
            ds.rejects.push_back({row.line, "expected " + std::to_string(width) + " fields, found " +
                                                std::to_string(row.fields.size())});
            continue;
        }
        std::vector<std::string> cells;
        cells.reserve(columns.size());
        for (std::size_t c : columns) {
            cells.push_back(std::move(row.fields[c]));
        }
        std::string why;
        Record rec = build(cells, why);
        if (!why.empty()) {
            ds.rejects.push_back({row.line, std::move(why)});
            continue;
        }
        ds.records.push_back(std::move(rec));
    }
    return ds;
}

}  // namespace

PersonDataset parse_person_csv(std::string_view text, std::string source, const LoadOptions& options) {
    return parse_table<PersonRecord>(
        text, std::move(source), person_header(), [&](std::vector<std::string>& c, std::string& why) {
            PersonRecord p;
            p.id = std::move(c[0]);
            if (p.id.empty()) {
                why = "empty id";
                return p;
            }
            p.first_name = std::move(c[1]);
            p.family_name = std::move(c[2]);
            p.father_name = std::move(c[3]);
            p.grandfather_name = std::move(c[4]);
            if (auto g = parse_gender(c[5])) {
                p.gender = *g;
            } else {
                why = "gender '" + c[5] + "' is not M, F or blank";
                return p;
            }
            p.province = std::move(c[6]);
            p.district = std::move(c[7]);
            p.village = std::move(c[8]);
            p.high_school = std::move(c[9]);
            p.graduation_year = parse_year(c[10], options.years, why);
            if (why.empty()) {
                p.score = parse_decimal(c[11], "score", why);
            }
            return p;
        });
}

SchoolDataset parse_school_csv(std::string_view text, std::string source, const LoadOptions& options) {
    return parse_table<SchoolRecord>(
        text, std::move(source), school_header(), [&](std::vector<std::string>& c, std::string& why) {
            SchoolRecord s;
            s.id = std::move(c[0]);
            if (s.id.empty()) {
                why = "empty id";
                return s;
            }
            s.first_name = std::move(c[1]);
            s.father_name = std::move(c[2]);
            s.province = std::move(c[3]);
            s.high_school = std::move(c[4]);
            s.graduation_year = parse_year(c[5], options.years, why);
            if (why.empty()) {
                s.school_marks = parse_decimal(c[6], "school_marks", why);
            }
            return s;
        });
}

PersonDataset load_person_csv(const std::filesystem::path& path, const LoadOptions& options) {
    return parse_person_csv(csv::read_text_file(path), path.string(), options);
}

SchoolDataset load_school_csv(const std::filesystem::path& path, const LoadOptions& options) {
    return parse_school_csv(csv::read_text_file(path), path.string(), options);
}

namespace {

std::string year_cell(const std::optional<int>& y) { return y ? std::to_string(*y) : std::string(); }
std::string decimal_cell(const std::optional<double>& d) { return d ? format_decimal(*d) : std::string(); }

}  // namespace

std::string to_csv(const PersonDataset& dataset) {
    std::ostringstream out;
    csv::write_row(out, person_header());
    for (const auto& p : dataset.records) {
        csv::write_row(out, {p.id, p.first_name, p.family_name, p.father_name, p.grandfather_name,
                             std::string(to_code(p.gender)), p.province, p.district, p.village, p.high_school,
                             year_cell(p.graduation_year), decimal_cell(p.score)});
    }
    return std::move(out).str();
}

std::string to_csv(const SchoolDataset& dataset) {
    std::ostringstream out;
    csv::write_row(out, school_header());
    for (const auto& s : dataset.records) {
        csv::write_row(out, {s.id, s.first_name, s.father_name, s.province, s.high_school,
                             year_cell(s.graduation_year), decimal_cell(s.school_marks)});
    }
    return std::move(out).str();
}

void write_csv(const PersonDataset& dataset, const std::filesystem::path& path) {
    csv::write_text_file(path, to_csv(dataset));
}

void write_csv(const SchoolDataset& dataset, const std::filesystem::path& path) {
    csv::write_text_file(path, to_csv(dataset));
}

// ---- validation -------------------------------------------------------------

bool ValidationReport::clean() const {
    if (!duplicates.empty() || !out_of_range_years.empty() || !rejects.empty()) {
        return false;
    }
    for (const auto& [column, n] : missing) {
        if (n != 0) return false;
    }
    return true;
}

double ValidationReport::missing_rate(const std::string& column) const {
    auto it = missing.find(column);
    if (it == missing.end() || rows == 0) {
        return 0.0;
    }
    return static_cast<double>(it->second) / static_cast<double>(rows);
}

std::string ValidationReport::to_json() const {
    nlohmann::ordered_json j;
    j["source"] = source;
    j["rows"] = rows;
    j["clean"] = clean();
    j["duplicate_ids"] = nlohmann::ordered_json::array();
    for (const auto& d : duplicates) {
        j["duplicate_ids"].push_back({{"id", d.id}, {"first_index", d.first_index}, {"duplicate_index", d.duplicate_index}});
    }
    j["out_of_range_years"] = nlohmann::ordered_json::array();
    for (const auto& y : out_of_range_years) {
        j["out_of_range_years"].push_back({{"index", y.index}, {"id", y.id}, {"year", y.year}});
    }
    j["missing"] = nlohmann::ordered_json::object();
    for (const auto& [column, n] : missing) {
        j["missing"][column] = n;
    }
    j["rejects"] = nlohmann::ordered_json::array();
    for (const auto& r : rejects) {
        j["rejects"].push_back({{"line", r.line}, {"reason", r.reason}});
    }
    return j.dump(2);
}

namespace {

template <class Record, class Columns>
ValidationReport validate_impl(const Dataset<Record>& ds, const YearBounds& years, const std::vector<std::string>& header,
                               Columns columns) {
    ValidationReport report;
    report.source = ds.source;
    report.rows = ds.records.size();
    report.rejects = ds.rejects;
    for (std::size_t c = 1; c < header.size(); ++c) {
        report.missing[header[c]] = 0;
    }
    std::unordered_map<std::string, std::size_t> first_seen;
    for (std::size_t i = 0; i < ds.records.size(); ++i) {
        const auto& rec = ds.records[i];
        auto [it, inserted] = first_seen.emplace(rec.id, i);
        if (!inserted) {
            report.duplicates.push_back({rec.id, it->second, i});
        }
        if (rec.graduation_year && !years.contains(*rec.graduation_year)) {
            report.out_of_range_years.push_back({i, rec.id, *rec.graduation_year});
        }
        const auto blanks = columns(rec);
        for (std::size_t c = 1; c < header.size(); ++c) {
            if (blanks[c - 1]) {
                ++report.missing[header[c]];
            }
        }
    }
    return report;
}

}  // namespace

ValidationReport validate(const PersonDataset& dataset, const YearBounds& years) {
    return validate_impl(dataset, years, person_header(), [](const PersonRecord& p) {
        return std::vector<bool>{p.first_name.empty(),       p.family_name.empty(),
                                 p.father_name.empty(),      p.grandfather_name.empty(),
                                 p.gender == Gender::Missing, p.province.empty(),
                                 p.district.empty(),         p.village.empty(),
                                 p.high_school.empty(),      !p.graduation_year.has_value(),
                                 !p.score.has_value()};
    });
}

ValidationReport validate(const SchoolDataset& dataset, const YearBounds& years) {
    return validate_impl(dataset, years, school_header(), [](const SchoolRecord& s) {
        return std::vector<bool>{s.first_name.empty(),  s.father_name.empty(),          s.province.empty(),
                                 s.high_school.empty(), !s.graduation_year.has_value(), !s.school_marks.has_value()};
    });
}

}  // namespace dariq
