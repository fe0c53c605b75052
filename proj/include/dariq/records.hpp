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
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dariq {

enum class Gender { Male, Female, Missing };

/// File encoding: "M", "F", or "" for missing.
std::string_view to_code(Gender g) noexcept;
std::optional<Gender> parse_gender(std::string_view code) noexcept;

struct YearBounds {
    int min = 1350;
    int max = 1450;
    bool contains(int year) const noexcept { return year >= min && year <= max; }
};

/// One exam-candidate row. Text fields hold the raw cell exactly as read; an
/// empty string means MISSING. Nothing here is normalized.
struct PersonRecord {
    std::string id;
    std::string first_name;
    std::string family_name;
    std::string father_name;
    std::string grandfather_name;
    Gender gender = Gender::Missing;
    std::string province;
    std::string district;
    std::string village;
    std::string high_school;
    std::optional<int> graduation_year;
    std::optional<double> score;

    bool operator==(const PersonRecord&) const = default;
};

/// One high-school marks row.
struct SchoolRecord {
    std::string id;
    std::string first_name;
    std::string father_name;
    std::string province;
    std::string high_school;
    std::optional<int> graduation_year;
    std::optional<double> school_marks;

    bool operator==(const SchoolRecord&) const = default;
};

enum class NameField { FirstName, FamilyName, FatherName, GrandfatherName };

/// Throws Error(UnknownField) for anything but the four name columns.
NameField parse_name_field(std::string_view name);
std::string_view to_string(NameField field) noexcept;
const std::string& name_of(const PersonRecord& record, NameField field) noexcept;

struct RejectedRow {
    std::size_t line = 0;
    std::string reason;

    bool operator==(const RejectedRow&) const = default;
};

template <class Record>
struct Dataset {
    std::vector<Record> records;  // file order
    std::string source;
    std::size_t rows_read = 0;  // data rows seen, accepted or rejected
    std::vector<RejectedRow> rejects;

    std::size_t size() const noexcept { return records.size(); }
    bool empty() const noexcept { return records.empty(); }
};

using PersonDataset = Dataset<PersonRecord>;
using SchoolDataset = Dataset<SchoolRecord>;

enum class Schema { Person, School };

const std::vector<std::string>& person_header();
const std::vector<std::string>& school_header();

struct LoadOptions {
    YearBounds years;
};

/// Parses a UTF-8 CSV with a header row. Blank cells become MISSING. Rows
/// with the wrong arity, an empty id, an unknown gender code, or a bad or
/// out-of-range year or score are moved to `rejects` with their line number.
/// Throws Error(Schema) when a required column is absent.
PersonDataset parse_person_csv(std::string_view text, std::string source, const LoadOptions& options = {});
SchoolDataset parse_school_csv(std::string_view text, std::string source, const LoadOptions& options = {});

/// As above, reading from disk. Adds Error(Io) and Error(Encoding).
PersonDataset load_person_csv(const std::filesystem::path& path, const LoadOptions& options = {});
SchoolDataset load_school_csv(const std::filesystem::path& path, const LoadOptions& options = {});

std::string to_csv(const PersonDataset& dataset);
std::string to_csv(const SchoolDataset& dataset);
void write_csv(const PersonDataset& dataset, const std::filesystem::path& path);
void write_csv(const SchoolDataset& dataset, const std::filesystem::path& path);

std::string format_decimal(double value);

struct DuplicateId {
    std::string id;
    std::size_t first_index = 0;
    std::size_t duplicate_index = 0;
};

struct OutOfRangeYear {
    std::size_t index = 0;
    std::string id;
    int year = 0;
};

struct ValidationReport {
    std::string source;
    std::size_t rows = 0;
    std::vector<DuplicateId> duplicates;
    std::vector<OutOfRangeYear> out_of_range_years;
    std::map<std::string, std::size_t> missing;  // column -> blank cells
    std::vector<RejectedRow> rejects;             // carried over from load

    /// True when nothing is duplicated, out of range, missing or rejected.
    bool clean() const;
    double missing_rate(const std::string& column) const;
    std::string to_json() const;
};

ValidationReport validate(const PersonDataset& dataset, const YearBounds& years = {});
ValidationReport validate(const SchoolDataset& dataset, const YearBounds& years = {});

}  // namespace dariq
