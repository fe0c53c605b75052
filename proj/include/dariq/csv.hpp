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
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

// Minimal RFC-4180 reader/writer shared by the record, lexicon, gazetteer and
// table loaders.
namespace dariq::csv {

struct Row {
    std::size_t line = 0;  // 1-based physical line where the row starts
    std::vector<std::string> fields;
    std::string error;  // non-empty when the row could not be parsed
};

/// Splits text into rows. Quoted fields may contain commas, doubled quotes
/// and line breaks. CRLF and LF are both accepted; a leading BOM is skipped.
std::vector<Row> parse(std::string_view text);

/// Reads a whole file and checks it is UTF-8. Throws Error(Io) or
/// Error(Encoding); both messages name the file.
std::string read_text_file(const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path, std::string_view contents);

std::string quote(std::string_view field);
void write_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace dariq::csv
