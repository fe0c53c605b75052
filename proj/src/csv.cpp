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
#include "dariq/csv.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "dariq/error.hpp"
#include "dariq/utf8.hpp"

namespace dariq::csv {

std::vector<Row> parse(std::string_view text) {
    if (text.starts_with("\xEF\xBB\xBF")) {
        text.remove_prefix(3);
    }
    std::vector<Row> rows;
    std::size_t pos = 0;
    std::size_t line = 1;
    while (pos < text.size()) {
        Row row;
        row.line = line;
        std::string field;
        bool in_quotes = false;
        bool quoted_field = false;
        bool row_done = false;
        while (!row_done) {
            if (pos >= text.size()) {
                if (in_quotes) {
                    row.error = "unterminated quoted field";
                }
                row.fields.push_back(std::move(field));
                break;
            }
            const char c = text[pos];
            if (in_quotes) {
                if (c == '"') {
                    if (pos + 1 < text.size() && text[pos + 1] == '"') {
                        field.push_back('"');
                        pos += 2;
                    } else {
                        in_quotes = false;
                        ++pos;
                    }
                } else {
                    if (c == '\n') {
                        ++line;
                    }
                    field.push_back(c);
                    ++pos;
                }
                continue;
            }
            switch (c) {
                case ',':
                    row.fields.push_back(std::move(field));
                    field.clear();
                    quoted_field = false;
                    ++pos;
                    break;
                case '\r':
                    if (pos + 1 < text.size() && text[pos + 1] == '\n') {
                        ++pos;
                    }
                    [[fallthrough]];
                case '\n':
                    ++pos;
                    ++line;
                    row.fields.push_back(std::move(field));
                    row_done = true;
                    break;
                case '"':
                    if (field.empty() && !quoted_field) {
                        in_quotes = true;
                        quoted_field = true;
                    } else if (row.error.empty()) {
                        row.error = "stray quote inside field " + std::to_string(row.fields.size() + 1);
                    }
                    ++pos;
                    break;
                default:
                    if (quoted_field && row.error.empty()) {
                        row.error = "text after closing quote in field " +
                                    std::to_string(row.fields.size() + 1);
                    }
                    field.push_back(c);
                    ++pos;
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open '" + path.string() + "' for reading");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
        throw Error(ErrorCode::Io, "read failure on '" + path.string() + "'");
    }
    std::string text = std::move(buffer).str();
    if (auto bad = utf8::find_invalid(text)) {
        throw Error(ErrorCode::Encoding, "'" + path.string() + "' is not valid UTF-8 (byte offset " +
                                             std::to_string(*bad) + ")");
    }
    return text;
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::Io, "cannot open '" + path.string() + "' for writing");
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) {
        throw Error(ErrorCode::Io, "write failure on '" + path.string() + "'");
    }
}

std::string quote(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
        return std::string(field);
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') {
            out.push_back('"');
        }
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i != 0) {
            out << ',';
        }
        out << quote(fields[i]);
    }
    out << '\n';
}

}  // namespace dariq::csv
