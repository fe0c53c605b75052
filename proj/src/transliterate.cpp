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
#include "dariq/transliterate.hpp"

#include <cstdio>

#include "dariq/csv.hpp"
#include "dariq/embedded.hpp"
#include "dariq/error.hpp"
#include "dariq/utf8.hpp"

namespace dariq {

namespace {

char32_t fold(char32_t cp) {
    switch (cp) {
        case 0x064A: return 0x06CC;  // Arabic Yeh
        case 0x0643: return 0x06A9;  // Arabic Kaf
        default: return cp;
    }
}

std::u32string fold(std::u32string s) {
    for (auto& cp : s) cp = fold(cp);
    return s;
}

bool printable_ascii(char32_t cp) { return cp >= 0x20 && cp <= 0x7E; }

}  // namespace

void TransliterationTable::add(std::string_view source, std::string_view ascii, bool drop) {
    if (source.empty()) {
        throw Error(ErrorCode::Config, "transliteration rule with empty source");
    }
    for (char c : ascii) {
        if (!printable_ascii(static_cast<unsigned char>(c))) {
            throw Error(ErrorCode::Config, "transliteration of '" + std::string(source) + "' is not printable ASCII");
        }
    }
    if (ascii.empty() && !drop) {
        throw Error(ErrorCode::Config, "transliteration of '" + std::string(source) +
                                           "' is empty but not marked drop");
    }
    const auto key = fold(utf8::decode(source));
    rules_.push_back({std::string(source), std::string(ascii), drop});
    index_[key] = std::string(ascii);
    longest_ = std::max(longest_, key.size());

    std::u32string joined;
    for (char32_t cp : key) {
        if (cp != U' ') joined.push_back(cp);
    }
    if (!joined.empty() && joined.size() != key.size()) {
        index_.try_emplace(std::move(joined), std::string(ascii));
    }
}

TransliterationTable TransliterationTable::parse_csv(std::string_view text, const std::string& source) {
    TransliterationTable table;
    const auto rows = csv::parse(text);
    bool header = true;
    for (const auto& row : rows) {
        if (row.fields.size() == 1 && row.fields[0].empty()) continue;
        const auto where = source + ":" + std::to_string(row.line);
        if (!row.error.empty() || row.fields.size() < 2 || row.fields.size() > 3) {
            throw Error(ErrorCode::Config, where + ": expected source,ascii[,flags]");
        }
        if (header) {
            header = false;
            if (row.fields[0] == "source") continue;
        }
        const bool drop = row.fields.size() == 3 && row.fields[2] == "drop";
        if (row.fields.size() == 3 && !row.fields[2].empty() && !drop) {
            throw Error(ErrorCode::Config, where + ": unknown flag '" + row.fields[2] + "'");
        }
        try {
            table.add(row.fields[0], row.fields[1], drop);
        } catch (const Error& e) {
            throw Error(ErrorCode::Config, where + ": " + e.what());
        }
    }
    return table;
}

TransliterationTable TransliterationTable::load_csv(const std::filesystem::path& path) {
    std::string text;
    try {
        text = csv::read_text_file(path);
    } catch (const Error& e) {
        throw Error(ErrorCode::Config, e.what());
    }
    return parse_csv(text, path.string());
}

TransliterationTable TransliterationTable::defaults() {
    static const TransliterationTable table = parse_csv(embedded::file("transliteration.csv"));
    return table;
}

std::string TransliterationTable::apply(std::string_view text) const {
    const auto input = utf8::decode(text);
    const auto folded = fold(input);
    std::string out;
    bool word_start = true;
    std::size_t i = 0;
    while (i < folded.size()) {
        const std::size_t max = std::min(longest_, folded.size() - i);
        bool matched = false;
        for (std::size_t len = max; len > 0; --len) {
            auto it = index_.find(folded.substr(i, len));
            if (it == index_.end()) continue;
            for (char c : it->second) {
                if (word_start && c >= 'a' && c <= 'z') {
                    c = static_cast<char>(c - 'a' + 'A');
                }
                out.push_back(c);
                word_start = c == ' ';
            }
            i += len;
            matched = true;
            break;
        }
        if (matched) continue;
        const char32_t cp = input[i];
        if (!printable_ascii(cp)) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "U+%04X at codepoint offset %zu", static_cast<unsigned>(cp), i);
            throw Error(ErrorCode::UnmappedCodepoint, std::string("no transliteration for ") + buf);
        }
        out.push_back(static_cast<char>(cp));
        word_start = cp == U' ';
        ++i;
    }
    return out;
}

bool TransliterationTable::covers(std::string_view text) const {
    try {
        apply(text);
        return true;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::UnmappedCodepoint) return false;
        throw;
    }
}

}  // namespace dariq
