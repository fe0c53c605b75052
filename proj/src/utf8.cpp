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
#include "dariq/utf8.hpp"

#include "dariq/error.hpp"

namespace dariq {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::Io: return "IO_ERROR";
        case ErrorCode::Encoding: return "ENCODING_ERROR";
        case ErrorCode::Schema: return "SCHEMA_ERROR";
        case ErrorCode::Config: return "CONFIG_ERROR";
        case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
        case ErrorCode::UnknownField: return "UNKNOWN_FIELD";
        case ErrorCode::AmbiguousKey: return "AMBIGUOUS_KEY";
        case ErrorCode::MissingComponent: return "MISSING_COMPONENT";
        case ErrorCode::UnmappedCodepoint: return "UNMAPPED_CODEPOINT";
        case ErrorCode::InsufficientData: return "INSUFFICIENT_DATA";
    }
    return "UNKNOWN";
}

namespace utf8 {
namespace {

// Decodes one sequence starting at bytes[pos]. Returns the codepoint and
// advances pos, or returns nullopt leaving pos untouched.
std::optional<char32_t> next(std::string_view bytes, std::size_t& pos) noexcept {
    const auto lead = static_cast<unsigned char>(bytes[pos]);
    if (lead < 0x80) {
        ++pos;
        return lead;
    }
    std::size_t extra = 0;
    char32_t cp = 0;
    char32_t min = 0;
    if ((lead & 0xE0) == 0xC0) {
        extra = 1;
        cp = lead & 0x1F;
        min = 0x80;
    } else if ((lead & 0xF0) == 0xE0) {
        extra = 2;
        cp = lead & 0x0F;
        min = 0x800;
    } else if ((lead & 0xF8) == 0xF0) {
        extra = 3;
        cp = lead & 0x07;
        min = 0x10000;
    } else {
        return std::nullopt;
    }
    if (pos + extra >= bytes.size()) {
        return std::nullopt;
    }
    for (std::size_t i = 1; i <= extra; ++i) {
        const auto cont = static_cast<unsigned char>(bytes[pos + i]);
        if ((cont & 0xC0) != 0x80) {
            return std::nullopt;
        }
        cp = (cp << 6) | (cont & 0x3F);
    }
    if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
        return std::nullopt;
    }
    pos += extra + 1;
    return cp;
}

}  // namespace

std::u32string decode(std::string_view bytes) {
    std::u32string out;
    out.reserve(bytes.size());
    std::size_t pos = 0;
    while (pos < bytes.size()) {
        auto cp = next(bytes, pos);
        if (!cp) {
            throw Error(ErrorCode::Encoding,
                        "invalid UTF-8 sequence at byte offset " + std::to_string(pos));
        }
        out.push_back(*cp);
    }
    return out;
}

void append(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

std::string encode(std::u32string_view codepoints) {
    std::string out;
    out.reserve(codepoints.size() * 2);
    for (char32_t cp : codepoints) {
        append(out, cp);
    }
    return out;
}

std::optional<std::size_t> find_invalid(std::string_view bytes) noexcept {
    std::size_t pos = 0;
    while (pos < bytes.size()) {
        if (!next(bytes, pos)) {
            return pos;
        }
    }
    return std::nullopt;
}

std::size_t length(std::string_view bytes) {
    std::size_t n = 0;
    for (char c : bytes) {
        if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
            ++n;
        }
    }
    return n;
}

}  // namespace utf8
}  // namespace dariq
