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
#include <optional>
#include <string>
#include <string_view>

namespace dariq::utf8 {

/// Decodes UTF-8 into codepoints. Throws Error(Encoding) on overlong forms,
/// surrogates, truncated sequences or values above U+10FFFF; the message
/// carries the byte offset.
std::u32string decode(std::string_view bytes);

std::string encode(std::u32string_view codepoints);

void append(std::string& out, char32_t cp);

/// Byte offset of the first invalid sequence, or nullopt when valid.
std::optional<std::size_t> find_invalid(std::string_view bytes) noexcept;

inline bool is_valid(std::string_view bytes) noexcept { return !find_invalid(bytes); }

/// Number of codepoints; input must be valid UTF-8.
std::size_t length(std::string_view bytes);

}  // namespace dariq::utf8
