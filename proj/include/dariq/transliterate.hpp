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
#include <string>
#include <string_view>
#include <vector>

namespace dariq {

/// Persian/Dari -> ASCII romanization rules, applied greedily left to right
/// with the longest matching source sequence winning.
///
/// Sources and input are compared after folding Arabic Yeh/Kaf onto their
/// Persian forms, so one rule covers both spellings. A rule whose source
/// contains spaces is also registered under its space-free spelling (unless
/// that spelling already has a rule), so "ذبیحالله" and "ذبیح الله" romanize
/// alike. Printable ASCII passes through unchanged. The first letter of every
/// romanized word is upper-cased.
class TransliterationTable {
public:
    struct Rule {
        std::string source;
        std::string ascii;
        bool drop = false;  // allowed to produce nothing (diacritics, ZWNJ)
    };

    /// CSV with header source,ascii,flags. flags is empty or "drop".
    static TransliterationTable parse_csv(std::string_view text, const std::string& source = "transliteration.csv");
    static TransliterationTable load_csv(const std::filesystem::path& path);
    /// Table shipped in data/transliteration.csv.
    static TransliterationTable defaults();

    /// Throws Error(Config) when ascii is not 7-bit printable, or is empty
    /// without `drop`, or the source is empty.
    void add(std::string_view source, std::string_view ascii, bool drop = false);

    /// Throws Error(UnmappedCodepoint) naming the codepoint and its offset.
    std::string apply(std::string_view text) const;
    bool covers(std::string_view text) const;

    const std::vector<Rule>& rules() const noexcept { return rules_; }

private:
    std::vector<Rule> rules_;
    std::map<std::u32string, std::string> index_;  // folded source -> ascii
    std::size_t longest_ = 0;
};

inline std::string transliterate(std::string_view text, const TransliterationTable& table) {
    return table.apply(text);
}

}  // namespace dariq
