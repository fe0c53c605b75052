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
#include <set>
#include <span>
#include <string>
#include <string_view>

namespace dariq {

inline constexpr char32_t kSpace = 0x0020;
inline constexpr char32_t kZwnj = 0x200C;
inline constexpr char32_t kArabicYeh = 0x064A;
inline constexpr char32_t kFarsiYeh = 0x06CC;
inline constexpr char32_t kArabicKaf = 0x0643;
inline constexpr char32_t kKeheh = 0x06A9;

enum class JoinControlPolicy { Keep, Strip };

/// Character classes and substitution rules used by every cleansing routine.
///
/// `nonprinting` codepoints are deleted by clean(); `spaces` are folded to
/// U+0020. The substitution map is applied transitively, so a chain a->b->c
/// rewrites a to c in one pass. ZWNJ handling differs between display forms
/// (normalize) and join keys (normalized_key).
struct NormalizationProfile {
    std::set<char32_t> nonprinting;
    std::set<char32_t> spaces;
    std::map<char32_t, char32_t> substitutions;
    JoinControlPolicy display_join_control = JoinControlPolicy::Keep;
    JoinControlPolicy key_join_control = JoinControlPolicy::Strip;

    /// Controls 0-31, 127, 129, 141, 143, 144, 157; spaces 32 and 160;
    /// Arabic Yeh -> Farsi Yeh.
    static NormalizationProfile defaults();

    /// Adds Arabic Kaf -> Keheh on top of the current map.
    NormalizationProfile with_arabic_kaf() const;

    /// Throws Error(Config) when the sets overlap, a substitution key or value
    /// is a nonprinting/space codepoint, or the map has a cycle.
    void validate() const;

    /// JSON keys: nonprinting, spaces (integer arrays), substitutions (array of
    /// [from, to] pairs), display_zwnj / key_zwnj ("keep" | "strip"). Missing
    /// keys fall back to defaults().
    static NormalizationProfile from_json(std::string_view text);
    static NormalizationProfile load(const std::filesystem::path& path);
    std::string to_json() const;

    bool is_space(char32_t cp) const { return cp == kSpace || spaces.contains(cp); }
    char32_t substitute(char32_t cp) const;
};

// Codepoint-level primitives. All of them are idempotent.
std::u32string clean(std::u32string_view text, const NormalizationProfile& profile);
std::u32string substitute(std::u32string_view text, const NormalizationProfile& profile);
std::u32string trim_builtin(std::u32string_view text);
std::u32string strip_all_spaces(std::u32string_view text, const NormalizationProfile& profile);
std::u32string normalize(std::u32string_view text, const NormalizationProfile& profile);
std::u32string normalized_key(std::u32string_view text, const NormalizationProfile& profile);

// UTF-8 front ends. Invalid UTF-8 throws Error(Encoding).
std::string clean(std::string_view text, const NormalizationProfile& profile);
std::string substitute(std::string_view text, const NormalizationProfile& profile);
/// Spreadsheet TRIM: drops leading/trailing U+0020 and collapses internal
/// runs of two or more to one. A lone internal space survives.
std::string trim_builtin(std::string_view text);
std::string strip_all_spaces(std::string_view text, const NormalizationProfile& profile);
std::string strip_all_spaces(std::string_view text);
/// clean -> substitute -> trim_builtin.
std::string normalize(std::string_view text, const NormalizationProfile& profile);
/// strip_all_spaces(substitute(clean(text))) with ZWNJ per key policy. The
/// join and aggregation key for every other module.
std::string normalized_key(std::string_view text, const NormalizationProfile& profile);

/// Canonical spellings indexed by their normalized key.
class Lexicon {
public:
    /// Stores normalize(spelling) under normalized_key(spelling). Adding a
    /// second, different spelling for an existing key throws
    /// Error(AmbiguousKey); re-adding the same spelling is a no-op.
    void add(std::string_view spelling, const NormalizationProfile& profile);

    /// Two-column UTF-8 CSV (key, canonical). An empty key cell is derived
    /// from the canonical spelling; a non-empty one must equal it.
    static Lexicon load_csv(const std::filesystem::path& path, const NormalizationProfile& profile);
    static Lexicon parse_csv(std::string_view text, const NormalizationProfile& profile,
                             const std::string& source = "lexicon.csv");
    /// Lexicon shipped in data/lexicon.csv.
    static Lexicon defaults(const NormalizationProfile& profile);
    static Lexicon from_spellings(std::span<const std::string> spellings,
                                  const NormalizationProfile& profile);

    const std::string* find(std::string_view key) const;
    std::size_t size() const noexcept { return entries_.size(); }
    const std::map<std::string, std::string>& entries() const noexcept { return entries_; }

private:
    std::map<std::string, std::string> entries_;
};

/// Repairs stray single spaces and wrongly joined words when the name's key
/// is in the lexicon; otherwise falls back to normalize().
std::string tailored_trim(std::string_view text, const Lexicon& lexicon,
                          const NormalizationProfile& profile);

}  // namespace dariq
