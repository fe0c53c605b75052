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

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dariq/linkage.hpp"
#include "dariq/normalize.hpp"
#include "dariq/records.hpp"

namespace dariq {

enum class EntityType { Person, Location, Institution };

/// "PERSON", "LOCATION", "INSTITUTION".
std::string to_string(EntityType type);
/// Case-sensitive inverse of to_string; throws Error(InvalidArgument).
EntityType parse_entity_type(std::string_view text);

/// Surface-form dictionary keyed by normalized_key, so spacing and Yeh/Kaf
/// variants of a name all hit the same entry. One key may carry several
/// types; tagging resolves that by precedence INSTITUTION > LOCATION > PERSON.
class Gazetteer {
public:
    explicit Gazetteer(NormalizationProfile profile = NormalizationProfile::defaults());

    /// Returns false (and stores nothing) when the key is empty or a single
    /// codepoint. The first surface added for a (key, type) is its canonical.
    bool add(std::string_view surface, EntityType type);

    /// Names from a record set: person name columns as PERSON, province,
    /// district and village as LOCATION, high_school as INSTITUTION. Each
    /// key's canonical is its most frequent normalized spelling.
    static Gazetteer from_dataset(const PersonDataset& ds,
                                  const NormalizationProfile& profile = NormalizationProfile::defaults());
    void add_provinces(const ProvinceTable& provinces);
    /// Adds every entry of `other`; where both define a (key, type) the
    /// canonical already here is kept, as with add().
    void merge(const Gazetteer& other);

    struct Hit {
        EntityType type;
        std::string canonical;
    };
    /// Highest-precedence entry for the key of `text`.
    std::optional<Hit> lookup(std::string_view text) const;
    std::optional<Hit> lookup_key(const std::string& key) const;

    /// Longest key, in codepoints. Bounds the candidate windows in tag_text.
    std::size_t max_key_length() const noexcept { return max_key_length_; }
    std::size_t size() const noexcept;
    const NormalizationProfile& profile() const noexcept { return profile_; }

    /// CSV with header surface,type. Rows are sorted by key then type.
    std::string to_csv() const;
    static Gazetteer parse_csv(std::string_view text, const NormalizationProfile& profile,
                               const std::string& source = "gazetteer.csv");
    static Gazetteer load_csv(const std::filesystem::path& path, const NormalizationProfile& profile);

private:
    NormalizationProfile profile_;
    std::map<std::string, std::array<std::optional<std::string>, 3>> entries_;
    std::size_t max_key_length_ = 0;
};

struct Token {
    std::size_t begin = 0;  // codepoint offsets into the input, end exclusive
    std::size_t end = 0;
    std::size_t segment = 0;  // tokens in different segments never join
};

/// Splits on whitespace (the profile's space set, ASCII controls) and on
/// punctuation, which also closes the current segment. ZWNJ stays inside a
/// token. Punctuation includes ASCII .,;:!?()[]{}"/ and the Arabic comma,
/// semicolon, question mark and full stop.
std::vector<Token> tokenize(std::u32string_view text, const NormalizationProfile& profile);

struct EntitySpan {
    std::size_t begin = 0;  // codepoint offsets, end exclusive
    std::size_t end = 0;
    EntityType type = EntityType::Person;
    std::string surface;    // text as written
    std::string canonical;  // gazetteer form

    bool operator==(const EntitySpan&) const = default;
};

/// Dictionary tagging. Every run of tokens inside one segment whose key is no
/// longer than max_key_length() is looked up, so a stray space that splits a
/// name into extra tokens still matches. The longest window (in codepoints)
/// wins, then the leftmost, and chosen spans never overlap. Output is sorted
/// by begin offset.
std::vector<EntitySpan> tag_text(std::string_view text, const Gazetteer& gazetteer);

/// {"text": ..., "entities": [{"begin","end","type","surface","canonical"}]}
std::string entities_to_json(std::string_view text, const std::vector<EntitySpan>& spans);

}  // namespace dariq
