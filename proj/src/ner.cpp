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
#include "dariq/ner.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dariq/csv.hpp"
#include "dariq/error.hpp"
#include "dariq/utf8.hpp"

namespace dariq {

std::string to_string(EntityType type) {
    switch (type) {
        case EntityType::Person: return "PERSON";
        case EntityType::Location: return "LOCATION";
        case EntityType::Institution: return "INSTITUTION";
    }
    return "PERSON";
}

EntityType parse_entity_type(std::string_view text) {
    if (text == "PERSON") return EntityType::Person;
    if (text == "LOCATION") return EntityType::Location;
    if (text == "INSTITUTION") return EntityType::Institution;
    throw Error(ErrorCode::InvalidArgument, "unknown entity type '" + std::string(text) + "'");
}

namespace {

bool is_punct(char32_t cp) {
    switch (cp) {
        case U'.': case U',': case U';': case U':': case U'!': case U'?':
        case U'(': case U')': case U'[': case U']': case U'{': case U'}':
        case U'"': case U'/':
        case 0x060C: case 0x061B: case 0x061F: case 0x06D4:
        case 0x00AB: case 0x00BB:
            return true;
        default:
            return false;
    }
}

bool is_separator(char32_t cp, const NormalizationProfile& profile) {
    return cp < 0x20 || cp == 0x7F || profile.is_space(cp) || profile.nonprinting.contains(cp);
}

// Precedence order: index 2 beats 1 beats 0.
std::size_t slot(EntityType t) {
    switch (t) {
        case EntityType::Person: return 0;
        case EntityType::Location: return 1;
        case EntityType::Institution: return 2;
    }
    return 0;
}

constexpr EntityType kBySlot[] = {EntityType::Person, EntityType::Location, EntityType::Institution};

}  // namespace

std::vector<Token> tokenize(std::u32string_view text, const NormalizationProfile& profile) {
    std::vector<Token> out;
    std::size_t segment = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        const char32_t cp = text[i];
        if (is_punct(cp)) {
            ++segment;
            ++i;
        } else if (is_separator(cp, profile)) {
            ++i;
        } else {
            const std::size_t begin = i;
            while (i < text.size() && !is_punct(text[i]) && !is_separator(text[i], profile)) ++i;
            out.push_back({begin, i, segment});
        }
    }
    return out;
}

Gazetteer::Gazetteer(NormalizationProfile profile) : profile_(std::move(profile)) {}

bool Gazetteer::add(std::string_view surface, EntityType type) {
    const auto u = utf8::decode(surface);
    const auto key32 = normalized_key(std::u32string_view(u), profile_);
    if (key32.size() < 2) {
        return false;
    }
    auto& cell = entries_[utf8::encode(key32)][slot(type)];
    if (!cell) {
        cell = utf8::encode(normalize(std::u32string_view(u), profile_));
    }
    max_key_length_ = std::max(max_key_length_, key32.size());
    return true;
}

void Gazetteer::merge(const Gazetteer& other) {
    for (const auto& [key, cells] : other.entries_) {
        auto& mine = entries_[key];
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (!mine[i]) mine[i] = cells[i];
        }
    }
    max_key_length_ = std::max(max_key_length_, other.max_key_length_);
}

Gazetteer Gazetteer::from_dataset(const PersonDataset& ds, const NormalizationProfile& profile) {
    // (key, slot) -> spelling -> count; the modal spelling becomes canonical.
    std::map<std::pair<std::string, std::size_t>, std::map<std::string, std::size_t>> counts;
    auto note = [&](const std::string& value, EntityType type) {
        if (value.empty()) return;
        auto key = normalized_key(value, profile);
        if (key.empty()) return;
        ++counts[{std::move(key), slot(type)}][normalize(value, profile)];
    };
    for (const auto& r : ds.records) {
        for (const auto* v : {&r.first_name, &r.family_name, &r.father_name, &r.grandfather_name}) {
            note(*v, EntityType::Person);
        }
        for (const auto* v : {&r.province, &r.district, &r.village}) note(*v, EntityType::Location);
        note(r.high_school, EntityType::Institution);
    }
    Gazetteer g(profile);
    for (const auto& [k, spellings] : counts) {
        const auto best = std::max_element(spellings.begin(), spellings.end(), [](const auto& a, const auto& b) {
            return a.second < b.second || (a.second == b.second && a.first > b.first);
        });
        g.add(best->first, kBySlot[k.second]);
    }
    return g;
}

void Gazetteer::add_provinces(const ProvinceTable& provinces) {
    for (const auto& [id, name] : provinces.provinces()) add(name, EntityType::Location);
}

std::optional<Gazetteer::Hit> Gazetteer::lookup_key(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    for (std::size_t s = 3; s-- > 0;) {
        if (it->second[s]) return Hit{kBySlot[s], *it->second[s]};
    }
    return std::nullopt;
}

std::optional<Gazetteer::Hit> Gazetteer::lookup(std::string_view text) const {
    return lookup_key(normalized_key(text, profile_));
}

std::size_t Gazetteer::size() const noexcept {
    std::size_t n = 0;
    for (const auto& [k, cells] : entries_) {
        for (const auto& c : cells) n += c.has_value();
    }
    return n;
}

std::string Gazetteer::to_csv() const {
    std::ostringstream out;
    out << "surface,type\n";
    for (const auto& [key, cells] : entries_) {
        for (std::size_t s = 0; s < 3; ++s) {
            if (cells[s]) csv::write_row(out, {*cells[s], to_string(kBySlot[s])});
        }
    }
    return out.str();
}

Gazetteer Gazetteer::parse_csv(std::string_view text, const NormalizationProfile& profile, const std::string& source) {
    if (!utf8::is_valid(text)) {
        throw Error(ErrorCode::Encoding, source + ": invalid UTF-8");
    }
    Gazetteer g(profile);
    bool header = true;
    for (const auto& row : csv::parse(text)) {
        if (row.fields.size() == 1 && row.fields[0].empty()) continue;
        const auto where = source + ":" + std::to_string(row.line);
        if (header) {
            header = false;
            if (row.fields.size() != 2 || row.fields[0] != "surface" || row.fields[1] != "type") {
                throw Error(ErrorCode::Schema, where + ": expected header surface,type");
            }
            continue;
        }
        if (!row.error.empty() || row.fields.size() != 2) {
            throw Error(ErrorCode::Schema, where + ": expected 2 fields");
        }
        EntityType type;
        try {
            type = parse_entity_type(row.fields[1]);
        } catch (const Error& e) {
            throw Error(ErrorCode::Schema, where + ": " + e.what());
        }
        g.add(row.fields[0], type);
    }
    if (header) {
        throw Error(ErrorCode::Schema, source + ": missing header surface,type");
    }
    return g;
}

Gazetteer Gazetteer::load_csv(const std::filesystem::path& path, const NormalizationProfile& profile) {
    return parse_csv(csv::read_text_file(path), profile, path.string());
}

std::vector<EntitySpan> tag_text(std::string_view text, const Gazetteer& gazetteer) {
    const auto u = utf8::decode(text);
    const auto& profile = gazetteer.profile();
    const auto tokens = tokenize(u, profile);

    struct Candidate {
        std::size_t begin, end;
        Gazetteer::Hit hit;
    };
    std::vector<Candidate> candidates;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        for (std::size_t j = i; j < tokens.size(); ++j) {
            if (tokens[j].segment != tokens[i].segment) break;
            const std::size_t b = tokens[i].begin, e = tokens[j].end;
            const auto key32 = normalized_key(std::u32string_view(u).substr(b, e - b), profile);
            if (key32.size() > gazetteer.max_key_length()) break;
            if (auto hit = gazetteer.lookup_key(utf8::encode(key32))) candidates.push_back({b, e, std::move(*hit)});
        }
    }
    std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& c) {
        const auto la = a.end - a.begin, lc = c.end - c.begin;
        return la != lc ? la > lc : a.begin < c.begin;
    });

    std::vector<EntitySpan> out;
    std::vector<bool> taken(u.size(), false);
    for (auto& c : candidates) {
        if (std::any_of(taken.begin() + c.begin, taken.begin() + c.end, [](bool t) { return t; })) continue;
        std::fill(taken.begin() + c.begin, taken.begin() + c.end, true);
        out.push_back({c.begin, c.end, c.hit.type, utf8::encode(u.substr(c.begin, c.end - c.begin)),
                       std::move(c.hit.canonical)});
    }
    std::sort(out.begin(), out.end(), [](const EntitySpan& a, const EntitySpan& b) { return a.begin < b.begin; });
    return out;
}

std::string entities_to_json(std::string_view text, const std::vector<EntitySpan>& spans) {
    nlohmann::ordered_json j;
    j["text"] = std::string(text);
    auto arr = nlohmann::ordered_json::array();
    for (const auto& s : spans) {
        arr.push_back({{"begin", s.begin},
                       {"end", s.end},
                       {"type", to_string(s.type)},
                       {"surface", s.surface},
                       {"canonical", s.canonical}});
    }
    j["entities"] = std::move(arr);
    return j.dump();
}

}  // namespace dariq
