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

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dariq/impute.hpp"

namespace dariq {

/// Shared settings read from the --config JSON file. Relative paths are
/// resolved against the config file's directory; unset paths mean the
/// tables compiled into the library.
struct AppConfig {
    std::optional<std::filesystem::path> profile;
    std::optional<std::filesystem::path> provinces;
    std::optional<std::filesystem::path> lexicon;
    std::optional<std::filesystem::path> transliteration;
    std::optional<std::filesystem::path> school_hints;
    std::filesystem::path out_dir = ".";
    std::size_t min_support = 2;
    double dominance = 0.9;
    bool use_school_hint = false;

    /// Keys: profile, provinces, lexicon, transliteration, school_hints,
    /// out_dir, impute {min_support, dominance, use_school_hint}. Unknown keys
    /// and missing referenced files throw Error(Config).
    static AppConfig load(const std::filesystem::path& path);
};

/// Runs one subcommand. Exit codes: 0 success, 1 data error (report still
/// written), 2 usage or configuration error. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace dariq
