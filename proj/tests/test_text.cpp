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
#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "dariq/csv.hpp"
#include "dariq/error.hpp"
#include "dariq/utf8.hpp"

using namespace dariq;

TEST_SUITE("text") {

TEST_CASE("utf8 round trip") {
    const std::string s = "فاطمه a\u200c\u20AC\U0001D11E";
    const auto cps = utf8::decode(s);
    CHECK(cps.size() == 10);
    CHECK(cps[0] == 0x0641);
    CHECK(cps.back() == 0x1D11E);
    CHECK(utf8::encode(cps) == s);
    CHECK(utf8::length(s) == 10);
}

TEST_CASE("utf8 rejects malformed input with the byte offset") {
    CHECK(utf8::find_invalid("ab\xC3") == std::optional<std::size_t>(2));
    CHECK(utf8::find_invalid("a\xC0\xAF") == std::optional<std::size_t>(1));  // overlong
    CHECK(utf8::find_invalid("\xED\xA0\x80") == std::optional<std::size_t>(0));  // surrogate
    CHECK(utf8::find_invalid("\xF4\x90\x80\x80") == std::optional<std::size_t>(0));  // > U+10FFFF
    CHECK_FALSE(utf8::find_invalid("سلام"));
    try {
        utf8::decode("ok\xFF");
        FAIL("expected an encoding error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Encoding);
        CHECK(std::string(e.what()).find("2") != std::string::npos);
    }
}

TEST_CASE("csv parses quotes, CRLF and a BOM") {
    const auto rows = csv::parse("\xEF\xBB\xBF" "a,b\r\n\"x, y\",\"he said \"\"hi\"\"\"\r\n\"multi\nline\",z\n");
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].fields == std::vector<std::string>{"a", "b"});
    CHECK(rows[1].fields == std::vector<std::string>{"x, y", "he said \"hi\""});
    CHECK(rows[2].fields == std::vector<std::string>{"multi\nline", "z"});
    CHECK(rows[2].line == 3);
}

TEST_CASE("csv reports broken quoting per row") {
    const auto rows = csv::parse("a,b\nx\"y,z\n\"open,1\n");
    REQUIRE(rows.size() >= 2);
    CHECK_FALSE(rows[1].error.empty());
    CHECK_FALSE(rows.back().error.empty());
}

TEST_CASE("csv writer quotes only when needed and round-trips") {
    CHECK(csv::quote("plain") == "plain");
    CHECK(csv::quote("a,b") == "\"a,b\"");
    CHECK(csv::quote("q\"") == "\"q\"\"\"");
    std::ostringstream out;
    const std::vector<std::string> fields{"ذبيح الله", "x,y", "", "line\nbreak"};
    csv::write_row(out, fields);
    const auto back = csv::parse(out.str());
    REQUIRE(back.size() == 1);
    CHECK(back[0].fields == fields);
}

TEST_CASE("read_text_file names the file on failure") {
    const auto missing = std::filesystem::temp_directory_path() / "dariq-no-such-file.csv";
    try {
        csv::read_text_file(missing);
        FAIL("expected an IO error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Io);
        CHECK(std::string(e.what()).find("dariq-no-such-file.csv") != std::string::npos);
    }
    const auto bad = std::filesystem::temp_directory_path() / "dariq-bad-utf8.csv";
    csv::write_text_file(bad, "id\n\xFF\n");
    CHECK_THROWS_AS(csv::read_text_file(bad), Error);
    std::filesystem::remove(bad);
}

}
