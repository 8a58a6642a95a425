#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <string>

#include "slowlight/config.hpp"
#include "slowlight/errors.hpp"

using namespace slowlight;

TEST_CASE("sections, keys and comments parse with line numbers") {
    const std::string text =
        "# leading comment\n"
        "[medium]\n"
        "alpha0_per_m = 500   # inline comment\n"
        "length_m = 0.005\n"
        "\n"
        "[hole]\n"
        "width_hz = 860kHz\n";
    const ConfigDocument doc = parse_config_text(text);
    REQUIRE(doc.sections.size() == 2);
    CHECK(doc.sections[0].name == "medium");
    CHECK(doc.sections[0].line == 2);
    REQUIRE(doc.sections[0].entries.size() == 2);
    CHECK(doc.sections[0].entries[0].key == "alpha0_per_m");
    CHECK(doc.sections[0].entries[0].value == "500");
    CHECK(doc.sections[0].entries[0].line == 3);
    CHECK(doc.find("hole") != nullptr);
    CHECK(doc.find("missing") == nullptr);
}

TEST_CASE("repeated sections are kept in order") {
    const std::string text =
        "[pump.segment]\nchannel = 0\n"
        "[pump.segment]\nchannel = 1\n";
    const ConfigDocument doc = parse_config_text(text);
    const auto all = doc.find_all("pump.segment");
    REQUIRE(all.size() == 2);
    CHECK(all[0]->entries[0].value == "0");
    CHECK(all[1]->entries[0].value == "1");
}

TEST_CASE("malformed lines raise errors naming the line") {
    try {
        parse_config_text("[medium]\nalpha0_per_m 500\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config_text("key = 1\n"), ConfigError);        // no section
    CHECK_THROWS_AS(parse_config_text("[medium\nk = 1\n"), ConfigError); // unterminated
    CHECK_THROWS_AS(parse_config_text("[medium]\n= 5\n"), ConfigError);  // empty key
}

TEST_CASE("quantities accept unit suffixes") {
    CHECK(parse_quantity("500") == doctest::Approx(500.0));
    CHECK(parse_quantity("860kHz") == doctest::Approx(860e3));
    CHECK(parse_quantity("20 GHz") == doctest::Approx(20e9));
    CHECK(parse_quantity("2.5e3") == doctest::Approx(2500.0));
    CHECK(parse_quantity("5.37us") == doctest::Approx(5.37e-6));
    CHECK(parse_quantity("10ms") == doctest::Approx(1e-2));
    CHECK(parse_quantity("5mm") == doctest::Approx(5e-3));
    CHECK(parse_quantity("-3MHz") == doctest::Approx(-3e6));
    CHECK(std::isinf(parse_quantity("inf")));  // persistent lifetimes
    CHECK_THROWS_AS(parse_quantity("5 parsec"), std::invalid_argument);
    CHECK_THROWS_AS(parse_quantity("fast"), std::invalid_argument);
    CHECK_THROWS_AS(parse_quantity(""), std::invalid_argument);
}

TEST_CASE("config errors format line and key context") {
    const ConfigError e("must be positive", 12, "alpha0_per_m");
    CHECK(std::string(e.what()) == "line 12: alpha0_per_m: must be positive");
    CHECK(e.line() == 12);
    CHECK(e.key() == "alpha0_per_m");
}
