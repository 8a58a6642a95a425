#pragma once

#include <string>
#include <vector>

#include "slowlight/errors.hpp"

namespace slowlight {

// Line-oriented config format:
//   [section]
//   key = value        # trailing comments allowed
// Repeated section names are kept in order (pump segments repeat).
// Parsing keeps everything as text; schema checks happen when a run
// configuration is assembled, so errors can name both line and key.
struct ConfigEntry {
    std::string key;
    std::string value;
    int line = 0;
};

struct ConfigSection {
    std::string name;
    int line = 0;
    std::vector<ConfigEntry> entries;
};

struct ConfigDocument {
    std::vector<ConfigSection> sections;

    const ConfigSection* find(const std::string& name) const;
    std::vector<const ConfigSection*> find_all(const std::string& name) const;
};

// Throws ConfigError for keys outside a section, malformed lines, or
// unterminated section headers.
ConfigDocument parse_config_text(const std::string& text);
ConfigDocument load_config_file(const std::string& path);

// Number with an optional unit suffix: "420kHz", "5.37us", "5mm", "2.5e3".
// Returns the magnitude in the base SI unit of the suffix (Hz, s, m);
// a bare number passes through. Throws std::invalid_argument on anything
// unrecognized.
double parse_quantity(const std::string& text);

} // namespace slowlight
