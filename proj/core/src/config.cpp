#include "slowlight/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace slowlight {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

} // namespace

const ConfigSection* ConfigDocument::find(const std::string& name) const {
    for (const ConfigSection& s : sections)
        if (s.name == name) return &s;
    return nullptr;
}

std::vector<const ConfigSection*> ConfigDocument::find_all(const std::string& name) const {
    std::vector<const ConfigSection*> out;
    for (const ConfigSection& s : sections)
        if (s.name == name) out.push_back(&s);
    return out;
}

ConfigDocument parse_config_text(const std::string& text) {
    ConfigDocument doc;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("unterminated section header", lineno);
            const std::string name = trim(line.substr(1, line.size() - 2));
            if (name.empty()) throw ConfigError("empty section name", lineno);
            doc.sections.push_back(ConfigSection{name, lineno, {}});
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected key = value", lineno);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("empty key", lineno);
        if (doc.sections.empty())
            throw ConfigError("key outside any [section]", lineno, key);
        doc.sections.back().entries.push_back(ConfigEntry{key, value, lineno});
    }
    return doc;
}

ConfigDocument load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

double parse_quantity(const std::string& text) {
    const std::string s = trim(text);
    if (s.empty()) throw std::invalid_argument("empty quantity");
    const char* begin = s.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end == begin) throw std::invalid_argument("not a number: '" + s + "'");
    std::string unit = trim(std::string(end));
    if (unit.empty()) return value;

    struct Suffix {
        const char* name;
        double scale;
    };
    // Base SI units per dimension: Hz, s, m.
    static const Suffix table[] = {
        {"GHz", 1e9}, {"MHz", 1e6}, {"kHz", 1e3}, {"Hz", 1.0},
        {"ns", 1e-9}, {"us", 1e-6}, {"ms", 1e-3}, {"s", 1.0},
        {"nm", 1e-9}, {"um", 1e-6}, {"mm", 1e-3}, {"cm", 1e-2}, {"m", 1.0},
    };
    for (const Suffix& suf : table)
        if (unit == suf.name) return value * suf.scale;
    throw std::invalid_argument("unknown unit suffix '" + unit + "' in '" + s + "'");
}

} // namespace slowlight
