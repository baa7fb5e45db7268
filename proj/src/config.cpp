#include "bcgp/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bcgp {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::parse(const std::string& text) {
    Config cfg;
    cfg.text_ = text;
    std::istringstream is(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw ConfigError("config line " + std::to_string(lineno) + ": unterminated section");
            section = trim(t.substr(1, t.size() - 2));
            cfg.sections_[section];
            continue;
        }
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
        std::string key = trim(t.substr(0, eq));
        std::string val = trim(t.substr(eq + 1));
        if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        cfg.sections_[section][key] = val;
    }
    return cfg;
}

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config file not found: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return parse(os.str());
}

bool Config::has(const std::string& section, const std::string& key) const {
    auto s = sections_.find(section);
    return s != sections_.end() && s->second.count(key) > 0;
}

std::string Config::get(const std::string& section, const std::string& key) const {
    auto s = sections_.find(section);
    if (s == sections_.end()) throw ConfigError("config: missing section [" + section + "]");
    auto k = s->second.find(key);
    if (k == s->second.end())
        throw ConfigError("config: missing key '" + key + "' in section [" + section + "]");
    return k->second;
}

std::string Config::get_or(const std::string& section, const std::string& key,
                           const std::string& fallback) const {
    return has(section, key) ? get(section, key) : fallback;
}

long long Config::get_int(const std::string& section, const std::string& key) const {
    const std::string v = get(section, key);
    try {
        std::size_t used = 0;
        long long out = std::stoll(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' in [" + section + "] is not an integer: " + v);
    }
}

long long Config::get_int_or(const std::string& section, const std::string& key,
                             long long fallback) const {
    return has(section, key) ? get_int(section, key) : fallback;
}

double Config::get_double(const std::string& section, const std::string& key) const {
    const std::string v = get(section, key);
    try {
        std::size_t used = 0;
        double out = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' in [" + section + "] is not a number: " + v);
    }
}

double Config::get_double_or(const std::string& section, const std::string& key,
                             double fallback) const {
    return has(section, key) ? get_double(section, key) : fallback;
}

std::uint64_t Config::hash() const {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text_) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace bcgp
