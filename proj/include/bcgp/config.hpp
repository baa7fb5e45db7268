#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace bcgp {

// Flat key=value config with [section] headers, '#' comments. No nesting:
// golden configs stay diff-friendly.
class Config {
public:
    static Config parse(const std::string& text);
    static Config parse_file(const std::string& path);

    bool has(const std::string& section, const std::string& key) const;
    std::string get(const std::string& section, const std::string& key) const;
    std::string get_or(const std::string& section, const std::string& key,
                       const std::string& fallback) const;
    long long get_int(const std::string& section, const std::string& key) const;
    long long get_int_or(const std::string& section, const std::string& key, long long fallback) const;
    double get_double(const std::string& section, const std::string& key) const;
    double get_double_or(const std::string& section, const std::string& key, double fallback) const;

    const std::string& text() const { return text_; }
    std::uint64_t hash() const;  // FNV-1a of the raw text

private:
    std::string text_;
    std::map<std::string, std::map<std::string, std::string>> sections_;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace bcgp
