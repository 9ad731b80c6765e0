#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace relshock {

// Flat key-value configuration: `key = value` lines, '#' comments, dotted
// keys for grouping. Values stay strings until queried.
class KeyValueConfig {
public:
    static KeyValueConfig parse_file(const std::string& path);
    static KeyValueConfig parse_string(const std::string& text);

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    // "a:b, c:d, ..." rows
    std::vector<std::pair<double, double>> get_pairs(const std::string& key) const;

    void set(const std::string& key, std::string value);
    const std::map<std::string, std::string>& entries() const { return entries_; }

private:
    std::map<std::string, std::string> entries_;
};

} // namespace relshock
