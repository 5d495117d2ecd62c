#pragma once

#include <map>
#include <string>
#include <vector>

namespace riesz::cli {

enum class ValueType { real, integer, text, real_list };

// Flat key=value configuration. Lines are `key = value`; '#' starts a comment; lists are comma
// separated. Keys are checked against a fixed typed schema and unknown keys are rejected.
class Config {
public:
    static Config parse(const std::string& text, const std::string& origin = "<config>");
    static Config load(const std::string& path);

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    double real(const std::string& key, double fallback) const;
    double real(const std::string& key) const;
    long integer(const std::string& key, long fallback) const;
    std::string text(const std::string& key, const std::string& fallback) const;
    std::vector<double> reals(const std::string& key, const std::vector<double>& fallback) const;

    void set(const std::string& key, const std::string& value);

    // Sorted `key=value` lines, the form that enters the manifest hash.
    std::string canonical() const;

    static const std::map<std::string, ValueType>& schema();

private:
    void check(const std::string& key, ValueType want) const;
    std::map<std::string, std::string> values_;
    std::string origin_;
};

double parse_real(const std::string& s, const std::string& what);
long parse_integer(const std::string& s, const std::string& what);

} // namespace riesz::cli
