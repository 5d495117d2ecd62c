#include "riesz/cli/config.hpp"

#include "riesz/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace riesz::cli {

namespace {

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(trim(item));
    return out;
}

} // namespace

double parse_real(const std::string& s, const std::string& what)
{
    double v = 0.0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end || s.empty()) throw ParseError(what + ": '" + s + "' is not a number");
    return v;
}

long parse_integer(const std::string& s, const std::string& what)
{
    long v = 0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end || s.empty()) throw ParseError(what + ": '" + s + "' is not an integer");
    return v;
}

const std::map<std::string, ValueType>& Config::schema()
{
    static const std::map<std::string, ValueType> keys = {
        // potential and gas
        {"n", ValueType::integer},
        {"alpha", ValueType::real},
        {"kappa", ValueType::integer},
        {"gamma", ValueType::real},
        {"mass", ValueType::real},
        {"energy", ValueType::real},
        // solver
        {"epsilon", ValueType::real},
        {"b", ValueType::real},
        {"N", ValueType::integer},
        {"T", ValueType::real},
        {"cfl", ValueType::real},
        {"dt_max", ValueType::real},
        {"force_refresh_every", ValueType::integer},
        {"output_every", ValueType::integer},
        {"force_route", ValueType::text},
        {"max_steps", ValueType::integer},
        // initial data
        {"initial", ValueType::text},
        {"rho0_width", ValueType::real},
        {"momentum", ValueType::real},
        {"radius", ValueType::real},
        {"floor", ValueType::real},
        // steady states and stability
        {"grid_nodes", ValueType::integer},
        {"grid_rmax", ValueType::real},
        {"tol", ValueType::real},
        {"flow_dt", ValueType::real},
        {"flow_steps", ValueType::integer},
        {"mode", ValueType::text},
        {"amplitudes", ValueType::real_list},
        {"baseline_ratio", ValueType::real},
        // sweeps and tables
        {"eps_list", ValueType::real_list},
        {"checkpoints", ValueType::integer},
        {"radii", ValueType::real_list},
        {"n_min", ValueType::integer},
        {"n_max", ValueType::integer},
    };
    return keys;
}

Config Config::parse(const std::string& text, const std::string& origin)
{
    Config c;
    c.origin_ = origin;
    std::stringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string where = origin + ":" + std::to_string(number);
        if (eq == std::string::npos) throw ParseError(where + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError(where + ": empty key");
        if (c.values_.count(key)) throw ParseError(where + ": duplicate key '" + key + "'");
        try {
            c.set(key, value);
        } catch (const ParseError& e) {
            throw ParseError(where + ": " + e.what());
        }
    }
    return c;
}

Config Config::load(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str(), path);
}

void Config::set(const std::string& key, const std::string& value)
{
    const auto it = schema().find(key);
    if (it == schema().end()) throw ParseError("unknown key '" + key + "'");
    switch (it->second) {
    case ValueType::real: parse_real(value, key); break;
    case ValueType::integer: parse_integer(value, key); break;
    case ValueType::text:
        if (value.empty()) throw ParseError(key + ": empty value");
        break;
    case ValueType::real_list:
        for (const auto& item : split_list(value)) parse_real(item, key);
        break;
    }
    values_[key] = value;
}

void Config::check(const std::string& key, ValueType want) const
{
    const auto it = schema().find(key);
    if (it == schema().end() || it->second != want) throw ParseError("internal: key '" + key + "' read with the wrong type");
}

double Config::real(const std::string& key, double fallback) const
{
    check(key, ValueType::real);
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : parse_real(it->second, key);
}

double Config::real(const std::string& key) const
{
    check(key, ValueType::real);
    const auto it = values_.find(key);
    if (it == values_.end()) throw ParseError(origin_ + ": missing required key '" + key + "'");
    return parse_real(it->second, key);
}

long Config::integer(const std::string& key, long fallback) const
{
    check(key, ValueType::integer);
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : parse_integer(it->second, key);
}

std::string Config::text(const std::string& key, const std::string& fallback) const
{
    check(key, ValueType::text);
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

std::vector<double> Config::reals(const std::string& key, const std::vector<double>& fallback) const
{
    check(key, ValueType::real_list);
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::vector<double> out;
    for (const auto& item : split_list(it->second)) out.push_back(parse_real(item, key));
    return out;
}

std::string Config::canonical() const
{
    std::string out;
    for (const auto& [k, v] : values_) out += k + "=" + v + "\n";
    return out;
}

} // namespace riesz::cli
