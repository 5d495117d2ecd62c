#include "riesz/cli/output.hpp"

#include "riesz/errors.hpp"

#include <openssl/evp.h>

#include <fmt/format.h>

#include <cmath>
#include <filesystem>
#include <fstream>

namespace riesz::cli {

std::string format_real(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return fmt::format("{:.17g}", v);
}

std::string sha256_hex(const std::string& data)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx, data.data(), data.size()) != 1 || EVP_DigestFinal_ex(ctx, digest, &length) != 1) {
        EVP_MD_CTX_free(ctx);
        throw std::runtime_error("SHA-256 digest failed");
    }
    EVP_MD_CTX_free(ctx);
    std::string out;
    for (unsigned int i = 0; i < length; ++i) out += fmt::format("{:02x}", digest[i]);
    return out;
}

std::string json_quote(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20)
                out += fmt::format("\\u{:04x}", static_cast<int>(c));
            else
                out += c;
        }
    }
    return out + "\"";
}

namespace {

std::string json_real(double v) { return std::isfinite(v) ? format_real(v) : "null"; }

} // namespace

JsonObject& JsonObject::add(const std::string& key, double v)
{
    fields_.emplace_back(key, json_real(v));
    return *this;
}

JsonObject& JsonObject::add(const std::string& key, long v)
{
    fields_.emplace_back(key, std::to_string(v));
    return *this;
}

JsonObject& JsonObject::add(const std::string& key, bool v)
{
    fields_.emplace_back(key, v ? "true" : "false");
    return *this;
}

JsonObject& JsonObject::add(const std::string& key, const std::string& v)
{
    fields_.emplace_back(key, json_quote(v));
    return *this;
}

JsonObject& JsonObject::add(const std::string& key, const std::vector<double>& v)
{
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + json_real(v[i]);
    fields_.emplace_back(key, s + "]");
    return *this;
}

JsonObject& JsonObject::add(const std::string& key, const JsonObject& v)
{
    fields_.emplace_back(key, "\x01" + std::to_string(nested_.size()));
    nested_.push_back(v);
    return *this;
}

JsonObject& JsonObject::add(const std::string& key, const std::vector<JsonObject>& v)
{
    fields_.emplace_back(key, "\x02" + std::to_string(lists_.size()));
    lists_.push_back(v);
    return *this;
}

JsonObject& JsonObject::add_null(const std::string& key)
{
    fields_.emplace_back(key, "null");
    return *this;
}

std::string JsonObject::render(int indent) const
{
    const std::string pad(indent + 2, ' '), close(indent, ' ');
    if (fields_.empty()) return "{}";
    std::string out = "{\n";
    for (std::size_t i = 0; i < fields_.size(); ++i) {
        const auto& [key, value] = fields_[i];
        out += pad + json_quote(key) + ": ";
        if (!value.empty() && value[0] == '\x01') {
            out += nested_[std::stoul(value.substr(1))].render(indent + 2);
        } else if (!value.empty() && value[0] == '\x02') {
            const auto& list = lists_[std::stoul(value.substr(1))];
            if (list.empty()) {
                out += "[]";
            } else {
                out += "[\n";
                for (std::size_t j = 0; j < list.size(); ++j)
                    out += pad + "  " + list[j].render(indent + 4) + (j + 1 < list.size() ? ",\n" : "\n");
                out += pad + "]";
            }
        } else {
            out += value;
        }
        out += i + 1 < fields_.size() ? ",\n" : "\n";
    }
    return out + close + "}";
}

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvTable::row(const std::vector<double>& values)
{
    require(values.size() == columns_.size(), "CSV row width does not match the header");
    std::string line;
    for (std::size_t i = 0; i < values.size(); ++i) line += (i ? "," : "") + format_real(values[i]);
    rows_.push_back(line);
}

void CsvTable::row_text(const std::vector<std::string>& values)
{
    require(values.size() == columns_.size(), "CSV row width does not match the header");
    std::string line;
    for (std::size_t i = 0; i < values.size(); ++i) line += (i ? "," : "") + values[i];
    rows_.push_back(line);
}

std::string CsvTable::render(const Stamp& stamp) const
{
    std::string out = "# riesz_gas " + stamp.version + " command=" + stamp.command + " manifest=" + stamp.manifest_hash + "\n";
    for (std::size_t i = 0; i < columns_.size(); ++i) out += (i ? "," : "") + columns_[i];
    out += "\n";
    for (const auto& r : rows_) out += r + "\n";
    return out;
}

std::string render_json(const Stamp& stamp, const JsonObject& body)
{
    JsonObject header;
    header.add("program", "riesz_gas").add("version", stamp.version).add("command", stamp.command).add("manifest", stamp.manifest_hash);
    JsonObject doc;
    doc.add("header", header).add("data", body);
    return doc.render() + "\n";
}

void write_text(const std::string& dir, const std::string& name, const std::string& content)
{
    std::filesystem::create_directories(dir);
    const auto path = std::filesystem::path(dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot write '" + path.string() + "'");
    out << content;
    if (!out) throw DomainError("failed writing '" + path.string() + "'");
}

} // namespace riesz::cli
