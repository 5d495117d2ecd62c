#pragma once

#include <string>
#include <utility>
#include <vector>

namespace riesz::cli {

// 17 significant digits; nan/inf spelled out (CSV) or null (JSON).
std::string format_real(double v);
std::string sha256_hex(const std::string& data);

struct Stamp {
    std::string version;
    std::string manifest_hash;
    std::string command;
};

// Insertion-ordered JSON object. Values are rendered as they are added.
class JsonObject {
public:
    JsonObject& add(const std::string& key, double v);
    JsonObject& add(const std::string& key, long v);
    JsonObject& add(const std::string& key, int v) { return add(key, static_cast<long>(v)); }
    JsonObject& add(const std::string& key, bool v);
    JsonObject& add(const std::string& key, const std::string& v);
    JsonObject& add(const std::string& key, const char* v) { return add(key, std::string(v)); }
    JsonObject& add(const std::string& key, const std::vector<double>& v);
    JsonObject& add(const std::string& key, const JsonObject& v);
    JsonObject& add(const std::string& key, const std::vector<JsonObject>& v);
    JsonObject& add_null(const std::string& key);

    std::string render(int indent = 0) const;

private:
    std::vector<std::pair<std::string, std::string>> fields_;
    std::vector<JsonObject> nested_;
    std::vector<std::vector<JsonObject>> lists_;
};

std::string json_quote(const std::string& s);

// Table with a fixed header. Real cells use format_real.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> columns);
    void row(const std::vector<double>& values);
    void row_text(const std::vector<std::string>& values);
    std::string render(const Stamp& stamp) const;
    std::size_t rows() const { return rows_.size(); }

private:
    std::vector<std::string> columns_;
    std::vector<std::string> rows_;
};

// JSON document whose first member "header" carries the version stamp and manifest hash.
std::string render_json(const Stamp& stamp, const JsonObject& body);

void write_text(const std::string& dir, const std::string& name, const std::string& content);

} // namespace riesz::cli
