#pragma once

// Reader for the TOML subset used by strip and B-C files: [table] headers,
// `key = value` pairs with string, number or flat number-array values, and
// `#` comments. Several pairs may share a line.

#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace bjbi::toml_lite {

using Value = std::variant<double, std::string, std::vector<double>>;
using Table = std::map<std::string, Value>;

struct Document {
    std::map<std::string, Table> tables;  // "" holds the root table

    bool has_table(const std::string& name) const { return tables.count(name) != 0; }
    const Table& table(const std::string& name) const;
};

/// Throws ParseError with a line number on malformed input.
Document parse(std::string_view text);

const Value* find(const Table& t, const std::string& key);
double get_number(const Table& t, const std::string& key, const std::string& where);
std::string get_string(const Table& t, const std::string& key, const std::string& where);
std::vector<double> get_array(const Table& t, const std::string& key, const std::string& where);

/// `%.17g` formatting used by every writer in the project.
std::string format_double(double v);
std::string format_array(const std::vector<double>& v);

}  // namespace bjbi::toml_lite
