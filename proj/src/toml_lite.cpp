#include "toml_lite.hpp"

#include <cctype>
#include <cerrno>
#include <cstdio>
#include <cstdlib>

#include "bjbi/errors.hpp"

namespace bjbi::toml_lite {
namespace {

enum class Tok { lbracket, rbracket, equals, comma, string, word, end };

struct Token {
    Tok kind;
    std::string text;
    int line;
};

std::vector<Token> tokenize(std::string_view s) {
    std::vector<Token> out;
    int line = 1;
    std::size_t i = 0;
    while (i < s.size()) {
        char ch = s[i];
        if (ch == '\n') { ++line; ++i; continue; }
        if (std::isspace(static_cast<unsigned char>(ch))) { ++i; continue; }
        if (ch == '#') {
            while (i < s.size() && s[i] != '\n') ++i;
            continue;
        }
        switch (ch) {
            case '[': out.push_back({Tok::lbracket, "[", line}); ++i; continue;
            case ']': out.push_back({Tok::rbracket, "]", line}); ++i; continue;
            case '=': out.push_back({Tok::equals, "=", line}); ++i; continue;
            case ',': out.push_back({Tok::comma, ",", line}); ++i; continue;
            default: break;
        }
        if (ch == '"') {
            std::size_t j = i + 1;
            while (j < s.size() && s[j] != '"' && s[j] != '\n') ++j;
            if (j >= s.size() || s[j] != '"')
                throw ParseError("line " + std::to_string(line) + ": unterminated string");
            out.push_back({Tok::string, std::string(s.substr(i + 1, j - i - 1)), line});
            i = j + 1;
            continue;
        }
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) &&
               std::string_view("[]=,#\"").find(s[j]) == std::string_view::npos)
            ++j;
        out.push_back({Tok::word, std::string(s.substr(i, j - i)), line});
        i = j;
    }
    out.push_back({Tok::end, "", line});
    return out;
}

[[noreturn]] void fail(const Token& t, const std::string& msg) {
    throw ParseError("line " + std::to_string(t.line) + ": " + msg);
}

double to_number(const Token& t) {
    std::string txt = t.text;
    // TOML allows underscores between digits.
    std::erase(txt, '_');
    if (txt.empty()) fail(t, "expected a number");
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(txt.c_str(), &end);
    if (end != txt.c_str() + txt.size() || errno == ERANGE) fail(t, "invalid number '" + t.text + "'");
    return v;
}

}  // namespace

const Table& Document::table(const std::string& name) const {
    auto it = tables.find(name);
    if (it == tables.end()) throw ParseError("missing table [" + name + "]");
    return it->second;
}

Document parse(std::string_view text) {
    auto toks = tokenize(text);
    Document doc;
    doc.tables[""];
    std::string current;
    std::size_t p = 0;
    auto peek = [&]() -> const Token& { return toks[p]; };
    auto next = [&]() -> const Token& { return toks[p++]; };

    while (peek().kind != Tok::end) {
        const Token& t = next();
        if (t.kind == Tok::lbracket) {
            const Token& name = next();
            if (name.kind != Tok::word) fail(name, "expected table name");
            if (next().kind != Tok::rbracket) fail(name, "expected ']' after table name");
            current = name.text;
            if (doc.tables.count(current)) fail(name, "duplicate table [" + current + "]");
            doc.tables[current];
            continue;
        }
        if (t.kind != Tok::word && t.kind != Tok::string) fail(t, "expected a key");
        if (next().kind != Tok::equals) fail(t, "expected '=' after key '" + t.text + "'");
        Table& tab = doc.tables[current];
        if (tab.count(t.text)) fail(t, "duplicate key '" + t.text + "'");
        const Token& v = next();
        if (v.kind == Tok::string) {
            tab[t.text] = v.text;
        } else if (v.kind == Tok::word) {
            tab[t.text] = to_number(v);
        } else if (v.kind == Tok::lbracket) {
            std::vector<double> arr;
            if (peek().kind == Tok::rbracket) {
                next();
            } else {
                for (;;) {
                    const Token& e = next();
                    if (e.kind != Tok::word) fail(e, "arrays hold numbers only");
                    arr.push_back(to_number(e));
                    const Token& sep = next();
                    if (sep.kind == Tok::rbracket) break;
                    if (sep.kind != Tok::comma) fail(sep, "expected ',' or ']' in array");
                    if (peek().kind == Tok::rbracket) { next(); break; }  // trailing comma
                }
            }
            tab[t.text] = std::move(arr);
        } else {
            fail(v, "expected a value for key '" + t.text + "'");
        }
    }
    return doc;
}

const Value* find(const Table& t, const std::string& key) {
    auto it = t.find(key);
    return it == t.end() ? nullptr : &it->second;
}

double get_number(const Table& t, const std::string& key, const std::string& where) {
    const Value* v = find(t, key);
    if (!v) throw ParseError(where + ": missing key '" + key + "'");
    if (auto d = std::get_if<double>(v)) return *d;
    throw ParseError(where + ": key '" + key + "' must be a number");
}

std::string get_string(const Table& t, const std::string& key, const std::string& where) {
    const Value* v = find(t, key);
    if (!v) throw ParseError(where + ": missing key '" + key + "'");
    if (auto s = std::get_if<std::string>(v)) return *s;
    throw ParseError(where + ": key '" + key + "' must be a string");
}

std::vector<double> get_array(const Table& t, const std::string& key, const std::string& where) {
    const Value* v = find(t, key);
    if (!v) throw ParseError(where + ": missing key '" + key + "'");
    if (auto a = std::get_if<std::vector<double>>(v)) return *a;
    throw ParseError(where + ": key '" + key + "' must be an array of numbers");
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s(buf);
    // Keep a decimal point so integral values still read back as floats.
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

std::string format_array(const std::vector<double>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += format_double(v[i]);
    }
    return s + "]";
}

}  // namespace bjbi::toml_lite
