#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "symred/errors.hpp"

namespace symred {
namespace toml {

/// Minimal TOML-subset reader covering what scenario files use: bare keys,
/// [section] and [section.sub] tables, strings, integers, booleans, and
/// (nested, multi-line) arrays. Errors carry byte offsets into the input.
struct Value {
    enum class Kind { string, integer, boolean, array, table };
    Kind kind = Kind::table;
    std::string str;
    std::int64_t num = 0;
    bool flag = false;
    std::vector<Value> arr;
    std::map<std::string, Value> tab;

    bool has(const std::string& key) const { return tab.count(key) > 0; }

    const Value& at(const std::string& key) const {
        auto it = tab.find(key);
        if (it == tab.end()) throw ValidationError("missing key '" + key + "'");
        return it->second;
    }

    const std::string& as_string(const std::string& what) const {
        if (kind != Kind::string) throw ValidationError(what + " must be a string");
        return str;
    }
    std::int64_t as_integer(const std::string& what) const {
        if (kind != Kind::integer) throw ValidationError(what + " must be an integer");
        return num;
    }
    bool as_boolean(const std::string& what) const {
        if (kind != Kind::boolean) throw ValidationError(what + " must be a boolean");
        return flag;
    }
    const std::vector<Value>& as_array(const std::string& what) const {
        if (kind != Kind::array) throw ValidationError(what + " must be an array");
        return arr;
    }

    std::vector<std::string> string_array(const std::string& what) const {
        std::vector<std::string> out;
        for (const auto& v : as_array(what)) out.push_back(v.as_string(what + " entry"));
        return out;
    }
};

class Parser {
public:
    explicit Parser(std::string text) : text_(std::move(text)) {}

    Value parse() {
        Value root;
        Value* current = &root;
        while (true) {
            skip_ws_and_comments();
            if (pos_ >= text_.size()) break;
            if (text_[pos_] == '[') {
                ++pos_;
                std::vector<std::string> path;
                path.push_back(parse_key());
                while (peek() == '.') {
                    ++pos_;
                    path.push_back(parse_key());
                }
                expect(']');
                current = &root;
                for (const auto& part : path) {
                    Value& child = current->tab[part];
                    if (child.kind != Value::Kind::table)
                        throw ParseError("section name collides with a key: " + part, pos_);
                    current = &child;
                }
            } else {
                std::string key = parse_key();
                expect('=');
                Value v = parse_value();
                if (current->tab.count(key))
                    throw ParseError("duplicate key '" + key + "'", pos_);
                current->tab.emplace(std::move(key), std::move(v));
            }
        }
        return root;
    }

private:
    void skip_ws_and_comments() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    char peek() {
        skip_ws_and_comments();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    void expect(char c) {
        if (peek() != c) throw ParseError(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }

    std::string parse_key() {
        skip_ws_and_comments();
        std::size_t at = pos_;
        std::string key;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
                text_[pos_] == '-'))
            key += text_[pos_++];
        if (key.empty()) throw ParseError("expected a key", at);
        return key;
    }

    Value parse_value() {
        skip_ws_and_comments();
        if (pos_ >= text_.size()) throw ParseError("expected a value", pos_);
        char c = text_[pos_];
        Value v;
        if (c == '"') {
            ++pos_;
            v.kind = Value::Kind::string;
            while (pos_ < text_.size() && text_[pos_] != '"') {
                if (text_[pos_] == '\\') {
                    ++pos_;
                    if (pos_ >= text_.size()) throw ParseError("dangling escape", pos_);
                    char e = text_[pos_];
                    if (e == 'n') v.str += '\n';
                    else if (e == 't') v.str += '\t';
                    else v.str += e;
                    ++pos_;
                } else {
                    v.str += text_[pos_++];
                }
            }
            if (pos_ >= text_.size()) throw ParseError("unterminated string", pos_);
            ++pos_;
            return v;
        }
        if (c == '[') {
            ++pos_;
            v.kind = Value::Kind::array;
            if (peek() == ']') { ++pos_; return v; }
            while (true) {
                v.arr.push_back(parse_value());
                char n = peek();
                if (n == ',') { ++pos_; if (peek() == ']') { ++pos_; break; } continue; }
                if (n == ']') { ++pos_; break; }
                throw ParseError("expected ',' or ']' in array", pos_);
            }
            return v;
        }
        if (c == 't' || c == 'f') {
            if (text_.compare(pos_, 4, "true") == 0) { pos_ += 4; v.kind = Value::Kind::boolean; v.flag = true; return v; }
            if (text_.compare(pos_, 5, "false") == 0) { pos_ += 5; v.kind = Value::Kind::boolean; v.flag = false; return v; }
            throw ParseError("expected true/false", pos_);
        }
        if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t at = pos_;
            std::string num;
            if (c == '-') { num += c; ++pos_; }
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                num += text_[pos_++];
            if (num.empty() || num == "-") throw ParseError("expected digits", at);
            v.kind = Value::Kind::integer;
            v.num = std::stoll(num);
            return v;
        }
        throw ParseError(std::string("unexpected character '") + c + "' in value", pos_);
    }

    std::string text_;
    std::size_t pos_ = 0;
};

inline Value parse(const std::string& text) { return Parser(text).parse(); }

} // namespace toml
} // namespace symred
