#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "symred/poly.hpp"

namespace symred {

/// Recursive-descent parser for polynomial expressions over a declared ring.
/// Grammar: rational literals (integer or a/b), identifiers, + - * ^ and
/// parentheses; ^ takes a non-negative integer literal; no implicit
/// multiplication. Failures carry the byte offset of the offending token.
class ExprParser {
public:
    ExprParser(std::string text, RingPtr ring) : text_(std::move(text)), ring_(std::move(ring)) {}

    MultiPoly parse() {
        pos_ = 0;
        MultiPoly result = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
        return result;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    MultiPoly parse_expr() {
        MultiPoly acc = parse_term();
        while (true) {
            char c = peek();
            if (c == '+') {
                ++pos_;
                acc += parse_term();
            } else if (c == '-') {
                ++pos_;
                acc -= parse_term();
            } else {
                return acc;
            }
        }
    }

    MultiPoly parse_term() {
        MultiPoly acc = parse_factor();
        while (peek() == '*') {
            ++pos_;
            acc = acc * parse_factor();
        }
        return acc;
    }

    MultiPoly parse_factor() {
        if (peek() == '-') {
            ++pos_;
            return -parse_factor();
        }
        return parse_power();
    }

    MultiPoly parse_power() {
        MultiPoly base = parse_atom();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            std::size_t at = pos_;
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                throw ParseError("exponent must be a non-negative integer", at);
            unsigned long e = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                e = e * 10 + static_cast<unsigned long>(text_[pos_] - '0');
                if (e > 1000) throw ParseError("exponent too large", at);
                ++pos_;
            }
            return base.pow(static_cast<unsigned>(e));
        }
        return base;
    }

    MultiPoly parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of expression", pos_);
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            MultiPoly inner = parse_expr();
            if (peek() != ')') throw ParseError("expected ')'", pos_);
            ++pos_;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    MultiPoly parse_number() {
        std::size_t at = pos_;
        std::string digits;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            digits += text_[pos_++];
        if (pos_ < text_.size() && text_[pos_] == '/') {
            ++pos_;
            std::string den;
            std::size_t denAt = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                den += text_[pos_++];
            if (den.empty()) throw ParseError("expected digits after '/'", denAt);
            try {
                return MultiPoly::constant(ring_, Rational::from_string(digits + "/" + den));
            } catch (const ValidationError&) {
                throw ParseError("zero denominator in rational literal", at);
            }
        }
        return MultiPoly::constant(ring_, Rational::from_string(digits));
    }

    MultiPoly parse_ident() {
        std::size_t at = pos_;
        std::string name;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            name += text_[pos_++];
        int idx = ring_->var_index(name);
        if (idx < 0) throw ParseError("undeclared identifier '" + name + "'", at);
        return MultiPoly::variable(ring_, static_cast<std::size_t>(idx));
    }

    std::string text_;
    RingPtr ring_;
    std::size_t pos_ = 0;
};

inline MultiPoly parse_poly(const std::string& text, const RingPtr& ring) {
    return ExprParser(text, ring).parse();
}

} // namespace symred
