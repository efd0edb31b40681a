#pragma once

// Infix polynomial expression parser.
//
// Accepts the notation used for hand-typeset polynomial tables:
//   expr   := ['+'|'-'] term { ('+'|'-') term }
//   term   := power { ['*'|'/'] power }      (juxtaposition multiplies)
//   power  := atom [ '^' integer ]
//   atom   := integer | identifier | '(' expr ')'
// Identifiers resolve first against caller-supplied bindings, then against the
// variable namespace; `sqrt3` is the field generator.  Division is only by
// nonzero constants.

#include "rgfp/sparse_poly.hpp"

#include <cctype>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rgfp {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " at offset " + std::to_string(pos)), pos_(pos) {}
    std::size_t position() const noexcept { return pos_; }

private:
    std::size_t pos_;
};

using Bindings = std::map<std::string, SparsePoly, std::less<>>;

class ExprParser {
public:
    ExprParser(std::string_view text, const Bindings& bindings) : text_(text), bindings_(bindings) {}

    SparsePoly parse() {
        SparsePoly p = expr();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError("unexpected character '" + std::string(1, text_[pos_]) + "'", pos_);
        return p;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    bool starts_atom(char c) const {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '(' || c == '_';
    }

    SparsePoly expr() {
        SparsePoly acc;
        bool first = true;
        for (;;) {
            char c = peek();
            int sign = 1;
            if (c == '+' || c == '-') {
                sign = c == '-' ? -1 : 1;
                ++pos_;
            } else if (!first) {
                break;
            }
            SparsePoly t = term();
            if (sign < 0) acc -= t;
            else acc += t;
            first = false;
        }
        return acc;
    }

    SparsePoly term() {
        SparsePoly acc = power();
        for (;;) {
            char c = peek();
            if (c == '*') {
                ++pos_;
                acc = acc * power();
            } else if (c == '/') {
                const std::size_t at = ++pos_;
                SparsePoly d = power();
                if (!d.is_constant() || d.is_zero()) throw ParseError("division by a non-constant or zero", at);
                acc = acc.scaled(d.coeff(Monomial{}).inverse());
            } else if (starts_atom(c)) {
                acc = acc * power();
            } else {
                return acc;
            }
        }
    }

    SparsePoly power() {
        SparsePoly base = atom();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (start == pos_) throw ParseError("expected exponent", pos_);
            base = base.pow(static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start)))));
        }
        return base;
    }

    SparsePoly atom() {
        char c = peek();
        const std::size_t start = pos_;
        if (c == '(') {
            ++pos_;
            SparsePoly inner = expr();
            if (peek() != ')') throw ParseError("expected ')'", pos_);
            ++pos_;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            return SparsePoly(ExactScalar(mpq_class(std::string(text_.substr(start, pos_ - start)))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            const std::string_view id = text_.substr(start, pos_ - start);
            if (auto it = bindings_.find(id); it != bindings_.end()) return it->second;
            if (id == "sqrt3") return SparsePoly(ExactScalar::sqrt3());
            if (auto v = var_from_name(id)) return SparsePoly::var(*v);
            throw ParseError("unknown identifier '" + std::string(id) + "'", start);
        }
        throw ParseError(c == '\0' ? std::string("unexpected end of input") : "unexpected character '" + std::string(1, c) + "'", pos_);
    }

    std::string_view text_;
    const Bindings& bindings_;
    std::size_t pos_ = 0;
};

inline SparsePoly parse_poly(std::string_view text, const Bindings& bindings = {}) {
    return ExprParser(text, bindings).parse();
}

}  // namespace rgfp
