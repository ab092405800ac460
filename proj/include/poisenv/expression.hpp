#pragma once

// Recursive-descent parser for the expression grammar
//
//   expr     := ['-'] term (('+' | '-') term)*
//   term     := factor ('*' factor)*
//   factor   := base ('^' uint)?
//   base     := identifier | rational | '(' expr ')'
//   rational := int ('/' uint)?
//
// The parser is generic over the target algebra, so the same code reads
// commutative polynomials and enveloping-algebra words. A Builder supplies
//
//   using value_type = ...;
//   value_type number(const Rational&) const;
//   value_type symbol(std::string_view name, std::size_t pos) const;
//   value_type add(value_type, value_type) const;
//   value_type sub(value_type, value_type) const;
//   value_type mul(value_type, value_type) const;
//   value_type pow(value_type, unsigned) const;
//   value_type neg(value_type) const;

#include "poisenv/errors.hpp"
#include "poisenv/polynomial.hpp"

#include <cctype>
#include <string>
#include <string_view>

namespace poisenv {

template <class Builder>
class ExpressionParser {
public:
    using Value = typename Builder::value_type;

    ExpressionParser(std::string_view text, const Builder& builder) : text_(text), builder_(builder) {}

    Value parse() {
        skip_space();
        if (pos_ == text_.size()) throw ParseError("empty expression", pos_);
        Value v = expr();
        skip_space();
        if (pos_ != text_.size()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
        return v;
    }

private:
    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Value expr() {
        skip_space();
        bool negate = false;
        // A leading minus is accepted so that printed polynomials such as
        // "-x + 1" read back.
        if (pos_ < text_.size() && text_[pos_] == '-') {
            ++pos_;
            negate = true;
        }
        Value acc = term();
        if (negate) acc = builder_.neg(std::move(acc));
        for (;;) {
            if (accept('+')) {
                acc = builder_.add(std::move(acc), term());
            } else if (accept('-')) {
                acc = builder_.sub(std::move(acc), term());
            } else {
                return acc;
            }
        }
    }

    Value term() {
        Value acc = factor();
        while (accept('*')) acc = builder_.mul(std::move(acc), factor());
        return acc;
    }

    Value factor() {
        Value b = base();
        if (accept('^')) {
            skip_space();
            std::size_t start = pos_;
            std::string digits = read_digits();
            if (digits.empty()) throw ParseError("expected exponent", start);
            if (digits.size() > 6) throw ParseError("exponent too large", start);
            b = builder_.pow(std::move(b), static_cast<unsigned>(std::stoul(digits)));
        }
        return b;
    }

    Value base() {
        skip_space();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Value v = expr();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num = read_digits();
            std::size_t save = pos_;
            skip_space();
            if (pos_ < text_.size() && text_[pos_] == '/') {
                ++pos_;
                skip_space();
                std::size_t den_pos = pos_;
                std::string den = read_digits();
                if (den.empty()) throw ParseError("expected denominator", den_pos);
                if (mpz_class(den) == 0) throw ParseError("zero denominator", den_pos);
                return builder_.number(parse_rational(num + "/" + den));
            }
            pos_ = save;
            return builder_.number(parse_rational(num));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            return builder_.symbol(text_.substr(start, pos_ - start), start);
        }
        throw ParseError(std::string("unexpected '") + c + "'", pos_);
    }

    std::string read_digits() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    std::string_view text_;
    const Builder& builder_;
    std::size_t pos_ = 0;
};

template <class Builder>
typename Builder::value_type parse_expression(std::string_view text, const Builder& builder) {
    return ExpressionParser<Builder>(text, builder).parse();
}

}  // namespace poisenv
