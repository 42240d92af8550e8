#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "polynomial.hpp"

namespace smlorbit {

// Recursive-descent parser for the polynomial text grammar:
//
//   expr    := ['-'] term (('+' | '-') term)*
//   term    := factor (('*' | '/') factor)*
//   factor  := base ['^' uint]
//   base    := '(' expr ')' | uint | identifier
//
// '/' is exact constant division (the divisor must reduce to a nonzero
// constant), which doubles as the rational-literal syntax "a/b" and lets
// F_p(t) coefficients like (t + 1)/(t^2) round-trip through the printer.
// Identifiers resolve to ring variables first, then to coefficient-domain
// symbols (F_p(t) exposes "t"). Implicit multiplication is not accepted.
template <class D>
class PolyParser {
public:
    PolyParser(std::string_view text, RingPtr<D> ring)
        : text_(text), ring_(std::move(ring)) {}

    Polynomial<D> parse() {
        auto p = expr();
        skip_ws();
        if (pos_ != text_.size())
            throw MalformedExpression("unexpected trailing input", pos_);
        return p;
    }

private:
    using Poly = Polynomial<D>;

    Poly expr() {
        skip_ws();
        bool negate = false;
        if (peek() == '-') {
            ++pos_;
            negate = true;
        }
        Poly acc = term();
        if (negate) acc = acc.neg();
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '+') {
                ++pos_;
                acc = acc.add(term());
            } else if (c == '-') {
                ++pos_;
                acc = acc.sub(term());
            } else {
                break;
            }
        }
        return acc;
    }

    Poly term() {
        Poly acc = factor();
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '*') {
                ++pos_;
                acc = acc.mul(factor());
            } else if (c == '/') {
                std::size_t at = pos_;
                ++pos_;
                Poly divisor = factor();
                if (!divisor.is_constant() || divisor.is_zero())
                    throw MalformedExpression("divisor must be a nonzero constant", at);
                acc = acc.scalar_mul(ring_->dom.inv(divisor.constant_value()));
            } else {
                break;
            }
        }
        return acc;
    }

    Poly factor() {
        Poly b = base();
        skip_ws();
        if (peek() == '^') {
            std::size_t at = pos_;
            ++pos_;
            skip_ws();
            if (!std::isdigit(static_cast<unsigned char>(peek())))
                throw MalformedExpression("expected non-negative integer exponent", pos_);
            long e = read_uint(at);
            b = b.pow(e);
        }
        return b;
    }

    Poly base() {
        skip_ws();
        char c = peek();
        std::size_t at = pos_;
        if (c == '(') {
            ++pos_;
            Poly p = expr();
            skip_ws();
            if (peek() != ')') throw MalformedExpression("expected ')'", pos_);
            ++pos_;
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            mpz_class z(std::string(text_.substr(start, pos_ - start)), 10);
            return Poly::constant(ring_, ring_->dom.from_rational(mpq_class(z)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            int idx = ring_->var_index(name);
            if (idx >= 0) return Poly::variable(ring_, static_cast<std::size_t>(idx));
            if (auto sym = ring_->dom.symbol(name))
                return Poly::constant(ring_, *sym);
            throw UnknownVariable(name, at);
        }
        if (pos_ >= text_.size())
            throw MalformedExpression("unexpected end of input", pos_);
        throw MalformedExpression(std::string("unexpected character '") + c + "'", pos_);
    }

    long read_uint(std::size_t op_at) {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        std::string digits(text_.substr(start, pos_ - start));
        if (digits.size() > 6) throw ExponentOutOfRange(op_at);
        long v = std::stol(digits);
        if (v > 100000) throw ExponentOutOfRange(op_at);
        return v;
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    std::string_view text_;
    RingPtr<D> ring_;
    std::size_t pos_ = 0;
};

template <class D>
Polynomial<D> parse_poly(std::string_view text, const RingPtr<D>& ring) {
    return PolyParser<D>(text, ring).parse();
}

} // namespace smlorbit
