#pragma once

// Expression parser for polynomials in x and u: integer and rational literals,
// + - * ^ with the usual precedence, parentheses.  Implicit multiplication is
// rejected.  Errors carry a 1-based character offset.

#include <gmpxx.h>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "polycert/integer_poly.hpp"

namespace polycert {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset_1based)
        : std::runtime_error(what + " at offset " + std::to_string(offset_1based)),
          offset_(offset_1based) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

struct PolyExpr {
    std::string source;
    BiPoly value;

    bool univariate_in_x() const { return value.degree_u() <= 0; }
    bool univariate_in_u() const { return value.degree_x() <= 0; }
    bool has_denominator() const {
        for (const auto& c : value.x_coeffs())
            if (c.den() != 1) return true;
        return false;
    }

    // The value as a rational polynomial in x; requires no occurrence of u.
    RatPoly as_rat_x() const {
        if (!univariate_in_x())
            throw std::invalid_argument("expression involves u where only x is allowed");
        RatPoly r;
        for (std::size_t i = 0; i < value.x_coeffs().size(); ++i) {
            const RatPoly& c = value.x_coeff(i);
            r = r + RatPoly(IntPoly::monomial(c.num()[0], i), c.den());
        }
        return r;
    }

    // The value as a rational polynomial in u; requires no occurrence of x.
    RatPoly as_rat_u() const {
        if (!univariate_in_u())
            throw std::invalid_argument("expression involves x where only u is allowed");
        return value.is_zero() ? RatPoly() : value.x_coeff(0);
    }

    // Integer polynomial in x; requires integral coefficients.
    IntPoly as_int_x() const {
        RatPoly r = as_rat_x();
        if (r.den() != 1)
            throw std::invalid_argument("expression has non-integer coefficients");
        return r.num();
    }

    IntPoly as_int_u() const {
        RatPoly r = as_rat_u();
        if (r.den() != 1)
            throw std::invalid_argument("expression has non-integer coefficients");
        return r.num();
    }
};

namespace detail {

class PolyParser {
public:
    explicit PolyParser(std::string_view s) : s_(s) {}

    BiPoly parse() {
        BiPoly v = expr();
        skip_ws();
        if (pos_ < s_.size()) fail("syntax error");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_ + 1); }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    BiPoly expr() {
        BiPoly v = term();
        while (true) {
            char c = peek();
            if (c == '+' || c == '-') {
                ++pos_;
                BiPoly r = term();
                v = (c == '+') ? v + r : v - r;
            } else {
                return v;
            }
        }
    }

    BiPoly term() {
        BiPoly v = unary();
        while (true) {
            char c = peek();
            if (c == '*') {
                ++pos_;
                v = v * unary();
            } else if (c == '/') {
                std::size_t at = pos_;
                ++pos_;
                BiPoly d = unary();
                if (d.degree_x() > 0 || d.degree_u() > 0) {
                    pos_ = at;
                    fail("division by a non-constant");
                }
                if (d.is_zero()) {
                    pos_ = at;
                    fail("division by zero");
                }
                mpq_class inv = 1 / d.x_coeff(0).coeff(0);
                v = v * BiPoly::constant(RatPoly::constant(inv));
            } else {
                return v;
            }
        }
    }

    BiPoly unary() {
        char c = peek();
        if (c == '-') {
            ++pos_;
            return -unary();
        }
        if (c == '+') {
            ++pos_;
            return unary();
        }
        return power();
    }

    BiPoly power() {
        BiPoly base = primary();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                fail("syntax error");
            unsigned long e = natural();
            return base.pow(e);
        }
        return base;
    }

    unsigned long natural() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        std::string digits(s_.substr(start, pos_ - start));
        try {
            return std::stoul(digits);
        } catch (const std::exception&) {
            pos_ = start;
            fail("exponent out of range");
        }
    }

    BiPoly primary() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            BiPoly v = expr();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            mpz_class v(std::string(s_.substr(start, pos_ - start)), 10);
            return BiPoly::constant(RatPoly(IntPoly::constant(v)));
        }
        if (c == 'x') {
            ++pos_;
            return BiPoly::var_x();
        }
        if (c == 'u') {
            ++pos_;
            return BiPoly::var_u();
        }
        if (std::isalpha(static_cast<unsigned char>(c))) fail("unknown variable");
        fail("syntax error");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline PolyExpr parse_polynomial(std::string_view text) {
    PolyExpr e;
    e.source = std::string(text);
    e.value = detail::PolyParser(text).parse();
    return e;
}

}  // namespace polycert
