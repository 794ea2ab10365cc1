#pragma once

// Printers matching the expression grammar in parse.hpp: re-parsing the output
// of any formatter yields the original value.

#include <gmpxx.h>

#include <string>

#include "polycert/integer_poly.hpp"

namespace polycert {

namespace detail {

// "a" or "a/b", without sign.
inline std::string format_magnitude(const mpq_class& q) {
    mpq_class a = abs(q);
    std::string s = a.get_num().get_str();
    if (a.get_den() != 1) s += "/" + a.get_den().get_str();
    return s;
}

inline std::string format_var_power(const std::string& var, std::size_t k) {
    if (k == 0) return "";
    if (k == 1) return var;
    return var + "^" + std::to_string(k);
}

// One monomial without sign: "3/2*x^4", "x", "5".
inline std::string format_term(const mpq_class& q, const std::string& var, std::size_t k) {
    std::string vp = format_var_power(var, k);
    mpq_class a = abs(q);
    if (vp.empty()) return format_magnitude(q);
    if (a == 1) return vp;
    return format_magnitude(q) + "*" + vp;
}

}  // namespace detail

inline std::string format_poly(const RatPoly& p, const std::string& var = "x") {
    if (p.is_zero()) return "0";
    std::string out;
    for (long i = p.degree(); i >= 0; --i) {
        mpq_class c = p.coeff(static_cast<std::size_t>(i));
        if (c == 0) continue;
        if (out.empty())
            out += (c < 0 ? "-" : "");
        else
            out += (c < 0 ? " - " : " + ");
        out += detail::format_term(c, var, static_cast<std::size_t>(i));
    }
    return out;
}

inline std::string format_poly(const IntPoly& p, const std::string& var = "x") {
    return format_poly(RatPoly(p), var);
}

// Bivariate printer: x-major, u-coefficients parenthesized when they have more
// than one term.
inline std::string format_poly(const BiPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (long i = p.degree_x(); i >= 0; --i) {
        const RatPoly& c = p.x_coeff(static_cast<std::size_t>(i));
        if (c.is_zero()) continue;
        std::string xp = detail::format_var_power("x", static_cast<std::size_t>(i));
        long terms = 0;
        for (long j = 0; j <= c.degree(); ++j)
            if (c.coeff(static_cast<std::size_t>(j)) != 0) ++terms;
        if (terms == 1) {
            // single monomial in u: inline with its sign
            long j = c.degree();
            while (c.coeff(static_cast<std::size_t>(j)) == 0) --j;
            mpq_class q = c.coeff(static_cast<std::size_t>(j));
            if (out.empty())
                out += (q < 0 ? "-" : "");
            else
                out += (q < 0 ? " - " : " + ");
            std::string up = detail::format_var_power("u", static_cast<std::size_t>(j));
            mpq_class a = abs(q);
            std::string piece;
            if (up.empty() && xp.empty()) {
                piece = detail::format_magnitude(q);
            } else {
                if (a != 1) piece = detail::format_magnitude(q);
                if (!up.empty()) piece += (piece.empty() ? "" : "*") + up;
                if (!xp.empty()) piece += (piece.empty() ? "" : "*") + xp;
            }
            out += piece;
        } else {
            if (!out.empty()) out += " + ";
            out += "(" + format_poly(c, "u") + ")";
            if (!xp.empty()) out += "*" + xp;
        }
    }
    return out;
}

}  // namespace polycert
