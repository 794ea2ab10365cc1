#pragma once

// Arithmetic in the root field K = Q[alpha]/(f) for monic irreducible f, and
// in the polynomial ring K[x].  Field elements are RatPoly values of degree
// below deg f, reduced representatives in the power basis of alpha.

#include <gmpxx.h>

#include <stdexcept>
#include <utility>
#include <vector>

#include "polycert/integer_poly.hpp"

namespace polycert {

class NumberField {
public:
    explicit NumberField(IntPoly f) : f_(std::move(f)) {
        if (f_.degree() < 1 || !f_.is_monic())
            throw std::invalid_argument("number field needs a monic polynomial of degree >= 1");
    }

    const IntPoly& modulus() const { return f_; }
    long degree() const { return f_.degree(); }

    RatPoly reduce(const RatPoly& a) const { return rat_rem(a, f_); }

    RatPoly mul(const RatPoly& a, const RatPoly& b) const { return rat_rem(a * b, f_); }

    RatPoly alpha_power(long t) const {
        return reduce(RatPoly(IntPoly::monomial(1, static_cast<std::size_t>(t))));
    }

    // Inverse via the extended Euclidean algorithm over Q; throws when the
    // element is a zero divisor (which reveals a reducible modulus).
    RatPoly inv(const RatPoly& a) const {
        if (a.is_zero()) throw std::invalid_argument("inverse of zero");
        using V = std::vector<mpq_class>;
        auto to_v = [](const RatPoly& r) {
            V v(static_cast<std::size_t>(r.degree()) + 1);
            for (std::size_t i = 0; i < v.size(); ++i) v[i] = r.coeff(i);
            return v;
        };
        auto deg = [](const V& v) { return static_cast<long>(v.size()) - 1; };
        auto trim = [](V& v) {
            while (!v.empty() && v.back() == 0) v.pop_back();
        };
        V r0 = to_v(RatPoly(f_)), r1 = to_v(reduce(a));
        V s0, s1 = {mpq_class(1)};  // coefficients of `a` in the Bezout relation
        trim(r1);
        if (r1.empty()) throw std::invalid_argument("inverse of zero");
        while (deg(r1) > 0) {
            // r0 = q*r1 + r2
            V q(static_cast<std::size_t>(deg(r0) - deg(r1)) + 1, mpq_class(0));
            V r2 = r0;
            while (deg(r2) >= deg(r1)) {
                mpq_class c = r2.back() / r1.back();
                long shift = deg(r2) - deg(r1);
                q[static_cast<std::size_t>(shift)] = c;
                for (long j = 0; j <= deg(r1); ++j)
                    r2[static_cast<std::size_t>(j + shift)] -=
                        c * r1[static_cast<std::size_t>(j)];
                trim(r2);
                if (r2.empty()) break;
            }
            // s2 = s0 - q*s1
            V s2(std::max(s0.size(), q.size() + s1.size()), mpq_class(0));
            for (std::size_t i = 0; i < s0.size(); ++i) s2[i] = s0[i];
            for (std::size_t i = 0; i < q.size(); ++i)
                for (std::size_t j = 0; j < s1.size(); ++j) s2[i + j] -= q[i] * s1[j];
            trim(s2);
            r0 = std::move(r1);
            r1 = std::move(r2);
            s0 = std::move(s1);
            s1 = std::move(s2);
            trim(r1);
            if (r1.empty())
                throw std::runtime_error("element not invertible: modulus is reducible");
        }
        // r1 is a nonzero constant c; inverse = s1 / c
        mpq_class c = r1[0];
        mpz_class den = 1;
        for (auto& v : s1) {
            v /= c;
            v.canonicalize();
            mpz_class l;
            mpz_lcm(l.get_mpz_t(), den.get_mpz_t(), v.get_den().get_mpz_t());
            den = l;
        }
        std::vector<mpz_class> num(s1.size());
        for (std::size_t i = 0; i < s1.size(); ++i)
            num[i] = s1[i].get_num() * (den / s1[i].get_den());
        return RatPoly(IntPoly(std::move(num)), den);
    }

private:
    IntPoly f_;
};

// Polynomials over K, low-to-high, each coefficient reduced mod f.
using KPoly = std::vector<RatPoly>;

namespace kp {

inline void trim(KPoly& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

inline long deg(const KPoly& a) { return static_cast<long>(a.size()) - 1; }
inline bool is_zero(const KPoly& a) { return a.empty(); }

inline KPoly constant(RatPoly c) {
    KPoly r;
    if (!c.is_zero()) r.push_back(std::move(c));
    return r;
}

// Embeds a polynomial with rational coefficients into K[x].
inline KPoly embed(const RatPoly& q) {
    KPoly r;
    for (long i = 0; i <= q.degree(); ++i)
        r.push_back(RatPoly(IntPoly::constant(q.num()[static_cast<std::size_t>(i)]), q.den()));
    trim(r);
    return r;
}
inline KPoly embed(const IntPoly& q) { return embed(RatPoly(q)); }

inline KPoly add(const KPoly& a, const KPoly& b) {
    KPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] = r[i] + a[i];
        if (i < b.size()) r[i] = r[i] + b[i];
    }
    trim(r);
    return r;
}

inline KPoly sub(const KPoly& a, const KPoly& b) {
    KPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] = r[i] + a[i];
        if (i < b.size()) r[i] = r[i] - b[i];
    }
    trim(r);
    return r;
}

inline KPoly mul(const NumberField& k, const KPoly& a, const KPoly& b) {
    if (a.empty() || b.empty()) return {};
    KPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b[j].is_zero()) continue;
            r[i + j] = r[i + j] + a[i] * b[j];
        }
    }
    for (auto& c : r) c = k.reduce(c);
    trim(r);
    return r;
}

inline KPoly scale(const NumberField& k, const KPoly& a, const RatPoly& s) {
    KPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = k.mul(a[i], s);
    trim(r);
    return r;
}

inline KPoly monic(const NumberField& k, const KPoly& a) {
    if (a.empty()) throw std::invalid_argument("monic of zero");
    return scale(k, a, k.inv(a.back()));
}

inline std::pair<KPoly, KPoly> divrem(const NumberField& k, const KPoly& a, const KPoly& b) {
    if (b.empty()) throw std::invalid_argument("K[x] division by zero");
    if (deg(a) < deg(b)) return {{}, a};
    RatPoly lb_inv = k.inv(b.back());
    KPoly r = a;
    KPoly q(static_cast<std::size_t>(deg(a) - deg(b)) + 1);
    while (!r.empty() && deg(r) >= deg(b)) {
        RatPoly c = k.mul(r.back(), lb_inv);
        long shift = deg(r) - deg(b);
        q[static_cast<std::size_t>(shift)] = c;
        for (long j = 0; j <= deg(b); ++j) {
            std::size_t idx = static_cast<std::size_t>(j + shift);
            r[idx] = r[idx] - k.mul(c, b[static_cast<std::size_t>(j)]);
        }
        trim(r);
    }
    trim(q);
    return {std::move(q), std::move(r)};
}

inline KPoly rem(const NumberField& k, const KPoly& a, const KPoly& b) {
    return divrem(k, a, b).second;
}

inline KPoly divexact(const NumberField& k, const KPoly& a, const KPoly& b) {
    auto [q, r] = divrem(k, a, b);
    if (!r.empty()) throw std::runtime_error("K[x] division not exact");
    return q;
}

inline KPoly gcd(const NumberField& k, KPoly a, KPoly b) {
    while (!b.empty()) {
        KPoly r = rem(k, a, b);
        a = std::move(b);
        b = std::move(r);
        if (!a.empty()) a = monic(k, a);  // keep coefficient growth in check
    }
    if (!a.empty()) a = monic(k, a);
    return a;
}

// Substitute x -> x + t*alpha.
inline KPoly shift_by_alpha(const NumberField& k, const KPoly& a, long t) {
    RatPoly t_alpha =
        k.reduce(RatPoly(IntPoly::monomial(t, 1)));  // t * alpha
    KPoly lin = {t_alpha, RatPoly(IntPoly::constant(1))};
    KPoly r;
    for (std::size_t i = a.size(); i-- > 0;) {
        r = mul(k, r, lin);
        r = add(r, constant(a[i]));
    }
    return r;
}

inline bool equal(const KPoly& a, const KPoly& b) { return a == b; }

}  // namespace kp
}  // namespace polycert
