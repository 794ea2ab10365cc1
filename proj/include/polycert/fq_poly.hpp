#pragma once

// Arithmetic over F_q = F_p[t]/(m) for irreducible m, and Euclidean gcds in
// F_q[x].  Supports the modular pullback of norm factors in the subfield
// module: gcds in K[x] are computed componentwise modulo word-sized primes.

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "polycert/mod_poly.hpp"

namespace polycert {

// Field context: elements are ModPoly residues mod (p, m).
struct FqCtx {
    ModPoly m;  // monic irreducible over F_p

    std::uint64_t p() const { return m.p; }

    ModPoly reduce(const ModPoly& a) const { return modp::rem(a, m); }
    ModPoly add(const ModPoly& a, const ModPoly& b) const { return modp::add(a, b); }
    ModPoly sub(const ModPoly& a, const ModPoly& b) const { return modp::sub(a, b); }
    ModPoly mul(const ModPoly& a, const ModPoly& b) const {
        return modp::rem(modp::mul(a, b), m);
    }

    ModPoly inv(const ModPoly& a) const {
        // extended Euclid over F_p[t], tracking the coefficient of a
        ModPoly r0 = m, r1 = reduce(a);
        if (r1.is_zero()) throw std::invalid_argument("Fq inverse of zero");
        ModPoly s0(m.p, {}), s1(m.p, {1});
        while (r1.degree() > 0) {
            auto [q, r] = modp::divrem(r0, r1);
            ModPoly s2 = modp::sub(s0, modp::mul(q, s1));
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s2);
            if (r1.is_zero()) throw std::runtime_error("Fq modulus not irreducible");
        }
        return modp::scale(reduce(s1), invmod_u64(r1.lc(), m.p));
    }
};

// Polynomials over F_q, low-to-high.
using FqxPoly = std::vector<ModPoly>;

namespace fqx {

inline void trim(FqxPoly& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

inline long deg(const FqxPoly& a) { return static_cast<long>(a.size()) - 1; }

inline FqxPoly mul(const FqCtx& k, const FqxPoly& a, const FqxPoly& b) {
    if (a.empty() || b.empty()) return {};
    FqxPoly r(a.size() + b.size() - 1, ModPoly(k.p(), {}));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = k.add(r[i + j], k.mul(a[i], b[j]));
    }
    trim(r);
    return r;
}

inline FqxPoly scale(const FqCtx& k, const FqxPoly& a, const ModPoly& s) {
    FqxPoly r(a.size(), ModPoly(k.p(), {}));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = k.mul(a[i], s);
    trim(r);
    return r;
}

inline FqxPoly monic(const FqCtx& k, const FqxPoly& a) {
    if (a.empty()) throw std::invalid_argument("monic of zero");
    return scale(k, a, k.inv(a.back()));
}

inline FqxPoly rem(const FqCtx& k, FqxPoly a, const FqxPoly& b) {
    if (b.empty()) throw std::invalid_argument("Fq[x] division by zero");
    ModPoly lb_inv = k.inv(b.back());
    trim(a);
    while (!a.empty() && deg(a) >= deg(b)) {
        ModPoly c = k.mul(a.back(), lb_inv);
        long shift = deg(a) - deg(b);
        for (long j = 0; j <= deg(b); ++j) {
            std::size_t idx = static_cast<std::size_t>(j + shift);
            a[idx] = k.sub(a[idx], k.mul(c, b[static_cast<std::size_t>(j)]));
        }
        trim(a);
    }
    return a;
}

inline FqxPoly gcd(const FqCtx& k, FqxPoly a, FqxPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        FqxPoly r = rem(k, std::move(a), b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) a = monic(k, a);
    return a;
}

}  // namespace fqx
}  // namespace polycert
