#pragma once

// Polynomial arithmetic and factorization over prime fields F_p for word-sized
// primes: squarefreeness, distinct-degree factorization for degree multisets,
// Cantor-Zassenhaus splitting, and the Rabin irreducibility test.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "polycert/degree_set.hpp"
#include "polycert/integer_poly.hpp"

namespace polycert {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    b %= p;
    while (e) {
        if (e & 1) r = mulmod_u64(r, b, p);
        b = mulmod_u64(b, b, p);
        e >>= 1;
    }
    return r;
}

inline std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t p) {
    if (a % p == 0) throw std::invalid_argument("invmod of zero residue");
    return powmod_u64(a, p - 2, p);
}

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                            29ull, 31ull, 37ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                            29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------

struct ModPoly {
    std::uint64_t p = 2;
    std::vector<std::uint64_t> c;  // residues in [0, p), trimmed

    ModPoly() = default;
    ModPoly(std::uint64_t prime, std::vector<std::uint64_t> coeffs)
        : p(prime), c(std::move(coeffs)) {
        for (auto& v : c) v %= p;
        trim();
    }

    long degree() const { return static_cast<long>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    std::uint64_t lc() const { return c.back(); }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }

    friend bool operator==(const ModPoly& a, const ModPoly& b) {
        return a.p == b.p && a.c == b.c;
    }
    friend bool operator!=(const ModPoly& a, const ModPoly& b) { return !(a == b); }
};

namespace modp {

inline ModPoly make_x(std::uint64_t p) { return ModPoly(p, {0, 1}); }

inline ModPoly add(const ModPoly& a, const ModPoly& b) {
    ModPoly r;
    r.p = a.p;
    r.c.assign(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] = (r.c[i] + b.c[i]) % a.p;
    r.trim();
    return r;
}

inline ModPoly sub(const ModPoly& a, const ModPoly& b) {
    ModPoly r;
    r.p = a.p;
    r.c.assign(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] = (r.c[i] + a.p - b.c[i]) % a.p;
    r.trim();
    return r;
}

inline ModPoly mul(const ModPoly& a, const ModPoly& b) {
    ModPoly r;
    r.p = a.p;
    if (a.is_zero() || b.is_zero()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    std::uint64_t p = a.p;
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) {
            unsigned __int128 v = static_cast<unsigned __int128>(a.c[i]) * b.c[j] + r.c[i + j];
            r.c[i + j] = static_cast<std::uint64_t>(v % p);
        }
    }
    r.trim();
    return r;
}

inline ModPoly scale(const ModPoly& a, std::uint64_t s) {
    ModPoly r = a;
    s %= a.p;
    for (auto& v : r.c) v = mulmod_u64(v, s, a.p);
    r.trim();
    return r;
}

inline ModPoly monic(const ModPoly& a) {
    if (a.is_zero()) return a;
    return scale(a, invmod_u64(a.lc(), a.p));
}

inline std::pair<ModPoly, ModPoly> divrem(const ModPoly& a, const ModPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("modp division by zero");
    std::uint64_t p = a.p;
    long db = b.degree();
    ModPoly q, r = a;
    q.p = p;
    if (a.degree() < db) return {q, r};
    q.c.assign(static_cast<std::size_t>(a.degree() - db) + 1, 0);
    std::uint64_t inv_lb = invmod_u64(b.lc(), p);
    while (!r.is_zero() && r.degree() >= db) {
        long shift = r.degree() - db;
        std::uint64_t f = mulmod_u64(r.lc(), inv_lb, p);
        q.c[static_cast<std::size_t>(shift)] = f;
        for (long j = 0; j <= db; ++j) {
            std::size_t idx = static_cast<std::size_t>(j + shift);
            std::uint64_t t = mulmod_u64(f, b.c[static_cast<std::size_t>(j)], p);
            r.c[idx] = (r.c[idx] + p - t) % p;
        }
        r.trim();
    }
    q.trim();
    return {std::move(q), std::move(r)};
}

inline ModPoly rem(const ModPoly& a, const ModPoly& b) { return divrem(a, b).second; }

inline ModPoly divexact(const ModPoly& a, const ModPoly& b) {
    auto [q, r] = divrem(a, b);
    if (!r.is_zero()) throw std::runtime_error("modp division not exact");
    return q;
}

inline ModPoly gcd(ModPoly a, ModPoly b) {
    while (!b.is_zero()) {
        ModPoly r = rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

inline ModPoly derivative(const ModPoly& a) {
    ModPoly r;
    r.p = a.p;
    if (a.c.size() <= 1) return r;
    r.c.assign(a.c.size() - 1, 0);
    for (std::size_t i = 1; i < a.c.size(); ++i)
        r.c[i - 1] = mulmod_u64(a.c[i], i % a.p, a.p);
    r.trim();
    return r;
}

inline ModPoly pow_mod(ModPoly base, const mpz_class& e, const ModPoly& mod) {
    ModPoly r(mod.p, {1});
    base = rem(base, mod);
    for (long i = static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2)); i-- > 0;) {
        r = rem(mul(r, r), mod);
        if (mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(i)))
            r = rem(mul(r, base), mod);
    }
    return r;
}

inline ModPoly frobenius(const ModPoly& h, const ModPoly& mod) {
    return pow_mod(h, mpz_class(static_cast<unsigned long>(mod.p)), mod);
}

}  // namespace modp

// ---------------------------------------------------------------------------

inline ModPoly reduce_mod_p(const IntPoly& f, std::uint64_t p) {
    if (p < 2) throw std::invalid_argument("modulus below 2");
    std::vector<std::uint64_t> c(f.coeffs().size());
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = mpz_fdiv_ui(f.coeffs()[i].get_mpz_t(), p);
    return ModPoly(p, std::move(c));
}

inline bool is_squarefree_mod_p(const ModPoly& g) {
    if (g.is_zero()) return false;
    if (g.degree() == 0) return true;
    ModPoly d = modp::derivative(g);
    if (d.is_zero()) return false;
    return modp::gcd(g, d).degree() == 0;
}

inline bool is_good_prime(const IntPoly& f, std::uint64_t p) {
    if (f.is_zero() || f.degree() < 1)
        throw std::invalid_argument("is_good_prime needs degree >= 1");
    if (mpz_fdiv_ui(f.lc().get_mpz_t(), p) == 0) return false;
    return is_squarefree_mod_p(reduce_mod_p(f, p));
}

// Degrees of the irreducible factors of squarefree g, by distinct-degree
// factorization alone; no equal-degree splitting is performed.
inline DegreeMultiset degree_multiset_mod_p(const ModPoly& g) {
    if (!is_squarefree_mod_p(g))
        throw std::invalid_argument("degree_multiset_mod_p: input not squarefree");
    DegreeMultiset out;
    ModPoly work = modp::monic(g);
    if (work.degree() < 1) return out;
    ModPoly x = modp::make_x(g.p);
    ModPoly h = modp::rem(x, work);
    long d = 0;
    while (work.degree() >= 2 * (d + 1)) {
        ++d;
        h = modp::frobenius(h, work);
        ModPoly g_d = modp::gcd(modp::sub(h, x), work);
        if (g_d.degree() > 0) {
            out.add(d, g_d.degree() / d);
            work = modp::divexact(work, g_d);
            if (work.degree() == 0) break;
            h = modp::rem(h, work);
        }
    }
    if (work.degree() > 0) out.add(work.degree(), 1);
    return out;
}

namespace modp {

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t p, std::uint64_t attempt) {
    std::uint64_t z = seed ^ (p * 0x9e3779b97f4a7c15ull) ^ (attempt * 0xbf58476d1ce4e5b9ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline ModPoly random_poly(std::uint64_t p, long max_deg, std::mt19937_64& rng) {
    std::vector<std::uint64_t> c(static_cast<std::size_t>(max_deg) + 1);
    for (auto& v : c) v = rng() % p;
    return ModPoly(p, std::move(c));
}

// Equal-degree splitting of a monic product of distinct degree-d irreducibles.
inline void equal_degree_split(const ModPoly& g, long d, std::uint64_t seed,
                               std::uint64_t& attempt, std::vector<ModPoly>& out) {
    if (g.degree() == d) {
        out.push_back(g);
        return;
    }
    std::uint64_t p = g.p;
    for (int tries = 0; tries < 64; ++tries) {
        std::mt19937_64 rng(mix_seed(seed, p, attempt++));
        ModPoly a = random_poly(p, g.degree() - 1, rng);
        if (a.is_zero()) continue;
        ModPoly h;
        if (p == 2) {
            // trace map sum a^(2^i), i < d
            ModPoly t = rem(a, g);
            h = t;
            for (long i = 1; i < d; ++i) {
                t = rem(mul(t, t), g);
                h = add(h, t);
            }
            h = gcd(h, g);
        } else {
            mpz_class e;
            mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(p),
                          static_cast<unsigned long>(d));
            e = (e - 1) / 2;
            ModPoly b = pow_mod(a, e, g);
            h = gcd(sub(b, ModPoly(p, {1})), g);
        }
        if (h.degree() > 0 && h.degree() < g.degree()) {
            equal_degree_split(h, d, seed, attempt, out);
            equal_degree_split(divexact(g, h), d, seed, attempt, out);
            return;
        }
    }
    throw std::runtime_error("equal-degree splitting exhausted its retry cap");
}

inline ModPoly pth_root(const ModPoly& g) {
    // over F_p, c^(1/p) = c, so keep every p-th coefficient
    std::vector<std::uint64_t> c;
    for (std::size_t i = 0; i < g.c.size(); i += g.p) c.push_back(g.c[i]);
    return ModPoly(g.p, std::move(c));
}

inline void squarefree_decompose(const ModPoly& f, long mult,
                                 std::vector<std::pair<ModPoly, long>>& out) {
    ModPoly fd = derivative(f);
    if (fd.is_zero()) {
        squarefree_decompose(pth_root(f), mult * static_cast<long>(f.p), out);
        return;
    }
    ModPoly c = gcd(f, fd);
    ModPoly w = divexact(f, c);
    long i = 1;
    while (w.degree() > 0) {
        ModPoly y = gcd(w, c);
        ModPoly z = divexact(w, y);
        if (z.degree() > 0) out.emplace_back(z, i * mult);
        w = std::move(y);
        c = divexact(c, w);
        ++i;
    }
    if (c.degree() > 0) squarefree_decompose(pth_root(c), mult * static_cast<long>(f.p), out);
}

}  // namespace modp

// Complete factorization into monic irreducibles with multiplicities,
// deterministic for a given rng_seed.
inline std::vector<std::pair<ModPoly, long>> factor_mod_p(const ModPoly& g,
                                                          std::uint64_t rng_seed) {
    if (g.is_zero()) throw std::invalid_argument("factor_mod_p: zero polynomial");
    std::vector<std::pair<ModPoly, long>> out;
    if (g.degree() == 0) return out;
    ModPoly f = modp::monic(g);
    std::vector<std::pair<ModPoly, long>> sqf;
    modp::squarefree_decompose(f, 1, sqf);
    std::uint64_t attempt = 0;
    for (const auto& [part, mult] : sqf) {
        // distinct-degree stage on the squarefree part
        ModPoly work = part;
        ModPoly x = modp::make_x(g.p);
        ModPoly h = modp::rem(x, work);
        long d = 0;
        std::vector<std::pair<ModPoly, long>> stages;  // (product of degree-d factors, d)
        while (work.degree() >= 2 * (d + 1)) {
            ++d;
            h = modp::frobenius(h, work);
            ModPoly g_d = modp::gcd(modp::sub(h, x), work);
            if (g_d.degree() > 0) {
                stages.emplace_back(g_d, d);
                work = modp::divexact(work, g_d);
                if (work.degree() == 0) break;
                h = modp::rem(h, work);
            }
        }
        if (work.degree() > 0) stages.emplace_back(work, work.degree());
        for (const auto& [prod, deg] : stages) {
            std::vector<ModPoly> irr;
            modp::equal_degree_split(prod, deg, rng_seed, attempt, irr);
            for (auto& q : irr) out.emplace_back(std::move(q), mult);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        return a.first.c < b.first.c;
    });
    return out;
}

// Rabin's test: g irreducible iff x^(p^n) = x mod g and for every prime q | n,
// gcd(x^(p^(n/q)) - x, g) = 1.
inline bool irreducible_mod_p(const ModPoly& g) {
    if (g.is_zero() || g.degree() < 1)
        throw std::invalid_argument("irreducible_mod_p needs degree >= 1");
    long n = g.degree();
    if (n == 1) return true;
    ModPoly f = modp::monic(g);
    ModPoly x = modp::make_x(g.p);
    std::vector<long> checkpoints;  // n/q for prime q | n
    long m = n;
    for (long q = 2; q * q <= m; ++q)
        if (m % q == 0) {
            checkpoints.push_back(n / q);
            while (m % q == 0) m /= q;
        }
    if (m > 1) checkpoints.push_back(n / m);
    std::sort(checkpoints.begin(), checkpoints.end());
    ModPoly h = modp::rem(x, f);
    long i = 0;
    std::size_t next_cp = 0;
    while (i < n) {
        h = modp::frobenius(h, f);
        ++i;
        if (next_cp < checkpoints.size() && i == checkpoints[next_cp]) {
            ++next_cp;
            if (modp::gcd(modp::sub(h, x), f).degree() != 0) return false;
        }
    }
    return h == modp::rem(x, f);
}

// ---------------------------------------------------------------------------

// Deterministic prime sequences: sequential small primes, or uniformly random
// primes of a fixed bit size.
class PrimeSource {
public:
    enum class Strategy { Sequential, RandomBits };

    static PrimeSource sequential(std::uint64_t lower_bound = 2) {
        PrimeSource s;
        s.strategy_ = Strategy::Sequential;
        s.lower_ = lower_bound;
        s.next_candidate_ = lower_bound < 2 ? 2 : lower_bound;
        return s;
    }

    static PrimeSource random_bits(int bits, std::uint64_t seed) {
        if (bits < 2 || bits > 62) throw std::invalid_argument("prime bit size out of range");
        PrimeSource s;
        s.strategy_ = Strategy::RandomBits;
        s.bits_ = bits;
        s.seed_ = seed;
        s.rng_.seed(seed ^ 0xd1b54a32d192ed03ull);
        return s;
    }

    std::uint64_t next() {
        if (strategy_ == Strategy::Sequential) {
            std::uint64_t c = next_candidate_;
            while (!is_prime_u64(c)) ++c;
            next_candidate_ = c + 1;
            return c;
        }
        while (true) {
            std::uint64_t lo = std::uint64_t{1} << (bits_ - 1);
            std::uint64_t c = lo + (rng_() & (lo - 1));
            c |= 1;
            if (c >= 2 * lo) continue;
            if (is_prime_u64(c)) return c;
        }
    }

    Strategy strategy() const { return strategy_; }
    int bits() const { return bits_; }
    std::uint64_t seed() const { return seed_; }
    std::uint64_t lower_bound() const { return lower_; }

private:
    PrimeSource() = default;
    Strategy strategy_ = Strategy::Sequential;
    std::uint64_t lower_ = 2;
    std::uint64_t next_candidate_ = 2;
    int bits_ = 0;
    std::uint64_t seed_ = 0;
    std::mt19937_64 rng_;
};

}  // namespace polycert
