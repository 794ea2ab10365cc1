#pragma once

// Factorization over Q: coefficient bounds, quadratic Hensel lifting of a
// modular factorization, and Zassenhaus recombination restricted to an
// allowed set of factor degrees.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "polycert/degree_set.hpp"
#include "polycert/integer_poly.hpp"
#include "polycert/mod_poly.hpp"

namespace polycert {

// B with |coefficient of any integer factor of f| <= B:
// ceil(2^n * sqrt(n+1) * ||f||_inf), n = deg f.
inline mpz_class coefficient_bound(const IntPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("coefficient_bound of zero");
    long n = f.degree();
    mpz_class a;
    mpz_ui_pow_ui(a.get_mpz_t(), 2, static_cast<unsigned long>(n));
    a *= f.max_abs_coeff();
    mpz_class sq = a * a * mpz_class(n + 1);
    mpz_class b;
    mpz_sqrt(b.get_mpz_t(), sq.get_mpz_t());
    if (b * b < sq) ++b;
    return b;
}

struct LiftedFactorization {
    std::uint64_t p = 0;
    unsigned long k = 0;  // minimal exponent with p^k > lifting target
    mpz_class modulus;    // p^k
    std::vector<IntPoly> factors;  // monic, coefficients in [0, p^k)
};

namespace zm {

inline IntPoly reduce(const IntPoly& a, const mpz_class& m) {
    std::vector<mpz_class> c(a.coeffs().size());
    for (std::size_t i = 0; i < c.size(); ++i)
        mpz_fdiv_r(c[i].get_mpz_t(), a.coeffs()[i].get_mpz_t(), m.get_mpz_t());
    return IntPoly(std::move(c));
}

inline IntPoly sym(const IntPoly& a, const mpz_class& m) {
    mpz_class half = m / 2;
    std::vector<mpz_class> c(a.coeffs().size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        mpz_fdiv_r(c[i].get_mpz_t(), a.coeffs()[i].get_mpz_t(), m.get_mpz_t());
        if (c[i] > half) c[i] -= m;
    }
    return IntPoly(std::move(c));
}

inline IntPoly mul(const IntPoly& a, const IntPoly& b, const mpz_class& m) {
    return reduce(a * b, m);
}

// Division by a monic divisor, coefficients mod m.
inline std::pair<IntPoly, IntPoly> divrem_monic(const IntPoly& a, const IntPoly& b,
                                                const mpz_class& m) {
    if (b.is_zero() || b.lc() != 1) throw std::invalid_argument("divisor must be monic");
    long db = b.degree();
    if (a.degree() < db) return {IntPoly(), a};
    std::vector<mpz_class> r(a.coeffs());
    std::vector<mpz_class> q(static_cast<std::size_t>(a.degree() - db) + 1, mpz_class(0));
    for (long i = a.degree(); i >= db; --i) {
        mpz_class f = r[static_cast<std::size_t>(i)] % m;
        if (f != 0) {
            long shift = i - db;
            for (long j = 0; j < db; ++j) {
                std::size_t idx = static_cast<std::size_t>(j + shift);
                r[idx] = (r[idx] - f * b[static_cast<std::size_t>(j)]) % m;
            }
            q[static_cast<std::size_t>(shift)] = f;
        }
        r[static_cast<std::size_t>(i)] = 0;
    }
    return {reduce(IntPoly(std::move(q)), m), reduce(IntPoly(std::move(r)), m)};
}

}  // namespace zm

namespace detail {

// s*a + t*b = 1 over F_p, with deg s < deg b and deg t < deg a.
inline std::pair<ModPoly, ModPoly> bezout_mod_p(const ModPoly& a, const ModPoly& b) {
    std::uint64_t p = a.p;
    ModPoly r0 = a, r1 = b;
    ModPoly s0(p, {1}), s1(p, {});
    while (!r1.is_zero()) {
        auto [q, r] = modp::divrem(r0, r1);
        ModPoly s2 = modp::sub(s0, modp::mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r0.degree() != 0)
        throw std::invalid_argument("hensel base factors are not coprime mod p");
    std::uint64_t inv = invmod_u64(r0.lc(), p);
    ModPoly s = modp::scale(s0, inv);
    s = modp::rem(s, b);
    // t = (1 - s*a) / b
    ModPoly one(p, {1});
    ModPoly t = modp::divexact(modp::sub(one, modp::mul(s, a)), b);
    return {std::move(s), std::move(t)};
}

inline IntPoly lift_from_mod(const ModPoly& a) {
    std::vector<mpz_class> c(a.c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = mpz_class(static_cast<unsigned long>(a.c[i]));
    return IntPoly(std::move(c));
}

// Quadratic two-factor lift of f = a*b from modulus p up to M = p^(2^j).
inline std::pair<IntPoly, IntPoly> hensel_pair(const IntPoly& f, IntPoly a, IntPoly b,
                                               IntPoly s, IntPoly t, const mpz_class& p,
                                               const mpz_class& M) {
    mpz_class m = p;
    while (m < M) {
        mpz_class m2 = m * m;
        if (m2 > M) m2 = M;  // M is a power of m's base, so this only clamps at the top
        IntPoly e = zm::reduce(f - a * b, m2);
        auto [q, r] = zm::divrem_monic(zm::mul(s, e, m2), b, m2);
        IntPoly a2 = zm::reduce(a + t * e + q * a, m2);
        IntPoly b2 = zm::reduce(b + r, m2);
        IntPoly berr = zm::reduce(s * a2 + t * b2 - IntPoly::constant(1), m2);
        auto [c, d] = zm::divrem_monic(zm::mul(s, berr, m2), b2, m2);
        s = zm::reduce(s - d, m2);
        t = zm::reduce(t - t * berr - c * a2, m2);
        a = std::move(a2);
        b = std::move(b2);
        m = m2;
    }
    return {std::move(a), std::move(b)};
}

// F = lc(F) * product(gs) mod p with gs monic; returns the monic factors mod M.
inline void lift_rec(const IntPoly& F, const std::vector<ModPoly>& gs, std::size_t lo,
                     std::size_t hi, std::uint64_t p, const mpz_class& M,
                     std::vector<IntPoly>& out) {
    if (hi - lo == 1) {
        mpz_class l = F.lc() % M;
        mpz_class linv;
        if (mpz_invert(linv.get_mpz_t(), l.get_mpz_t(), M.get_mpz_t()) == 0)
            throw std::runtime_error("leading coefficient not invertible");
        out.push_back(zm::reduce(F * linv, M));
        return;
    }
    std::size_t mid = lo + (hi - lo) / 2;
    std::uint64_t lcp = mpz_fdiv_ui(F.lc().get_mpz_t(), p);
    ModPoly a0(p, {lcp});
    for (std::size_t i = lo; i < mid; ++i) a0 = modp::mul(a0, gs[i]);
    ModPoly b0(p, {1});
    for (std::size_t i = mid; i < hi; ++i) b0 = modp::mul(b0, gs[i]);
    auto [s0, t0] = bezout_mod_p(a0, b0);
    mpz_class pz(static_cast<unsigned long>(p));
    auto [a, b] = hensel_pair(zm::reduce(F, M), lift_from_mod(a0), lift_from_mod(b0),
                              lift_from_mod(s0), lift_from_mod(t0), pz, M);
    lift_rec(a, gs, lo, mid, p, M, out);
    lift_rec(b, gs, mid, hi, p, M, out);
}

}  // namespace detail

// Lifts a coprime monic factorization of f mod p until p^k > target.
inline LiftedFactorization hensel_lift(const IntPoly& f, const std::vector<ModPoly>& base,
                                       const mpz_class& target) {
    if (base.empty()) throw std::invalid_argument("hensel_lift: empty base");
    std::uint64_t p = base[0].p;
    if (f.is_zero() || mpz_fdiv_ui(f.lc().get_mpz_t(), p) == 0)
        throw std::invalid_argument("hensel_lift: p divides the leading coefficient");
    std::vector<ModPoly> gs;
    gs.reserve(base.size());
    for (const auto& g : base) {
        if (g.p != p) throw std::invalid_argument("hensel_lift: mixed moduli");
        gs.push_back(modp::monic(g));
    }
    for (std::size_t i = 0; i < gs.size(); ++i)
        for (std::size_t j = i + 1; j < gs.size(); ++j)
            if (modp::gcd(gs[i], gs[j]).degree() != 0)
                throw std::invalid_argument("hensel_lift: base factors not coprime mod p");
    ModPoly prod(p, {mpz_fdiv_ui(f.lc().get_mpz_t(), p)});
    for (const auto& g : gs) prod = modp::mul(prod, g);
    if (prod != reduce_mod_p(f, p))
        throw std::invalid_argument("hensel_lift: base does not multiply back to f mod p");

    LiftedFactorization out;
    out.p = p;
    out.k = 1;
    out.modulus = mpz_class(static_cast<unsigned long>(p));
    mpz_class pz(static_cast<unsigned long>(p));
    // minimal k keeps lifted coefficients as small as possible; the quadratic
    // ladder in hensel_pair clamps its final doubling to this modulus
    while (out.modulus <= target) {
        out.modulus *= pz;
        ++out.k;
    }
    detail::lift_rec(f, gs, 0, gs.size(), p, out.modulus, out.factors);
    return out;
}

struct FactorizationResult {
    mpq_class content = 1;
    std::vector<std::pair<IntPoly, long>> factors;  // primitive irreducible, multiplicity
    std::size_t subsets_examined = 0;
};

// Multiplies the result back out, over Q.
inline RatPoly expand(const FactorizationResult& r) {
    RatPoly acc = RatPoly::constant(r.content);
    for (const auto& [g, m] : r.factors)
        for (long i = 0; i < m; ++i) acc = acc * RatPoly(g);
    return acc;
}

// Zassenhaus subset search over the lifted factors of squarefree primitive f,
// skipping subsets whose degree sum is outside allowed_degrees.
inline FactorizationResult recombine(const IntPoly& f, const LiftedFactorization& lifted,
                                     const DegreeSet& allowed) {
    if (f.is_zero() || f.content() != 1 || f.lc() < 0)
        throw std::invalid_argument("recombine expects a primitive polynomial, positive lc");
    if (lifted.modulus <= 2 * coefficient_bound(f) * abs(f.lc()))
        throw std::invalid_argument("recombine: lifted modulus below the required bound");
    FactorizationResult out;
    std::vector<IntPoly> pool = lifted.factors;
    const mpz_class& q = lifted.modulus;
    IntPoly rest = f;

    for (std::size_t m = 1; !pool.empty() && 2 * m <= pool.size();) {
        bool found = false;
        std::vector<std::size_t> idx(m);
        for (std::size_t i = 0; i < m; ++i) idx[i] = i;
        while (true) {
            long degsum = 0;
            for (std::size_t i : idx) degsum += pool[i].degree();
            if (degsum < rest.degree() && allowed.contains(degsum)) {
                ++out.subsets_examined;
                bool plausible = true;
                if (rest[0] != 0) {
                    mpz_class t0 = rest.lc();
                    for (std::size_t i : idx) t0 = (t0 * pool[i][0]) % q;
                    mpz_class half = q / 2;
                    mpz_fdiv_r(t0.get_mpz_t(), t0.get_mpz_t(), q.get_mpz_t());
                    if (t0 > half) t0 -= q;
                    if (t0 != 0 && !mpz_divisible_p(mpz_class(rest[0] * rest.lc()).get_mpz_t(),
                                                    t0.get_mpz_t()))
                        plausible = false;
                }
                if (plausible) {
                    IntPoly cand = IntPoly::constant(rest.lc());
                    for (std::size_t i : idx) cand = zm::mul(cand, pool[i], q);
                    cand = zm::sym(cand, q).primitive_part();
                    if (auto quo = try_divide_exact(rest, cand)) {
                        out.factors.emplace_back(cand, 1);
                        rest = *quo;
                        std::vector<IntPoly> np;
                        np.reserve(pool.size() - m);
                        std::size_t k = 0;
                        for (std::size_t i = 0; i < pool.size(); ++i) {
                            if (k < idx.size() && idx[k] == i) {
                                ++k;
                                continue;
                            }
                            np.push_back(std::move(pool[i]));
                        }
                        pool = std::move(np);
                        found = true;
                        break;
                    }
                }
            }
            // next combination in lexicographic order
            bool advanced = false;
            for (std::size_t i = m; i-- > 0;) {
                if (idx[i] < pool.size() - (m - i)) {
                    ++idx[i];
                    for (std::size_t j = i + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
                    advanced = true;
                    break;
                }
            }
            if (!advanced) break;
        }
        // after a hit the pool shrank; smaller subsets of the remaining pool
        // were already exhausted, so the same cardinality is retried
        if (!found) ++m;
    }
    if (rest.degree() >= 1) out.factors.emplace_back(rest, 1);
    return out;
}

namespace detail {

// Yun's squarefree decomposition of a primitive polynomial with positive lc.
inline std::vector<std::pair<IntPoly, long>> squarefree_decompose_z(const IntPoly& f) {
    std::vector<std::pair<IntPoly, long>> out;
    if (f.degree() < 1) return out;
    IntPoly df = f.derivative();
    IntPoly a = gcd_z(f, df);
    if (a.degree() == 0) {
        out.emplace_back(f, 1);
        return out;
    }
    IntPoly b = divide_exact(f, a);
    IntPoly c = divide_exact(df, a);
    IntPoly d = c - b.derivative();
    long i = 1;
    while (b.degree() > 0) {
        IntPoly g = gcd_z(b, d);
        if (g.degree() > 0) out.emplace_back(g, i);
        b = divide_exact(b, g);
        c = divide_exact(d, g);
        d = c - b.derivative();
        ++i;
    }
    return out;
}

inline DegreeSet restrict_allowed(const std::optional<DegreeSet>& warm, long part_degree) {
    DegreeSet s(part_degree);
    for (long d = 1; d < part_degree; ++d)
        if (!warm || warm->contains(d)) s.set(d);
    return s;
}

inline void factor_squarefree_primitive(const IntPoly& g, const DegreeSet& allowed,
                                        FactorizationResult& sink, long mult) {
    if (g.degree() == 1) {
        sink.factors.emplace_back(g, mult);
        return;
    }
    // scan the first few good primes and keep the one with fewest modular factors
    PrimeSource scan = PrimeSource::sequential();
    std::uint64_t best_p = 0;
    long best_count = 0;
    int seen = 0;
    while (seen < 5) {
        std::uint64_t p = scan.next();
        if (!is_good_prime(g, p)) continue;
        ++seen;
        DegreeMultiset m = degree_multiset_mod_p(reduce_mod_p(g, p));
        long count = m.factor_count();
        if (best_p == 0 || count < best_count) {
            best_p = p;
            best_count = count;
        }
        if (count == 1) break;
    }
    if (best_count == 1) {
        sink.factors.emplace_back(g, mult);
        return;
    }
    auto modular = factor_mod_p(reduce_mod_p(g, best_p), 0);
    std::vector<ModPoly> base;
    base.reserve(modular.size());
    for (auto& [q, m] : modular) base.push_back(std::move(q));
    mpz_class target = 2 * coefficient_bound(g) * abs(g.lc());
    LiftedFactorization lifted = hensel_lift(g, base, target);
    FactorizationResult part = recombine(g, lifted, allowed);
    sink.subsets_examined += part.subsets_examined;
    for (auto& [q, m] : part.factors) sink.factors.emplace_back(std::move(q), mult);
}

}  // namespace detail

// Complete factorization over Q.  warm_start, when present, restricts the
// candidate degrees during recombination; the result is identical either way.
inline FactorizationResult factor_over_q(const IntPoly& f,
                                         const std::optional<DegreeSet>& warm_start = {}) {
    if (f.is_zero()) throw std::invalid_argument("factor_over_q of zero");
    FactorizationResult out;
    mpz_class cont = f.content();
    if (f.lc() < 0) cont = -cont;
    out.content = mpq_class(cont);
    IntPoly fp = f.primitive_part();
    if (fp.degree() < 1) return out;
    for (const auto& [part, mult] : detail::squarefree_decompose_z(fp)) {
        DegreeSet allowed = detail::restrict_allowed(warm_start, part.degree());
        detail::factor_squarefree_primitive(part, allowed, out, mult);
    }
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        return a.first.coeffs() < b.first.coeffs();
    });
    return out;
}

}  // namespace polycert
