#pragma once

// Imprimitivity detection for irreducible monic f: factor f over its own root
// field by the norm method, compute principal subfields by exact linear
// algebra, and certify any proper intermediate field with a pair (m, h) such
// that m(h(x)) = 0 mod f.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "polycert/degree_set.hpp"
#include "polycert/factor_q.hpp"
#include "polycert/fq_poly.hpp"
#include "polycert/integer_poly.hpp"
#include "polycert/irreducibility.hpp"
#include "polycert/linalg.hpp"
#include "polycert/number_field.hpp"

namespace polycert {

struct ImprimitivityCertificate {
    IntPoly m;  // monic irreducible, degree d with 1 < d < n, d | n
    RatPoly h;  // degree < n; m(h(x)) = 0 mod f, so h(alpha) generates the subfield
};

struct StructureFlagResult {
    bool flag = false;
    DegreeSet surviving;
    bool irreducible = false;           // whether irreducibility got certified at all
    bool vacuously_primitive = false;   // prime degree: no proper subfield can exist
    std::size_t primes_examined = 0;
    std::size_t bad_primes_skipped = 0;
};

// Failure of the subset-sum test combined with a certified irreducible input.
// Irreducibility confirmation falls back to a full factorization when the
// standard test exhausts its budget (some irreducible f, like x^4+1, are
// reducible modulo every prime).
inline StructureFlagResult structure_flag(const IntPoly& f, PrimeSource& primes,
                                          std::size_t ppr_budget,
                                          std::size_t fallback_budget, int jobs = 1) {
    StructureFlagResult out;
    long n = f.degree();
    bool prime_degree = n >= 2;
    for (long q = 2; q * q <= n; ++q)
        if (n % q == 0) prime_degree = false;
    out.vacuously_primitive = prime_degree;
    TestOutcome ppr = ppr_test(f, primes, ppr_budget, jobs);
    out.surviving = ppr.surviving;
    out.primes_examined = ppr.primes_examined;
    out.bad_primes_skipped = ppr.bad_primes_skipped;
    if (ppr.irreducible) {
        out.irreducible = true;
        out.flag = false;  // the subset-sum test itself succeeded
        return out;
    }
    TestOutcome fb = standard_test(f, primes, fallback_budget, jobs);
    out.primes_examined += fb.primes_examined;
    out.bad_primes_skipped += fb.bad_primes_skipped;
    if (fb.irreducible) {
        out.irreducible = true;
    } else {
        FactorizationResult fr = factor_over_q(f);
        out.irreducible = fr.factors.size() == 1 && fr.factors[0].second == 1;
    }
    out.flag = out.irreducible;
    return out;
}

namespace detail {

inline RatPoly bipoly_u_coeff(const BiPoly& q, std::size_t j) {
    // coefficient of u^j as a polynomial in x
    long dx = q.degree_x();
    std::vector<mpq_class> c(static_cast<std::size_t>(std::max(dx, -1L)) + 1);
    mpz_class den = 1;
    for (long i = 0; i <= dx; ++i) {
        const RatPoly& ci = q.x_coeff(static_cast<std::size_t>(i));
        c[static_cast<std::size_t>(i)] = mpq_class(ci.num()[j], ci.den());
        c[static_cast<std::size_t>(i)].canonicalize();
        mpz_class l;
        mpz_lcm(l.get_mpz_t(), den.get_mpz_t(),
                c[static_cast<std::size_t>(i)].get_den().get_mpz_t());
        den = l;
    }
    std::vector<mpz_class> num(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        num[i] = c[i].get_num() * (den / c[i].get_den());
    return RatPoly(IntPoly(std::move(num)), den);
}

inline QVector flatten_k_elem(const RatPoly& v, long n) {
    QVector out(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = v.coeff(static_cast<std::size_t>(i));
    return out;
}

inline RatPoly ratpoly_from_qvector(const QVector& v) {
    mpz_class den = 1;
    for (const auto& q : v) {
        mpz_class l;
        mpz_lcm(l.get_mpz_t(), den.get_mpz_t(), q.get_den().get_mpz_t());
        den = l;
    }
    std::vector<mpz_class> num(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) num[i] = v[i].get_num() * (den / v[i].get_den());
    return RatPoly(IntPoly(std::move(num)), den);
}

}  // namespace detail

// Coefficient of u^j in q, as a polynomial in x.
inline RatPoly u_coefficient(const BiPoly& q, std::size_t j) {
    return detail::bipoly_u_coeff(q, j);
}

// Smallest s >= 1 with lc(f) | a_i * s^(n-i) for all i, so that s^n/lc * f(y/s)
// has integer coefficients; s = |lc| always qualifies and caps the scan.
inline mpz_class monic_model_scale(const IntPoly& f) {
    if (f.degree() < 1) throw std::invalid_argument("monic_model_scale needs degree >= 1");
    const mpz_class& l = f.lc();
    long n = f.degree();
    mpz_class best = abs(l);
    for (mpz_class s = 1; s < best && s <= 4096; ++s) {
        bool ok = true;
        mpz_class pw = 1;
        for (long i = n - 1; i >= 0 && ok; --i) {
            pw *= s;  // s^(n-i)
            mpz_class t = f.coeffs()[static_cast<std::size_t>(i)] * pw;
            if (!mpz_divisible_p(t.get_mpz_t(), l.get_mpz_t())) ok = false;
        }
        if (ok) return s;
    }
    return best;
}

// s^n/lc * f(y/s) for the smallest workable scale s: the monic integer
// polynomial whose roots are s times the roots of f.  Subfield structure is
// unchanged since both generate the same field, and a small s keeps the model
// coefficients small when lc(f) is large.
inline IntPoly monic_integer_model(const IntPoly& f) {
    if (f.degree() < 1) throw std::invalid_argument("monic_integer_model needs degree >= 1");
    const mpz_class& l = f.lc();
    mpz_class s = monic_model_scale(f);
    std::vector<mpz_class> c(f.coeffs().size());
    c.back() = 1;
    mpz_class pw = 1;
    for (std::size_t i = c.size() - 1; i-- > 0;) {
        pw *= s;
        mpz_class t = f.coeffs()[i] * pw;
        mpz_divexact(c[i].get_mpz_t(), t.get_mpz_t(), l.get_mpz_t());
    }
    return IntPoly(std::move(c));
}

// p(y/L) as a polynomial in y, for substituting x = y/L.
inline RatPoly rescale_argument(const RatPoly& p, const mpz_class& l) {
    if (p.is_zero()) return p;
    long d = p.degree();
    std::vector<mpz_class> num(static_cast<std::size_t>(d) + 1);
    mpz_class pw = 1;  // l^(d-i) built from the top
    for (long i = d; i >= 0; --i) {
        num[static_cast<std::size_t>(i)] = p.num()[static_cast<std::size_t>(i)] * pw;
        pw *= l;
    }
    mpz_class den;
    mpz_pow_ui(den.get_mpz_t(), l.get_mpz_t(), static_cast<unsigned long>(d));
    return RatPoly(IntPoly(std::move(num)), p.den() * den);
}

namespace detail {

// Resultant of two polynomials over F_p by the Euclidean remainder sequence.
inline std::uint64_t resultant_mod_p(ModPoly a, ModPoly b) {
    std::uint64_t p = a.p;
    if (a.is_zero() || b.is_zero()) return 0;
    std::uint64_t res = 1;
    while (true) {
        if (b.degree() == 0)
            return mulmod_u64(
                res, powmod_u64(b.c[0], static_cast<std::uint64_t>(a.degree()), p), p);
        ModPoly r = modp::rem(a, b);
        if (r.is_zero()) return 0;
        long da = a.degree(), db = b.degree(), dr = r.degree();
        res = mulmod_u64(res, powmod_u64(b.lc(), static_cast<std::uint64_t>(da - dr), p), p);
        if ((da & 1) && (db & 1)) res = p - res;
        a = std::move(b);
        b = std::move(r);
    }
}

// Newton interpolation through the points (0, v[0]), ..., (m-1, v[m-1]).
inline ModPoly interpolate_prefix_points(std::uint64_t p, std::vector<std::uint64_t> v) {
    std::size_t m = v.size();
    for (std::size_t j = 1; j < m; ++j) {
        std::uint64_t inv_j = invmod_u64(j % p, p);
        for (std::size_t t = m; t-- > j;)
            v[t] = mulmod_u64((v[t] + p - v[t - 1]) % p, inv_j, p);
    }
    std::vector<std::uint64_t> acc{v[m - 1]};
    for (std::size_t t = m - 1; t-- > 0;) {
        // acc = acc * (x - t) + v[t]
        std::vector<std::uint64_t> c(acc.size() + 1, 0);
        std::uint64_t node = t % p;
        for (std::size_t i = 0; i < acc.size(); ++i) {
            c[i + 1] = (c[i + 1] + acc[i]) % p;
            c[i] = (c[i] + p - mulmod_u64(acc[i], node, p)) % p;
        }
        c[0] = (c[0] + v[t]) % p;
        acc = std::move(c);
    }
    return ModPoly(p, std::move(acc));
}

// The x-coefficients of a K[x] polynomial reduced mod p, each a polynomial in
// alpha over F_p; absent when p divides one of the denominators.
inline std::optional<std::vector<ModPoly>> kpoly_mod_p(const KPoly& g, std::uint64_t p) {
    std::vector<ModPoly> out;
    out.reserve(g.size());
    for (const RatPoly& c : g) {
        std::uint64_t den = mpz_fdiv_ui(c.den().get_mpz_t(), p);
        if (den == 0) return std::nullopt;
        out.push_back(modp::scale(reduce_mod_p(c.num(), p), invmod_u64(den, p)));
    }
    return out;
}

// N(x) = prod of g(x, theta) over the roots theta of monic f, reduced mod p,
// by evaluation at x = 0..deg(N) and interpolation; needs p > deg(N).
inline std::optional<ModPoly> norm_mod_p(const IntPoly& f, const KPoly& g, std::uint64_t p) {
    long n = f.degree();
    long dg = kp::deg(g);
    long bigd = n * dg;
    if (p <= static_cast<std::uint64_t>(bigd)) return std::nullopt;
    auto cs = kpoly_mod_p(g, p);
    if (!cs) return std::nullopt;
    ModPoly fbar = reduce_mod_p(f, p);
    std::vector<std::uint64_t> vals(static_cast<std::size_t>(bigd) + 1);
    for (long c = 0; c <= bigd; ++c) {
        ModPoly a(p, {});
        std::uint64_t cp = 1;
        for (const ModPoly& cj : *cs) {
            a = modp::add(a, modp::scale(cj, cp));
            cp = mulmod_u64(cp, static_cast<std::uint64_t>(c), p);
        }
        vals[static_cast<std::size_t>(c)] = resultant_mod_p(fbar, a);
    }
    return interpolate_prefix_points(p, std::move(vals));
}

// Integer norm of monic g in K[x] by Chinese remaindering over word-sized
// primes.  The coefficient bound comes from the Mahler measure: M(N) is at
// most (sqrt(deg g + 1) * H)^n * ||f||_2^(n-1) with H the largest coefficient
// 1-norm of g over the power basis, and |coeff| <= 2^deg(N) * M(N).
inline IntPoly norm_via_crt(const IntPoly& f, const KPoly& g) {
    long n = f.degree();
    long dg = kp::deg(g);
    long bigd = n * dg;
    mpz_class h = 1;
    for (const RatPoly& c : g) {
        mpq_class s = 0;
        for (const mpz_class& a : c.num().coeffs()) s += mpq_class(abs(a), c.den());
        mpz_class cs;
        mpz_cdiv_q(cs.get_mpz_t(), s.get_num().get_mpz_t(), s.get_den().get_mpz_t());
        if (cs > h) h = cs;
    }
    mpz_class nf2 = 0;
    for (const mpz_class& a : f.coeffs()) nf2 += a * a;
    mpz_class base = (sqrt(mpz_class(dg)) + 1) * h;  // ceil sqrt(dg+1) * H
    mpz_class bound, fpow, two_d;
    mpz_pow_ui(bound.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(n));
    mpz_class fnorm = sqrt(nf2) + 1;
    mpz_pow_ui(fpow.get_mpz_t(), fnorm.get_mpz_t(), static_cast<unsigned long>(n - 1));
    mpz_ui_pow_ui(two_d.get_mpz_t(), 2, static_cast<unsigned long>(bigd));
    mpz_class target = 2 * bound * fpow * two_d;

    PrimeSource src = PrimeSource::random_bits(62, 0x6e6f726d63727431ull);
    mpz_class m = 1;
    std::vector<mpz_class> res(static_cast<std::size_t>(bigd) + 1, 0);
    while (m <= target) {
        std::uint64_t p = src.next();
        auto nm = norm_mod_p(f, g, p);
        if (!nm) continue;
        auto coeff = [&](long i) -> std::uint64_t {
            return i <= nm->degree() ? nm->c[static_cast<std::size_t>(i)] : 0;
        };
        if (m == 1) {
            for (long i = 0; i <= bigd; ++i)
                res[static_cast<std::size_t>(i)] = static_cast<unsigned long>(coeff(i));
        } else {
            std::uint64_t minv = invmod_u64(mpz_fdiv_ui(m.get_mpz_t(), p), p);
            for (long i = 0; i <= bigd; ++i) {
                mpz_class& r = res[static_cast<std::size_t>(i)];
                std::uint64_t rp = mpz_fdiv_ui(r.get_mpz_t(), p);
                std::uint64_t d = mulmod_u64((coeff(i) + p - rp) % p, minv, p);
                r += m * mpz_class(static_cast<unsigned long>(d));
            }
        }
        m *= mpz_class(static_cast<unsigned long>(p));
    }
    mpz_class half = m / 2;
    for (auto& a : res)
        if (a > half) a -= m;
    return IntPoly(std::move(res));
}

// Intersection over good primes of the subset sums of the factor degrees of
// f/(x - alpha) over each completion of the root field.  A good prime is
// unramified, so for every residue degree e in the mod-p factorization there
// is a completion with residue degree e, over which a global factor of degree
// ej splits into gcd(e, ej) local factors of degree ej / gcd(e, ej); the image
// of (x - alpha) accounts for one local factor of degree 1.  Collapse to
// {0, n-1} proves f/(x - alpha) irreducible over the root field.
inline DegreeSet rootfield_degree_survey(const IntPoly& f, std::size_t budget) {
    long n = f.degree();
    DegreeSet dk = DegreeSet::full(n - 1);
    PrimeSource src = PrimeSource::sequential();
    std::size_t good = 0;
    while (good < budget && !dk.collapsed()) {
        std::uint64_t p = src.next();
        if (!is_good_prime(f, p)) continue;
        ++good;
        DegreeMultiset global = degree_multiset_mod_p(reduce_mod_p(f, p));
        for (const auto& [e, cnt] : global.entries) {
            (void)cnt;
            DegreeMultiset local;
            for (const auto& [ej, cj] : global.entries) {
                long g0 = std::gcd(e, ej);
                local.add(ej / g0, cj * g0);
            }
            auto it = local.entries.find(1);
            if (--(it->second) == 0) local.entries.erase(it);
            dk = intersect(dk, subset_sums(local, n - 1));
            if (dk.collapsed()) break;
        }
    }
    return dk;
}

// Unique a/b with a = r*b mod m, |a| and b below sqrt(m/2), when one exists.
inline std::optional<mpq_class> rational_reconstruct(const mpz_class& r, const mpz_class& m) {
    mpz_class bound, half = m / 2;
    mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
    mpz_class r0 = m, r1 = r, t0 = 0, t1 = 1;
    while (r1 > bound) {
        mpz_class q = r0 / r1;
        mpz_class r2 = r0 - q * r1;
        mpz_class t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (t1 == 0) return std::nullopt;
    mpz_class num = r1, den = t1;
    if (den < 0) {
        num = -num;
        den = -den;
    }
    if (den > bound) return std::nullopt;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (g != 1) return std::nullopt;
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

// Monic gcd of gs and the norm factor nj in K[x], computed modulo good primes
// componentwise over F_p[t]/(component of f mod p), recombined by Chinese
// remaindering, and certified by exact division.  Avoids the coefficient
// growth of a fraction-field remainder sequence.
inline std::optional<KPoly> modular_pullback(const NumberField& k, const IntPoly& f,
                                             const KPoly& gs, const IntPoly& nj) {
    long n = f.degree();
    if (nj.degree() % n != 0) return std::nullopt;
    long dj = nj.degree() / n;
    if (dj < 1 || dj > kp::deg(gs)) return std::nullopt;
    PrimeSource src = PrimeSource::random_bits(62, 0x70756c6c6261636bull);
    mpz_class m = 1;
    std::vector<std::vector<mpz_class>> res(
        static_cast<std::size_t>(dj) + 1,
        std::vector<mpz_class>(static_cast<std::size_t>(n), 0));
    int primes_used = 0;
    for (int round = 0; round < 200; ++round) {
        std::uint64_t p = src.next();
        if (!is_good_prime(f, p)) continue;
        auto gsbar = kpoly_mod_p(gs, p);
        if (!gsbar) continue;
        ModPoly fbar = reduce_mod_p(f, p);
        ModPoly njbar = reduce_mod_p(nj, p);
        ModPoly zero(p, {});
        auto comps = factor_mod_p(fbar, 0);
        // every component must see the full gcd degree dj, else p is unlucky
        std::vector<std::pair<ModPoly, FqxPoly>> parts;
        bool ok = true;
        for (const auto& [mi, mult] : comps) {
            (void)mult;
            FqCtx ctx{mi};
            FqxPoly a(gsbar->size());
            for (std::size_t i = 0; i < a.size(); ++i) a[i] = ctx.reduce((*gsbar)[i]);
            fqx::trim(a);
            FqxPoly b(njbar.c.size());
            for (std::size_t i = 0; i < b.size(); ++i) b[i] = ModPoly(p, {njbar.c[i]});
            fqx::trim(b);
            FqxPoly hbar = fqx::gcd(ctx, a, b);
            if (fqx::deg(hbar) != dj) {
                ok = false;
                break;
            }
            parts.emplace_back(mi, std::move(hbar));
        }
        if (!ok) continue;
        // Chinese remaindering of the components back to F_p[t]/(f mod p)
        ModPoly acc(p, {1});
        std::vector<ModPoly> comb(static_cast<std::size_t>(dj) + 1, zero);
        for (const auto& [mi, hbar] : parts) {
            FqCtx ctx{mi};
            ModPoly ainv = ctx.inv(ctx.reduce(acc));
            for (long j = 0; j <= dj; ++j) {
                const ModPoly& hj =
                    static_cast<std::size_t>(j) < hbar.size() ? hbar[static_cast<std::size_t>(j)] : zero;
                ModPoly delta = ctx.mul(ctx.sub(hj, ctx.reduce(comb[static_cast<std::size_t>(j)])), ainv);
                comb[static_cast<std::size_t>(j)] =
                    modp::add(comb[static_cast<std::size_t>(j)], modp::mul(acc, delta));
            }
            acc = modp::mul(acc, mi);
        }
        auto coord = [&](long j, long t) -> std::uint64_t {
            const ModPoly& cj = comb[static_cast<std::size_t>(j)];
            return t <= cj.degree() ? cj.c[static_cast<std::size_t>(t)] : 0;
        };
        if (m == 1) {
            for (long j = 0; j <= dj; ++j)
                for (long t = 0; t < n; ++t)
                    res[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)] =
                        static_cast<unsigned long>(coord(j, t));
        } else {
            std::uint64_t minv = invmod_u64(mpz_fdiv_ui(m.get_mpz_t(), p), p);
            for (long j = 0; j <= dj; ++j)
                for (long t = 0; t < n; ++t) {
                    mpz_class& r = res[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)];
                    std::uint64_t rp = mpz_fdiv_ui(r.get_mpz_t(), p);
                    std::uint64_t d = mulmod_u64((coord(j, t) + p - rp) % p, minv, p);
                    r += m * mpz_class(static_cast<unsigned long>(d));
                }
        }
        m *= mpz_class(static_cast<unsigned long>(p));
        if (++primes_used < 2) continue;
        // try to land on the exact rational coefficients
        bool all = true;
        std::vector<QVector> qc(static_cast<std::size_t>(dj) + 1,
                                QVector(static_cast<std::size_t>(n)));
        for (long j = 0; j <= dj && all; ++j)
            for (long t = 0; t < n; ++t) {
                auto q = rational_reconstruct(
                    res[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)], m);
                if (!q) {
                    all = false;
                    break;
                }
                qc[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)] = *q;
            }
        if (!all) continue;
        KPoly cand(static_cast<std::size_t>(dj) + 1);
        for (long j = 0; j <= dj; ++j)
            cand[static_cast<std::size_t>(j)] =
                ratpoly_from_qvector(qc[static_cast<std::size_t>(j)]);
        kp::trim(cand);
        if (kp::deg(cand) != dj) continue;
        if (!kp::is_zero(kp::rem(k, gs, cand))) continue;
        return cand;
    }
    return std::nullopt;
}

}  // namespace detail

// Monic factorization of irreducible monic f over K = Q[alpha]/(f) by the
// Trager norm method; always contains the factor (x - alpha).
inline std::vector<KPoly> factor_over_rootfield(const IntPoly& f) {
    if (!f.is_monic() || f.degree() < 1)
        throw std::invalid_argument("factor_over_rootfield needs a monic polynomial");
    long n = f.degree();
    NumberField k(f);
    RatPoly alpha = RatPoly(IntPoly::x());
    KPoly x_minus_alpha = {-alpha, RatPoly(IntPoly::constant(1))};
    if (n == 1) return {x_minus_alpha};

    // g = f(x) / (x - alpha), by synthetic division in K[x]
    KPoly g(static_cast<std::size_t>(n));
    RatPoly carry = RatPoly(IntPoly::constant(1));
    for (long i = n - 1; i >= 0; --i) {
        g[static_cast<std::size_t>(i)] = carry;
        carry = k.reduce(carry * alpha + RatPoly(IntPoly::constant(f[static_cast<std::size_t>(i)])));
    }
    kp::trim(g);

    if (n == 2) return {x_minus_alpha, kp::monic(k, g)};

    // completion-degree survey: a collapse proves g irreducible over K from
    // degree data alone, with no norm computation at all
    DegreeSet dk = detail::rootfield_degree_survey(f, 40);
    if (dk.collapsed()) return {x_minus_alpha, kp::monic(k, g)};

    // find a shift s with squarefree norm; squarefreeness modulo one prime
    // with full degree already proves squarefreeness over Z (s = 0 never
    // works for n > 2, the norm of g itself being f^(n-1))
    long max_abs_shift = n * n;
    KPoly gs;
    long shift_used = 0;
    bool found = false;
    PrimeSource probe = PrimeSource::random_bits(62, 0x7368696674737173ull);
    for (long step = 1; step <= 2 * max_abs_shift && !found; ++step) {
        long s = (step % 2 == 1) ? (step + 1) / 2 : -(step / 2);  // 1, -1, 2, -2, ...
        KPoly cand = kp::shift_by_alpha(k, g, -s);  // g(x - s*alpha)
        for (int t = 0; t < 5; ++t) {
            auto nm = detail::norm_mod_p(f, cand, probe.next());
            if (!nm) continue;
            if (is_squarefree_mod_p(*nm)) {
                gs = std::move(cand);
                shift_used = s;
                found = true;
            }
            break;  // a well-defined probe decides; retry only on a skipped prime
        }
    }
    if (!found) throw std::runtime_error("no shift with squarefree norm found");

    IntPoly norm = detail::norm_via_crt(f, gs);
    // the surviving completion degrees restrict the norm factors: a K-factor
    // of degree d pulls out a norm factor of degree n*d
    DegreeSet allowed(norm.degree());
    for (long d : dk.degrees()) allowed.set(n * d);
    FactorizationResult fr = factor_over_q(norm, allowed);
    std::vector<KPoly> factors = {x_minus_alpha};
    if (fr.factors.size() == 1 && fr.factors[0].second == 1) {
        // irreducible norm: g itself is irreducible over K
        factors.push_back(kp::monic(k, g));
        return factors;
    }
    for (const auto& [ni, mult] : fr.factors) {
        if (mult != 1) throw std::runtime_error("norm unexpectedly not squarefree");
        std::optional<KPoly> gi = detail::modular_pullback(k, f, gs, ni);
        if (!gi) {
            KPoly e = kp::gcd(k, gs, kp::embed(ni));
            if (kp::deg(e) < 1) throw std::runtime_error("norm factor pulled back to a unit");
            gi = std::move(e);
        }
        KPoly fac = std::move(*gi);
        if (shift_used != 0) fac = kp::shift_by_alpha(k, fac, shift_used);  // x -> x + s*alpha
        factors.push_back(kp::monic(k, fac));
    }
    // exact reconstruction check; failure indicates a reducible input
    KPoly prod = kp::constant(RatPoly(IntPoly::constant(1)));
    for (const auto& fac : factors) prod = kp::mul(k, prod, fac);
    if (!kp::equal(prod, kp::embed(f)))
        throw std::runtime_error("root-field factors do not multiply back to f");
    return factors;
}

// Rational basis of L_g = { v in K : v(x) = v(alpha) mod (g, f) }, the
// principal subfield attached to the factor g.
inline std::vector<RatPoly> principal_subfield(const IntPoly& f, const KPoly& g) {
    long n = f.degree();
    long dg = kp::deg(g);
    if (dg < 1) throw std::invalid_argument("principal_subfield needs a nonconstant factor");
    NumberField k(f);
    // x^t mod g for t < n
    std::vector<KPoly> xpow(static_cast<std::size_t>(n));
    xpow[0] = kp::constant(RatPoly(IntPoly::constant(1)));
    KPoly x_poly = {RatPoly(), RatPoly(IntPoly::constant(1))};
    for (long t = 1; t < n; ++t)
        xpow[static_cast<std::size_t>(t)] =
            kp::rem(k, kp::mul(k, xpow[static_cast<std::size_t>(t - 1)], x_poly), g);
    // rows: dg coefficients, each an n-vector over Q; columns: the power basis
    QMatrix a(static_cast<std::size_t>(dg * n), QVector(static_cast<std::size_t>(n), mpq_class(0)));
    for (long t = 0; t < n; ++t) {
        KPoly img = xpow[static_cast<std::size_t>(t)];
        // subtract alpha^t from the constant coefficient
        KPoly at = kp::constant(k.alpha_power(t));
        img = kp::sub(img, at);
        for (long j = 0; j <= kp::deg(img); ++j) {
            QVector coords = detail::flatten_k_elem(img[static_cast<std::size_t>(j)], n);
            for (long i = 0; i < n; ++i)
                a[static_cast<std::size_t>(j * n + i)][static_cast<std::size_t>(t)] =
                    coords[static_cast<std::size_t>(i)];
        }
    }
    std::vector<QVector> ker = linalg::null_space(a);
    std::vector<RatPoly> basis;
    basis.reserve(ker.size());
    for (const auto& v : ker) basis.push_back(detail::ratpoly_from_qvector(v));
    return basis;
}

// Minimal polynomial of beta(alpha) via the characteristic polynomial
// Res_u(f(u), D*y - N(u)); returns (m primitive with positive lc, deg m).
inline std::pair<IntPoly, long> generator_minpoly(const IntPoly& f, const RatPoly& beta) {
    if (beta.degree() >= f.degree())
        throw std::invalid_argument("generator_minpoly: beta must be reduced mod f");
    BiPoly q({-beta, RatPoly(IntPoly::constant(1))});  // y - beta(u), denominators cleared inside
    IntPoly chi = resultant_wrt_u(f, q);
    IntPoly m = squarefree_part(chi);
    return {m, m.degree()};
}

// True iff deg m is a proper divisor of deg f, m is irreducible over Q, and
// m(h(x)) = 0 mod f.
inline bool verify_imprimitivity_certificate(const IntPoly& f,
                                             const ImprimitivityCertificate& cert) {
    long n = f.degree();
    long d = cert.m.degree();
    if (d <= 1 || d >= n || n % d != 0) return false;
    FactorizationResult fr = factor_over_q(cert.m);
    if (fr.factors.size() != 1 || fr.factors[0].second != 1) return false;
    return compose_mod(RatPoly(cert.m), cert.h, f).is_zero();
}

// Searches the principal subfields for a proper intermediate field and turns
// the smallest one found into a certificate.  Returns absent for primitive
// root fields, and (vacuously) for prime degree.
inline std::optional<ImprimitivityCertificate> extract_certificate(const IntPoly& f,
                                                                   std::uint64_t rng_seed) {
    long n = f.degree();
    if (n < 2) throw std::invalid_argument("extract_certificate needs degree >= 2");
    if (!f.is_monic()) throw std::invalid_argument("extract_certificate needs monic f");
    bool prime_degree = true;
    for (long q = 2; q * q <= n; ++q)
        if (n % q == 0) prime_degree = false;
    if (prime_degree) return std::nullopt;

    std::vector<KPoly> factors = factor_over_rootfield(f);
    struct Candidate {
        long dim;
        std::vector<RatPoly> basis;
    };
    std::vector<Candidate> cands;
    for (const auto& g : factors) {
        if (kp::deg(g) == 1) {
            // skip (x - alpha) itself; any other linear factor is informative
            if (g.size() == 2 && g[0] == -RatPoly(IntPoly::x()) &&
                g[1] == RatPoly(IntPoly::constant(1)))
                continue;
        }
        std::vector<RatPoly> basis = principal_subfield(f, g);
        long dim = static_cast<long>(basis.size());
        if (dim > 1 && dim < n) cands.push_back({dim, std::move(basis)});
    }
    std::sort(cands.begin(), cands.end(),
              [](const Candidate& a, const Candidate& b) { return a.dim < b.dim; });

    for (std::size_t ci = 0; ci < cands.size(); ++ci) {
        const Candidate& cand = cands[ci];
        for (int attempt = 0; attempt < 16; ++attempt) {
            std::mt19937_64 rng(rng_seed ^ (0x517cc1b727220a95ull * (ci + 1)) ^
                                (0x2545f4914f6cdd1dull * (attempt + 1)));
            std::uniform_int_distribution<int> dist(-3, 3);
            std::vector<int> w(cand.basis.size());
            int nonzero = 0;
            for (auto& v : w) {
                v = dist(rng);
                if (v != 0) ++nonzero;
            }
            if (nonzero <= 1) continue;  // degenerate draw
            RatPoly beta;
            for (std::size_t i = 0; i < w.size(); ++i)
                beta = beta + cand.basis[i] * mpq_class(w[i]);
            if (beta.degree() < 1) continue;
            auto [m, d] = generator_minpoly(f, beta);
            if (d != cand.dim) continue;
            // scale so the minimal polynomial is monic with integer coefficients
            // (copy: m is reassigned below and would invalidate a reference)
            const mpz_class l = m.lc();
            if (l != 1) {
                std::vector<mpz_class> mc(m.coeffs().size());
                mc.back() = 1;
                mpz_class pw = 1;
                for (std::size_t i = m.coeffs().size() - 1; i-- > 0;) {
                    mc[i] = m.coeffs()[i] * pw;
                    pw *= l;
                }
                // l^(d-1) * m(y/l), the minimal polynomial of l*beta, monic over Z
                m = IntPoly(std::move(mc));
                beta = beta * mpq_class(l);
            }
            ImprimitivityCertificate cert{m, beta};
            if (verify_imprimitivity_certificate(f, cert)) return cert;
        }
    }
    return std::nullopt;
}

struct RelativeEquation {
    std::vector<RatPoly> x_coeffs;  // coefficient of x^i is a polynomial in y
};

// Monic relative equation g(y, x) of x-degree n/d with g(h(x), x) = 0 mod f.
inline RelativeEquation relative_equation(const IntPoly& f,
                                          const ImprimitivityCertificate& cert) {
    long n = f.degree();
    long d = cert.m.degree();
    if (d <= 1 || d >= n || n % d != 0)
        throw std::invalid_argument("relative_equation: invalid certificate degree");
    long e = n / d;
    NumberField k(f);
    // powers of beta and the mixed basis alpha^i * beta^j
    std::vector<RatPoly> beta_pow(static_cast<std::size_t>(d));
    beta_pow[0] = RatPoly(IntPoly::constant(1));
    for (long j = 1; j < d; ++j)
        beta_pow[static_cast<std::size_t>(j)] =
            k.mul(beta_pow[static_cast<std::size_t>(j - 1)], cert.h);
    QMatrix a(static_cast<std::size_t>(n), QVector(static_cast<std::size_t>(n), mpq_class(0)));
    for (long i = 0; i < e; ++i)
        for (long j = 0; j < d; ++j) {
            RatPoly v = k.mul(k.alpha_power(i), beta_pow[static_cast<std::size_t>(j)]);
            QVector coords = detail::flatten_k_elem(v, n);
            for (long r = 0; r < n; ++r)
                a[static_cast<std::size_t>(r)][static_cast<std::size_t>(i * d + j)] =
                    coords[static_cast<std::size_t>(r)];
        }
    QVector b = detail::flatten_k_elem(k.alpha_power(e), n);
    auto sol = linalg::solve(a, b);
    if (!sol) throw std::runtime_error("relative_equation: mixed basis is degenerate");
    RelativeEquation out;
    out.x_coeffs.resize(static_cast<std::size_t>(e) + 1);
    for (long i = 0; i < e; ++i) {
        QVector cy(static_cast<std::size_t>(d));
        for (long j = 0; j < d; ++j)
            cy[static_cast<std::size_t>(j)] = -(*sol)[static_cast<std::size_t>(i * d + j)];
        out.x_coeffs[static_cast<std::size_t>(i)] = detail::ratpoly_from_qvector(cy);
    }
    out.x_coeffs[static_cast<std::size_t>(e)] = RatPoly(IntPoly::constant(1));
    return out;
}

// g(h(x), x) reduced mod f; zero for a consistent relative equation.
inline RatPoly evaluate_relative_equation(const IntPoly& f, const RelativeEquation& g,
                                          const RatPoly& h) {
    RatPoly acc;
    for (std::size_t i = 0; i < g.x_coeffs.size(); ++i) {
        RatPoly ci = compose_mod(g.x_coeffs[i], h, f);
        acc = acc + rat_rem(ci * RatPoly(IntPoly::monomial(1, i)), f);
    }
    return rat_rem(acc, f);
}

// For Q linear in u with Q(u, alpha) = 0, the root of P is rational in alpha:
// u = -B(alpha) / A(alpha) where Q = A(x) u + B(x).  Gives an extraction path
// independent of the principal-subfield search.
inline RatPoly recover_linear_u(const BiPoly& q, const IntPoly& big_f) {
    if (q.degree_u() != 1)
        throw std::invalid_argument("recover_linear_u: Q must be linear in u");
    NumberField k(big_f);
    RatPoly a = detail::bipoly_u_coeff(q, 1);
    RatPoly b = detail::bipoly_u_coeff(q, 0);
    RatPoly a_alpha = k.reduce(a);
    RatPoly b_alpha = k.reduce(b);
    return k.mul(-b_alpha, k.inv(a_alpha));
}

// Coordinates of v in the power basis 1, beta, ..., beta^(d-1), when v lies in
// the subfield generated by beta.
inline std::optional<QVector> express_in_subfield(const IntPoly& f, const RatPoly& beta,
                                                  long d, const RatPoly& v) {
    long n = f.degree();
    NumberField k(f);
    QMatrix a(static_cast<std::size_t>(n), QVector(static_cast<std::size_t>(d), mpq_class(0)));
    RatPoly pw = RatPoly(IntPoly::constant(1));
    for (long j = 0; j < d; ++j) {
        QVector coords = detail::flatten_k_elem(pw, n);
        for (long r = 0; r < n; ++r)
            a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] =
                coords[static_cast<std::size_t>(r)];
        pw = k.mul(pw, beta);
    }
    return linalg::solve(a, detail::flatten_k_elem(k.reduce(v), n));
}

}  // namespace polycert
