#pragma once

// Stress-test instances: "evil twins" that agree with a given polynomial
// modulo every small prime, and imprimitive polynomials built as resultants
// with a prescribed subfield degree.

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "polycert/factor_q.hpp"
#include "polycert/integer_poly.hpp"
#include "polycert/irreducibility.hpp"

namespace polycert {

// Product of all primes strictly below bound.
inline mpz_class primorial(std::uint64_t bound) {
    if (bound < 3) throw std::invalid_argument("primorial bound must be at least 3");
    mpz_class m = 1;
    for (std::uint64_t p = 2; p < bound; ++p)
        if (is_prime_u64(p)) m *= mpz_class(static_cast<unsigned long>(p));
    return m;
}

struct TwinResult {
    IntPoly twin;        // f + multiplier * r
    IntPoly perturbation;  // r, nonzero, deg r < deg f
    mpz_class multiplier;
    std::uint64_t bound = 0;
};

// Twin of f whose reduction equals f's modulo every prime below bound.
inline TwinResult evil_twin(const IntPoly& f, std::uint64_t bound, std::uint64_t seed,
                            long coeff_range = 3) {
    if (f.degree() < 2) throw std::invalid_argument("evil_twin needs degree >= 2");
    if (coeff_range < 1) throw std::invalid_argument("evil_twin needs a positive range");
    TwinResult out;
    out.bound = bound;
    out.multiplier = primorial(bound);
    std::mt19937_64 rng(seed ^ 0x6a09e667f3bcc908ull);
    std::uniform_int_distribution<long> dist(-coeff_range, coeff_range);
    do {
        std::vector<mpz_class> c(static_cast<std::size_t>(f.degree()));
        for (auto& v : c) v = dist(rng);
        out.perturbation = IntPoly(std::move(c));
    } while (out.perturbation.is_zero());
    out.twin = f + out.multiplier * out.perturbation;
    return out;
}

struct ImprimitiveFamilyResult {
    IntPoly big_f;        // Res_u(P(u), Q(u, x)), primitive with positive lc
    long subfield_degree;  // deg P
    TestOutcome irreducibility;  // reported, not required; F can be reducible
};

// F = Res_u(P, Q) for irreducible P and Q monic in x.  With Q linear in u,
// a root alpha of F determines a root of P rationally, so Q[alpha] contains
// a subfield of degree deg P.
inline ImprimitiveFamilyResult imprimitive_family(const IntPoly& p, const BiPoly& q,
                                                  bool allow_nonlinear_u = false) {
    if (p.degree() < 1) throw std::invalid_argument("imprimitive_family: constant P");
    long dx = q.degree_x();
    if (dx < 2) throw std::invalid_argument("imprimitive_family: Q needs x-degree >= 2");
    if (!(q.x_coeff(static_cast<std::size_t>(dx)) == RatPoly(IntPoly::constant(1))))
        throw std::invalid_argument("imprimitive_family: Q must be monic in x");
    if (!allow_nonlinear_u && q.degree_u() != 1)
        throw std::invalid_argument("imprimitive_family: Q must be linear in u");
    FactorizationResult fr = factor_over_q(p);
    if (fr.factors.size() != 1 || fr.factors[0].second != 1)
        throw std::invalid_argument("imprimitive_family: P is not irreducible");
    ImprimitiveFamilyResult out;
    out.big_f = resultant_wrt_u(p, q);
    out.subfield_degree = p.degree();
    if (out.big_f.degree() < p.degree() * dx)
        throw std::runtime_error("imprimitive_family: degenerate resultant degree");
    PrimeSource src = PrimeSource::sequential();
    out.irreducibility = hybrid_test(out.big_f, src, default_ppr_budget(out.big_f.degree()),
                                     default_ppr_budget(out.big_f.degree()));
    return out;
}

}  // namespace polycert
