#pragma once

// Monte-Carlo irreducibility tests over Q: the classical single-prime test,
// the subset-sum intersection test, and the hybrid of the two.  Outcomes carry
// independently re-checkable certificates and the surviving degree set.

#include <cmath>
#include <cstdint>
#include <future>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "polycert/degree_set.hpp"
#include "polycert/integer_poly.hpp"
#include "polycert/mod_poly.hpp"

namespace polycert {

struct IrreducibilityCertificate {
    enum class Kind { SinglePrime, SubsetSum };
    Kind kind = Kind::SinglePrime;
    std::uint64_t prime = 0;  // single-prime form
    std::vector<std::pair<std::uint64_t, DegreeMultiset>> entries;  // subset-sum form
};

struct TestOutcome {
    bool irreducible = false;
    std::optional<IrreducibilityCertificate> certificate;
    DegreeSet surviving;
    std::size_t primes_examined = 0;  // good primes only
    std::size_t bad_primes_skipped = 0;
};

inline std::size_t default_ppr_budget(long n, double c = 4.0) {
    if (n < 2) throw std::invalid_argument("degree below 2");
    return static_cast<std::size_t>(std::ceil(c * std::log2(static_cast<double>(n))));
}

namespace detail {

inline void check_test_input(const IntPoly& f) {
    if (f.degree() < 2) throw std::invalid_argument("test needs degree >= 2");
    if (f.content() != 1) throw std::invalid_argument("test needs a primitive polynomial");
}

// A polynomial with a repeated factor has no good primes at all, so a prime
// scan would never terminate.  Such an input is certainly reducible; the tests
// report Inconclusive for it without consuming primes.
inline bool no_good_primes(const IntPoly& f) { return !is_squarefree_z(f); }

// Drives work over the good primes of a source, in sequence order, consuming
// results in order so outcomes are independent of scheduling.  work(p) may run
// concurrently; consume(p, result) returns true to stop.
template <class R, class Work, class Consume>
void for_good_primes(const IntPoly& f, PrimeSource& primes, std::size_t budget, int jobs,
                     std::size_t& examined, std::size_t& bad_skipped, Work work,
                     Consume consume) {
    if (jobs < 1) jobs = 1;
    while (examined < budget) {
        std::vector<std::uint64_t> batch;
        while (batch.size() < static_cast<std::size_t>(jobs) &&
               examined + batch.size() < budget) {
            std::uint64_t p = primes.next();
            if (!is_good_prime(f, p)) {
                ++bad_skipped;
                continue;
            }
            batch.push_back(p);
        }
        if (batch.empty()) return;
        std::vector<std::future<R>> futs;
        futs.reserve(batch.size());
        for (std::uint64_t p : batch) {
            if (jobs == 1)
                futs.push_back(std::async(std::launch::deferred, work, p));
            else
                futs.push_back(std::async(std::launch::async, work, p));
        }
        for (std::size_t i = 0; i < batch.size(); ++i) {
            R r = futs[i].get();
            ++examined;
            if (consume(batch[i], std::move(r))) return;
        }
    }
}

struct PprPhase {
    TestOutcome outcome;
    std::vector<std::pair<std::uint64_t, DegreeMultiset>> entries;  // all examined
};

inline PprPhase ppr_phase(const IntPoly& f, PrimeSource& primes, std::size_t budget,
                          int jobs) {
    check_test_input(f);
    long n = f.degree();
    PprPhase ph;
    ph.outcome.surviving = DegreeSet::full(n);
    if (no_good_primes(f)) return ph;
    DegreeSet acc = DegreeSet::full(n);
    for_good_primes<DegreeMultiset>(
        f, primes, budget, jobs, ph.outcome.primes_examined, ph.outcome.bad_primes_skipped,
        [&](std::uint64_t p) { return degree_multiset_mod_p(reduce_mod_p(f, p)); },
        [&](std::uint64_t p, DegreeMultiset m) {
            acc = intersect(acc, subset_sums(m, n));
            ph.entries.emplace_back(p, std::move(m));
            return acc.collapsed();
        });
    ph.outcome.surviving = acc;
    if (acc.collapsed()) {
        ph.outcome.irreducible = true;
        IrreducibilityCertificate cert;
        cert.kind = IrreducibilityCertificate::Kind::SubsetSum;
        cert.entries = ph.entries;
        ph.outcome.certificate = std::move(cert);
    }
    return ph;
}

}  // namespace detail

// Classical test: stop at the first good prime with an irreducible reduction.
inline TestOutcome standard_test(const IntPoly& f, PrimeSource& primes, std::size_t budget,
                                 int jobs = 1) {
    detail::check_test_input(f);
    long n = f.degree();
    TestOutcome out;
    out.surviving = DegreeSet::full(n);
    if (detail::no_good_primes(f)) return out;
    detail::for_good_primes<bool>(
        f, primes, budget, jobs, out.primes_examined, out.bad_primes_skipped,
        [&](std::uint64_t p) { return irreducible_mod_p(reduce_mod_p(f, p)); },
        [&](std::uint64_t p, bool irr) {
            if (!irr) return false;
            out.irreducible = true;
            IrreducibilityCertificate cert;
            cert.kind = IrreducibilityCertificate::Kind::SinglePrime;
            cert.prime = p;
            out.certificate = std::move(cert);
            out.surviving = DegreeSet::trivial(n);
            return true;
        });
    return out;
}

// Subset-sum test: intersect S_p across good primes, stop when the
// intersection collapses to {0, n}.
inline TestOutcome ppr_test(const IntPoly& f, PrimeSource& primes, std::size_t budget,
                            int jobs = 1) {
    return detail::ppr_phase(f, primes, budget, jobs).outcome;
}

// Subset-sum phase first; on Inconclusive, fall back to the classical test on
// fresh primes from the same source.  The surviving set of the first phase is
// retained either way.
inline TestOutcome hybrid_test(const IntPoly& f, PrimeSource& primes,
                               std::size_t ppr_budget, std::size_t fallback_budget,
                               int jobs = 1) {
    detail::PprPhase ph = detail::ppr_phase(f, primes, ppr_budget, jobs);
    if (ph.outcome.irreducible) return ph.outcome;
    TestOutcome out = ph.outcome;
    // A degree multiset {n:1} from the first phase already certifies; its
    // subset-sum set is trivial, so in practice the phase stops there, but the
    // recorded multisets are consulted before drawing fresh primes.
    for (const auto& [p, m] : ph.entries) {
        if (m.entries.size() == 1 && m.entries.count(f.degree()) == 1) {
            out.irreducible = true;
            IrreducibilityCertificate cert;
            cert.kind = IrreducibilityCertificate::Kind::SinglePrime;
            cert.prime = p;
            out.certificate = std::move(cert);
            return out;
        }
    }
    TestOutcome fb = standard_test(f, primes, fallback_budget, jobs);
    out.primes_examined += fb.primes_examined;
    out.bad_primes_skipped += fb.bad_primes_skipped;
    if (fb.irreducible) {
        out.irreducible = true;
        out.certificate = std::move(fb.certificate);
    }
    return out;
}

inline TestOutcome hybrid_test(const IntPoly& f, PrimeSource& primes,
                               std::size_t fallback_budget) {
    return hybrid_test(f, primes, default_ppr_budget(f.degree()), fallback_budget);
}

// Recomputes every reduction from scratch and checks the defining property.
inline bool verify_irreducibility_certificate(const IntPoly& f,
                                              const IrreducibilityCertificate& c) {
    if (f.degree() < 1) return false;
    if (c.kind == IrreducibilityCertificate::Kind::SinglePrime) {
        if (!is_good_prime(f, c.prime)) return false;
        return irreducible_mod_p(reduce_mod_p(f, c.prime));
    }
    if (c.entries.empty()) return false;
    long n = f.degree();
    DegreeSet acc = DegreeSet::full(n);
    for (const auto& [p, listed] : c.entries) {
        if (!is_good_prime(f, p)) return false;
        DegreeMultiset m = degree_multiset_mod_p(reduce_mod_p(f, p));
        if (!(m == listed)) return false;
        acc = intersect(acc, subset_sums(m, n));
    }
    return acc.collapsed();
}

}  // namespace polycert
