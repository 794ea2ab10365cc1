// The standard, subset-sum, and hybrid irreducibility tests: fixed verdicts,
// soundness on reducible inputs, monotone intersections, and certificate
// verification.

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "polycert/irreducibility.hpp"
#include "polycert/parse.hpp"

using namespace polycert;

namespace {

IntPoly ip(const std::string& s) { return parse_polynomial(s).as_int_x(); }

IntPoly random_monic(std::mt19937_64& rng, long deg, long range) {
    std::uniform_int_distribution<long> dc(-range, range);
    std::vector<mpz_class> c(static_cast<std::size_t>(deg) + 1);
    for (auto& v : c) v = dc(rng);
    c.back() = 1;
    return IntPoly(std::move(c));
}

}  // namespace

TEST_CASE("standard test fixed verdicts") {
    PrimeSource s1 = PrimeSource::sequential();
    TestOutcome a = standard_test(ip("x^2 + 1"), s1, 40);
    CHECK(a.irreducible);
    REQUIRE(a.certificate.has_value());
    CHECK(a.certificate->kind == IrreducibilityCertificate::Kind::SinglePrime);
    CHECK(a.certificate->prime == 3);

    PrimeSource s2 = PrimeSource::sequential();
    TestOutcome b = standard_test(ip("x^4 + 1"), s2, 40);
    CHECK_FALSE(b.irreducible);
    CHECK(b.surviving == DegreeSet::full(4));  // trivially-full surviving shape

    PrimeSource s3 = PrimeSource::sequential();
    TestOutcome c = standard_test(ip("x^8 - x - 1"), s3, 40);
    CHECK(c.irreducible);
    REQUIRE(c.certificate.has_value());
    // frozen regression value: first certifying sequential prime
    CHECK(c.certificate->prime == 7);
    CHECK(irreducible_mod_p(reduce_mod_p(ip("x^8 - x - 1"), c.certificate->prime)));
}

TEST_CASE("subset-sum test fixed verdicts") {
    PrimeSource s1 = PrimeSource::sequential();
    TestOutcome a = ppr_test(ip("x^2 + 1"), s1, 40);
    CHECK(a.irreducible);
    REQUIRE(a.certificate.has_value());
    CHECK(a.certificate->kind == IrreducibilityCertificate::Kind::SubsetSum);
    REQUIRE(a.certificate->entries.size() == 1);
    CHECK(a.certificate->entries[0].first == 3);  // S_3 = {0,2}

    PrimeSource s2 = PrimeSource::sequential();
    TestOutcome b = ppr_test(ip("x^4 + 1"), s2, 40);
    CHECK_FALSE(b.irreducible);
    CHECK(b.surviving.contains(2));
    CHECK(b.surviving.contains(0));
    CHECK(b.surviving.contains(4));
    CHECK(b.primes_examined == 40);
}

TEST_CASE("hybrid test") {
    PrimeSource s1 = PrimeSource::sequential();
    TestOutcome a = hybrid_test(ip("x^2 + 1"), s1, default_ppr_budget(2), 40);
    CHECK(a.irreducible);
    CHECK(a.primes_examined <= default_ppr_budget(2));

    PrimeSource s2 = PrimeSource::sequential();
    TestOutcome b = hybrid_test(ip("x^4 + 1"), s2, default_ppr_budget(4), 40);
    CHECK_FALSE(b.irreducible);
    CHECK(b.surviving.contains(2));  // PPR-phase surviving set is retained

    // hybrid falls back to the standard test and still certifies
    PrimeSource s3 = PrimeSource::sequential();
    TestOutcome c = hybrid_test(ip("x^8 - x - 1"), s3, 2, 40);
    CHECK(c.irreducible);
    CHECK(verify_irreducibility_certificate(ip("x^8 - x - 1"), *c.certificate));
}

TEST_CASE("random degree-64 polynomials resolve within a modest prime budget") {
    std::mt19937_64 rng(424242);
    int irreducible_hits = 0;
    for (int t = 0; t < 5; ++t) {
        IntPoly f = random_monic(rng, 64, 10);
        if (f.content() != 1) continue;
        PrimeSource src = PrimeSource::sequential();
        TestOutcome o = hybrid_test(f, src, default_ppr_budget(64), 60);
        if (o.irreducible) {
            ++irreducible_hits;
            CHECK(o.primes_examined <= 25);
        }
    }
    CHECK(irreducible_hits >= 3);  // random monics are usually irreducible
}

TEST_CASE("certificate verification") {
    IrreducibilityCertificate sp;
    sp.kind = IrreducibilityCertificate::Kind::SinglePrime;
    sp.prime = 3;
    CHECK(verify_irreducibility_certificate(ip("x^2 + 1"), sp));
    CHECK_FALSE(verify_irreducibility_certificate(ip("x^2 - 1"), sp));

    IrreducibilityCertificate ss;
    ss.kind = IrreducibilityCertificate::Kind::SubsetSum;
    DegreeMultiset m;
    m.add(2, 1);
    ss.entries = {{3, m}};
    CHECK(verify_irreducibility_certificate(ip("x^2 + 1"), ss));
    // wrong multiset: claims a linear split mod 3
    DegreeMultiset m2;
    m2.add(1, 2);
    IrreducibilityCertificate bad;
    bad.kind = IrreducibilityCertificate::Kind::SubsetSum;
    bad.entries = {{3, m2}};
    CHECK_FALSE(verify_irreducibility_certificate(ip("x^2 + 1"), bad));
}

TEST_CASE("every irreducible verdict passes verification") {
    std::mt19937_64 rng(7);
    int done = 0;
    while (done < 25) {
        IntPoly f = random_monic(rng, 6 + static_cast<long>(rng() % 6), 8);
        if (f.content() != 1) continue;
        ++done;
        PrimeSource src = PrimeSource::sequential();
        TestOutcome o = ppr_test(f, src, 30);
        if (o.irreducible) {
            REQUIRE(o.certificate.has_value());
            CHECK(verify_irreducibility_certificate(f, *o.certificate));
        }
    }
}

TEST_CASE("soundness: a rational factor degree survives every good prime") {
    std::mt19937_64 rng(31337);
    int done = 0;
    while (done < 100) {
        IntPoly a = random_monic(rng, 2 + static_cast<long>(rng() % 4), 6);
        IntPoly b = random_monic(rng, 2 + static_cast<long>(rng() % 4), 6);
        IntPoly f = a * b;
        if (!is_squarefree_z(f)) continue;
        ++done;
        long da = a.degree();
        PrimeSource src = PrimeSource::sequential();
        int good_seen = 0;
        while (good_seen < 5) {
            std::uint64_t p = src.next();
            if (!is_good_prime(f, p)) continue;
            ++good_seen;
            DegreeSet s = subset_sums(degree_multiset_mod_p(reduce_mod_p(f, p)), f.degree());
            CHECK(s.contains(da));
        }
        // and therefore the subset-sum test can never certify a reducible f
        PrimeSource src2 = PrimeSource::sequential();
        TestOutcome o = ppr_test(f, src2, 25);
        CHECK_FALSE(o.irreducible);
        CHECK(o.surviving.contains(da));
    }
}

TEST_CASE("monotone and order-independent intersections") {
    IntPoly f = ip("x^6 - 2");
    std::vector<DegreeSet> sets;
    PrimeSource src = PrimeSource::sequential();
    while (sets.size() < 6) {
        std::uint64_t p = src.next();
        if (!is_good_prime(f, p)) continue;
        sets.push_back(subset_sums(degree_multiset_mod_p(reduce_mod_p(f, p)), 6));
    }
    DegreeSet acc = DegreeSet::full(6);
    for (const auto& s : sets) {
        DegreeSet next = intersect(acc, s);
        CHECK(next.subset_of(acc));  // monotone
        acc = next;
    }
    // permuted merge order gives the same final set
    DegreeSet acc2 = DegreeSet::full(6);
    for (auto it = sets.rbegin(); it != sets.rend(); ++it) acc2 = intersect(acc2, *it);
    CHECK(acc == acc2);
}

TEST_CASE("budgets and input contracts") {
    PrimeSource src = PrimeSource::sequential();
    CHECK_THROWS(ppr_test(ip("x"), src, 10));
    CHECK_THROWS(ppr_test(ip("2*x^2 + 2"), src, 10));  // not primitive
    CHECK(default_ppr_budget(16) == 16);
    CHECK(default_ppr_budget(128) == 28);
}
