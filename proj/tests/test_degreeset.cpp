// Degree sets and subset sums, checked against brute-force subset enumeration
// over every partition of every total up to 12.

#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <vector>

#include "polycert/degree_set.hpp"

using namespace polycert;

namespace {

void partitions(long remaining, long max_part, std::vector<long>& cur,
                std::vector<std::vector<long>>& out) {
    if (remaining == 0) {
        out.push_back(cur);
        return;
    }
    for (long p = std::min(remaining, max_part); p >= 1; --p) {
        cur.push_back(p);
        partitions(remaining - p, p, cur, out);
        cur.pop_back();
    }
}

std::set<long> brute_subset_sums(const std::vector<long>& parts) {
    std::set<long> sums = {0};
    for (long p : parts) {
        std::set<long> next = sums;
        for (long s : sums) next.insert(s + p);
        sums = next;
    }
    return sums;
}

}  // namespace

TEST_CASE("fixed subset-sum examples") {
    DegreeMultiset a;
    a.add(1, 2);
    CHECK(subset_sums(a, 2).degrees() == std::vector<long>{0, 1, 2});

    DegreeMultiset b;
    b.add(7, 1);
    CHECK(subset_sums(b, 7).degrees() == std::vector<long>{0, 7});

    DegreeMultiset c;
    c.add(2);
    c.add(3);
    c.add(5);
    CHECK(subset_sums(c, 10).degrees() == std::vector<long>{0, 2, 3, 5, 7, 8, 10});

    CHECK_THROWS(subset_sums(c, 11));
}

TEST_CASE("subset sums match brute force for every partition up to 12") {
    for (long n = 1; n <= 12; ++n) {
        std::vector<std::vector<long>> parts;
        std::vector<long> cur;
        partitions(n, n, cur, parts);
        for (const auto& pt : parts) {
            DegreeMultiset m;
            for (long p : pt) m.add(p);
            DegreeSet s = subset_sums(m, n);
            std::set<long> want = brute_subset_sums(pt);
            for (long d = 0; d <= n; ++d) CHECK(s.contains(d) == (want.count(d) > 0));
        }
    }
}

TEST_CASE("subset sums always contain the extremes and are symmetric") {
    for (long n = 1; n <= 12; ++n) {
        std::vector<std::vector<long>> parts;
        std::vector<long> cur;
        partitions(n, n, cur, parts);
        for (const auto& pt : parts) {
            DegreeMultiset m;
            for (long p : pt) m.add(p);
            DegreeSet s = subset_sums(m, n);
            CHECK(s.contains(0));
            CHECK(s.contains(n));
            for (long d = 0; d <= n; ++d) CHECK(s.contains(d) == s.contains(n - d));
        }
    }
}

TEST_CASE("intersection") {
    DegreeMultiset c;
    c.add(2);
    c.add(3);
    c.add(5);
    DegreeSet a = subset_sums(c, 10);
    DegreeMultiset h;
    h.add(5, 2);
    DegreeSet b = subset_sums(h, 10);  // {0,5,10}
    CHECK(intersect(a, b).degrees() == std::vector<long>{0, 5, 10});
    CHECK(intersect(a, DegreeSet::trivial(10)).degrees() == std::vector<long>{0, 10});
    CHECK(intersect(a, a) == a);
    CHECK_THROWS(intersect(a, DegreeSet::trivial(9)));
}

TEST_CASE("collapse detection") {
    CHECK(DegreeSet::trivial(8).collapsed());
    CHECK_FALSE(DegreeSet::full(8).collapsed());
    CHECK(DegreeSet::trivial(8).proper_degrees().empty());
}
