#pragma once

// Factor-degree multisets of modular reductions and the bit sets of their
// achievable subset sums.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace polycert {

struct DegreeMultiset {
    std::map<long, long> entries;  // degree -> count, degree >= 1, count >= 1

    long total() const {
        long t = 0;
        for (const auto& [d, c] : entries) t += d * c;
        return t;
    }
    long factor_count() const {
        long t = 0;
        for (const auto& [d, c] : entries) t += c;
        return t;
    }
    void add(long degree, long count = 1) {
        if (degree < 1 || count < 1) throw std::invalid_argument("bad multiset entry");
        entries[degree] += count;
    }
    friend bool operator==(const DegreeMultiset& a, const DegreeMultiset& b) {
        return a.entries == b.entries;
    }
};

// Bit set over {0, ..., n}; invariants: 0 and n present, d present iff n-d is.
class DegreeSet {
public:
    DegreeSet() : n_(0), w_(1, 1) {}

    explicit DegreeSet(long n) : n_(n) {
        if (n < 0) throw std::invalid_argument("negative total degree");
        w_.assign(static_cast<std::size_t>(n / 64) + 1, 0);
        set(0);
        set(n);
    }

    static DegreeSet full(long n) {
        DegreeSet s(n);
        for (long d = 1; d < n; ++d) s.set(d);
        return s;
    }

    static DegreeSet trivial(long n) { return DegreeSet(n); }

    long n() const { return n_; }

    bool contains(long d) const {
        if (d < 0 || d > n_) return false;
        return (w_[static_cast<std::size_t>(d) / 64] >> (d % 64)) & 1u;
    }

    void set(long d) {
        if (d < 0 || d > n_) throw std::out_of_range("degree out of range");
        w_[static_cast<std::size_t>(d) / 64] |= std::uint64_t{1} << (d % 64);
    }

    // True when only the trivial degrees 0 and n remain.
    bool collapsed() const {
        for (long d = 1; d < n_; ++d)
            if (contains(d)) return false;
        return true;
    }

    std::vector<long> proper_degrees() const {
        std::vector<long> r;
        for (long d = 1; d < n_; ++d)
            if (contains(d)) r.push_back(d);
        return r;
    }

    std::vector<long> degrees() const {
        std::vector<long> r;
        for (long d = 0; d <= n_; ++d)
            if (contains(d)) r.push_back(d);
        return r;
    }

    friend DegreeSet intersect(const DegreeSet& a, const DegreeSet& b) {
        if (a.n_ != b.n_) throw std::invalid_argument("intersect: mismatched totals");
        DegreeSet r(a.n_);
        for (std::size_t i = 0; i < r.w_.size(); ++i) r.w_[i] = a.w_[i] & b.w_[i];
        return r;
    }

    friend bool operator==(const DegreeSet& a, const DegreeSet& b) {
        return a.n_ == b.n_ && a.w_ == b.w_;
    }
    friend bool operator!=(const DegreeSet& a, const DegreeSet& b) { return !(a == b); }

    // Subset relation (a included in b); requires equal n.
    bool subset_of(const DegreeSet& o) const {
        if (n_ != o.n_) throw std::invalid_argument("subset_of: mismatched totals");
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }

private:
    long n_;
    std::vector<std::uint64_t> w_;
};

// All achievable subset sums of the degree multiset, by shift-or DP.
inline DegreeSet subset_sums(const DegreeMultiset& d, long n) {
    if (d.total() != n) throw std::invalid_argument("subset_sums: degree sum mismatch");
    std::size_t words = static_cast<std::size_t>(n / 64) + 1;
    std::vector<std::uint64_t> bits(words, 0);
    bits[0] = 1;
    auto shift_or = [&](long k) {
        std::size_t wk = static_cast<std::size_t>(k) / 64;
        int bk = static_cast<int>(k % 64);
        for (std::size_t i = words; i-- > 0;) {
            std::uint64_t v = 0;
            if (i >= wk) {
                v = bits[i - wk] << bk;
                if (bk && i >= wk + 1) v |= bits[i - wk - 1] >> (64 - bk);
            }
            bits[i] |= v;
        }
    };
    for (const auto& [deg, count] : d.entries)
        for (long c = 0; c < count; ++c) shift_or(deg);
    DegreeSet s(n);
    for (long i = 0; i <= n; ++i)
        if ((bits[static_cast<std::size_t>(i) / 64] >> (i % 64)) & 1u) s.set(i);
    return s;
}

}  // namespace polycert
