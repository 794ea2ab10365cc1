#pragma once

// Exact dense univariate polynomial arithmetic over Z and Q, plus the
// bivariate shape needed for resultants with respect to a second variable.

#include <gmpxx.h>

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace polycert {

class IntPoly {
public:
    IntPoly() = default;

    explicit IntPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }

    static IntPoly zero() { return IntPoly(); }

    static IntPoly constant(mpz_class v) {
        IntPoly r;
        if (v != 0) r.c_.push_back(std::move(v));
        return r;
    }

    static IntPoly x() { return monomial(1, 1); }

    static IntPoly monomial(mpz_class coeff, std::size_t deg) {
        IntPoly r;
        if (coeff != 0) {
            r.c_.assign(deg + 1, mpz_class(0));
            r.c_[deg] = std::move(coeff);
        }
        return r;
    }

    // -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    const std::vector<mpz_class>& coeffs() const { return c_; }

    // Coefficient of x^i; zero beyond the stored range.
    const mpz_class& operator[](std::size_t i) const {
        static const mpz_class kZero = 0;
        return i < c_.size() ? c_[i] : kZero;
    }

    const mpz_class& lc() const {
        if (c_.empty()) throw std::invalid_argument("lc of zero polynomial");
        return c_.back();
    }

    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const IntPoly& a, const IntPoly& b) { return !(a == b); }

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
        std::vector<mpz_class> r(std::max(a.c_.size(), b.c_.size()), mpz_class(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return IntPoly(std::move(r));
    }

    friend IntPoly operator-(const IntPoly& a, const IntPoly& b) {
        std::vector<mpz_class> r(std::max(a.c_.size(), b.c_.size()), mpz_class(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
        return IntPoly(std::move(r));
    }

    friend IntPoly operator-(const IntPoly& a) {
        std::vector<mpz_class> r = a.c_;
        for (auto& v : r) v = -v;
        return IntPoly(std::move(r));
    }

    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        if (a.is_zero() || b.is_zero()) return IntPoly();
        std::vector<mpz_class> r(a.c_.size() + b.c_.size() - 1, mpz_class(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                mpz_addmul(r[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
        return IntPoly(std::move(r));
    }

    friend IntPoly operator*(const IntPoly& a, const mpz_class& s) {
        if (s == 0) return IntPoly();
        std::vector<mpz_class> r = a.c_;
        for (auto& v : r) v *= s;
        return IntPoly(std::move(r));
    }
    friend IntPoly operator*(const mpz_class& s, const IntPoly& a) { return a * s; }

    IntPoly shifted(std::size_t k) const {  // multiply by x^k
        if (is_zero()) return IntPoly();
        std::vector<mpz_class> r(c_.size() + k, mpz_class(0));
        for (std::size_t i = 0; i < c_.size(); ++i) r[i + k] = c_[i];
        return IntPoly(std::move(r));
    }

    IntPoly derivative() const {
        if (c_.size() <= 1) return IntPoly();
        std::vector<mpz_class> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = mpz_class(i) * c_[i];
        return IntPoly(std::move(r));
    }

    mpz_class eval(const mpz_class& t) const {
        mpz_class r = 0;
        for (std::size_t i = c_.size(); i-- > 0;) {
            r *= t;
            r += c_[i];
        }
        return r;
    }

    // Nonnegative gcd of all coefficients; 0 for the zero polynomial.
    mpz_class content() const {
        mpz_class g = 0;
        for (const auto& v : c_) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
            if (g == 1) break;
        }
        return g;
    }

    // Content removed, leading coefficient made positive.
    IntPoly primitive_part() const {
        if (is_zero()) return IntPoly();
        mpz_class g = content();
        if (c_.back() < 0) g = -g;
        std::vector<mpz_class> r(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i)
            mpz_divexact(r[i].get_mpz_t(), c_[i].get_mpz_t(), g.get_mpz_t());
        return IntPoly(std::move(r));
    }

    mpz_class max_abs_coeff() const {
        mpz_class m = 0;
        for (const auto& v : c_) {
            mpz_class a = abs(v);
            if (a > m) m = a;
        }
        return m;
    }

    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<mpz_class> c_;  // index i holds the coefficient of x^i
};

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b, integer arithmetic only.
inline IntPoly prem(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("prem by zero");
    long db = b.degree();
    if (a.degree() < db) return a;
    long e = a.degree() - db + 1;
    const mpz_class& lb = b.lc();
    IntPoly r = a;
    while (!r.is_zero() && r.degree() >= db) {
        mpz_class lr = r.lc();
        r = r * lb - b.shifted(static_cast<std::size_t>(r.degree() - db)) * lr;
        --e;
    }
    // top up the scaling so the result is exactly lb^(da-db+1) * a mod b
    mpz_class scale;
    mpz_pow_ui(scale.get_mpz_t(), lb.get_mpz_t(), static_cast<unsigned long>(e));
    return r * scale;
}

// Exact division in Z[x]; nullopt when b does not divide a over Z.
inline std::optional<IntPoly> try_divide_exact(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("division by zero polynomial");
    if (a.is_zero()) return IntPoly();
    if (a.degree() < b.degree()) return std::nullopt;
    std::vector<mpz_class> rem(a.coeffs());
    long db = b.degree();
    std::vector<mpz_class> q(static_cast<std::size_t>(a.degree() - db) + 1, mpz_class(0));
    const mpz_class& lb = b.lc();
    for (long i = a.degree(); i >= db;) {
        if (rem[static_cast<std::size_t>(i)] == 0) {
            --i;
            continue;
        }
        mpz_class& top = rem[static_cast<std::size_t>(i)];
        if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t())) return std::nullopt;
        mpz_class f;
        mpz_divexact(f.get_mpz_t(), top.get_mpz_t(), lb.get_mpz_t());
        long shift = i - db;
        for (long j = 0; j <= db; ++j)
            mpz_submul(rem[static_cast<std::size_t>(j + shift)].get_mpz_t(),
                       f.get_mpz_t(), b[static_cast<std::size_t>(j)].get_mpz_t());
        q[static_cast<std::size_t>(shift)] = std::move(f);
        --i;
    }
    for (const auto& v : rem)
        if (v != 0) return std::nullopt;
    return IntPoly(std::move(q));
}

inline IntPoly divide_exact(const IntPoly& a, const IntPoly& b) {
    auto q = try_divide_exact(a, b);
    if (!q) throw std::runtime_error("divide_exact: division not exact");
    return *q;
}

// Gcd in Z[x] via the primitive pseudo-remainder sequence.
// Result is primitive with positive leading coefficient times gcd of contents.
inline IntPoly gcd_z(IntPoly a, IntPoly b) {
    if (a.is_zero()) return b.is_zero() ? IntPoly() : b.primitive_part() * b.content();
    if (b.is_zero()) return a.primitive_part() * a.content();
    mpz_class cg;
    mpz_gcd(cg.get_mpz_t(), a.content().get_mpz_t(), b.content().get_mpz_t());
    a = a.primitive_part();
    b = b.primitive_part();
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        IntPoly r = prem(a, b).primitive_part();
        a = std::move(b);
        b = std::move(r);
    }
    return a * cg;
}

inline IntPoly squarefree_part(const IntPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("squarefree part of zero");
    if (f.degree() == 0) return IntPoly::constant(1);
    IntPoly g = gcd_z(f, f.derivative());
    return divide_exact(f * g.lc(), g).primitive_part();
}

inline bool is_squarefree_z(const IntPoly& f) {
    return f.degree() <= 0 || gcd_z(f, f.derivative()).degree() == 0;
}

// ---------------------------------------------------------------------------
// Rational polynomials in common-denominator form.

class RatPoly {
public:
    RatPoly() : den_(1) {}
    RatPoly(IntPoly num, mpz_class den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_ == 0) throw std::invalid_argument("zero denominator");
        normalize();
    }
    explicit RatPoly(IntPoly num) : num_(std::move(num)), den_(1) {}

    static RatPoly zero() { return RatPoly(); }
    static RatPoly constant(const mpq_class& v) {
        return RatPoly(IntPoly::constant(v.get_num()), v.get_den());
    }
    static RatPoly x() { return RatPoly(IntPoly::x()); }

    const IntPoly& num() const { return num_; }
    const mpz_class& den() const { return den_; }
    long degree() const { return num_.degree(); }
    bool is_zero() const { return num_.is_zero(); }

    mpq_class coeff(std::size_t i) const {
        mpq_class q(num_[i], den_);
        q.canonicalize();
        return q;
    }

    friend bool operator==(const RatPoly& a, const RatPoly& b) {
        return a.den_ == b.den_ && a.num_ == b.num_;
    }
    friend bool operator!=(const RatPoly& a, const RatPoly& b) { return !(a == b); }

    friend RatPoly operator+(const RatPoly& a, const RatPoly& b) {
        return RatPoly(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatPoly operator-(const RatPoly& a, const RatPoly& b) {
        return RatPoly(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatPoly operator-(const RatPoly& a) { return RatPoly(-a.num_, a.den_); }
    friend RatPoly operator*(const RatPoly& a, const RatPoly& b) {
        return RatPoly(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatPoly operator*(const RatPoly& a, const mpq_class& s) {
        return RatPoly(a.num_ * s.get_num(), a.den_ * s.get_den());
    }

    mpq_class eval(const mpq_class& t) const {
        mpq_class r = 0;
        for (long i = num_.degree(); i >= 0; --i) {
            r *= t;
            r += mpq_class(num_[static_cast<std::size_t>(i)]);
        }
        r /= mpq_class(den_);
        return r;
    }

    RatPoly monic() const {
        if (is_zero()) throw std::invalid_argument("monic of zero polynomial");
        // (num/den) / (lc/den) = num/lc
        const mpz_class& l = num_.lc();
        return RatPoly(num_ * (l < 0 ? mpz_class(-1) : mpz_class(1)), abs(l));
    }

    const mpz_class& lc_num() const { return num_.lc(); }

private:
    void normalize() {
        if (num_.is_zero()) {
            den_ = 1;
            return;
        }
        if (den_ < 0) {
            den_ = -den_;
            num_ = -num_;
        }
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), num_.content().get_mpz_t(), den_.get_mpz_t());
        if (g > 1) {
            std::vector<mpz_class> c(num_.coeffs());
            for (auto& v : c) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
            num_ = IntPoly(std::move(c));
            mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
        }
    }

    IntPoly num_;
    mpz_class den_;  // positive; coprime to content(num)
};

// Remainder of a modulo the integer polynomial f, over Q.
inline RatPoly rat_rem(const RatPoly& a, const IntPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("reduction modulo zero");
    if (a.degree() < f.degree()) return a;
    long e = a.degree() - f.degree() + 1;
    mpz_class scale;
    mpz_pow_ui(scale.get_mpz_t(), f.lc().get_mpz_t(), static_cast<unsigned long>(e));
    return RatPoly(prem(a.num(), f), a.den() * scale);
}

// Monic gcd over Q; errors when both inputs are zero.
inline RatPoly poly_gcd_rational(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() && b.is_zero())
        throw std::invalid_argument("gcd of two zero polynomials");
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    IntPoly g = gcd_z(a.num().primitive_part(), b.num().primitive_part());
    if (g.degree() == 0) return RatPoly(IntPoly::constant(1));
    return RatPoly(g).monic();
}

// m(h(x)) reduced modulo f over Q, Horner in the quotient ring.
inline RatPoly compose_mod(const RatPoly& m, const RatPoly& h, const IntPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("compose_mod: zero modulus");
    if (!h.is_zero() && h.degree() >= f.degree())
        throw std::invalid_argument("compose_mod: deg(h) must be below deg(f)");
    RatPoly r;
    for (long i = m.degree(); i >= 0; --i) {
        r = rat_rem(r * h, f) + RatPoly(IntPoly::constant(m.num()[static_cast<std::size_t>(i)]), m.den());
    }
    return r;
}

// ---------------------------------------------------------------------------
// Bivariate polynomials in u and x: coefficient of x^i is a RatPoly in u.

class BiPoly {
public:
    BiPoly() = default;
    explicit BiPoly(std::vector<RatPoly> x_coeffs) : xc_(std::move(x_coeffs)) { trim(); }

    long degree_x() const { return static_cast<long>(xc_.size()) - 1; }
    long degree_u() const {
        long d = -1;
        for (const auto& c : xc_) d = std::max(d, c.degree());
        return d;
    }
    bool is_zero() const { return xc_.empty(); }

    const std::vector<RatPoly>& x_coeffs() const { return xc_; }
    const RatPoly& x_coeff(std::size_t i) const {
        static const RatPoly kZero;
        return i < xc_.size() ? xc_[i] : kZero;
    }

    friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.xc_ == b.xc_; }
    friend bool operator!=(const BiPoly& a, const BiPoly& b) { return !(a == b); }

    static BiPoly constant(RatPoly c_in_u) { return BiPoly({std::move(c_in_u)}); }
    static BiPoly var_x() { return BiPoly({RatPoly(), RatPoly(IntPoly::constant(1))}); }
    static BiPoly var_u() { return BiPoly({RatPoly(IntPoly::x())}); }

    friend BiPoly operator+(const BiPoly& a, const BiPoly& b) {
        std::vector<RatPoly> r(std::max(a.xc_.size(), b.xc_.size()));
        for (std::size_t i = 0; i < a.xc_.size(); ++i) r[i] = r[i] + a.xc_[i];
        for (std::size_t i = 0; i < b.xc_.size(); ++i) r[i] = r[i] + b.xc_[i];
        return BiPoly(std::move(r));
    }
    friend BiPoly operator-(const BiPoly& a, const BiPoly& b) {
        std::vector<RatPoly> r(std::max(a.xc_.size(), b.xc_.size()));
        for (std::size_t i = 0; i < a.xc_.size(); ++i) r[i] = r[i] + a.xc_[i];
        for (std::size_t i = 0; i < b.xc_.size(); ++i) r[i] = r[i] - b.xc_[i];
        return BiPoly(std::move(r));
    }
    friend BiPoly operator-(const BiPoly& a) {
        std::vector<RatPoly> r(a.xc_.size());
        for (std::size_t i = 0; i < a.xc_.size(); ++i) r[i] = -a.xc_[i];
        return BiPoly(std::move(r));
    }
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
        if (a.is_zero() || b.is_zero()) return BiPoly();
        std::vector<RatPoly> r(a.xc_.size() + b.xc_.size() - 1);
        for (std::size_t i = 0; i < a.xc_.size(); ++i)
            for (std::size_t j = 0; j < b.xc_.size(); ++j)
                r[i + j] = r[i + j] + a.xc_[i] * b.xc_[j];
        return BiPoly(std::move(r));
    }

    BiPoly pow(unsigned long e) const {
        BiPoly r = constant(RatPoly(IntPoly::constant(1)));
        for (unsigned long i = 0; i < e; ++i) r = r * *this;
        return r;
    }

private:
    void trim() {
        while (!xc_.empty() && xc_.back().is_zero()) xc_.pop_back();
    }
    std::vector<RatPoly> xc_;
};

// ---------------------------------------------------------------------------
// Subresultant pseudo-remainder resultants, generic over the coefficient ring.

namespace ring {

template <class R>
struct Traits;

template <>
struct Traits<mpz_class> {
    static mpz_class zero() { return 0; }
    static mpz_class one() { return 1; }
    static bool is_zero(const mpz_class& a) { return a == 0; }
    static mpz_class mul(const mpz_class& a, const mpz_class& b) { return a * b; }
    static mpz_class sub(const mpz_class& a, const mpz_class& b) { return a - b; }
    static mpz_class neg(const mpz_class& a) { return -a; }
    static mpz_class exact_div(const mpz_class& a, const mpz_class& b) {
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return q;
    }
};

template <>
struct Traits<IntPoly> {
    static IntPoly zero() { return IntPoly(); }
    static IntPoly one() { return IntPoly::constant(1); }
    static bool is_zero(const IntPoly& a) { return a.is_zero(); }
    static IntPoly mul(const IntPoly& a, const IntPoly& b) { return a * b; }
    static IntPoly sub(const IntPoly& a, const IntPoly& b) { return a - b; }
    static IntPoly neg(const IntPoly& a) { return -a; }
    static IntPoly exact_div(const IntPoly& a, const IntPoly& b) {
        return polycert::divide_exact(a, b);
    }
};

template <class R>
void trim(std::vector<R>& v) {
    while (!v.empty() && Traits<R>::is_zero(v.back())) v.pop_back();
}

template <class R>
long deg(const std::vector<R>& v) {
    return static_cast<long>(v.size()) - 1;
}

template <class R>
R pow(const R& b, long e) {
    R r = Traits<R>::one();
    for (long i = 0; i < e; ++i) r = Traits<R>::mul(r, b);
    return r;
}

// lc(b)^(deg a - deg b + 1) * a mod b
template <class R>
std::vector<R> prem(std::vector<R> a, const std::vector<R>& b) {
    using T = Traits<R>;
    long db = deg(b);
    long e = deg(a) - db + 1;
    const R& lb = b.back();
    while (!a.empty() && deg(a) >= db) {
        R la = a.back();
        long shift = deg(a) - db;
        std::vector<R> r(a.size() - 1, T::zero());
        for (long i = 0; i + 1 < static_cast<long>(a.size()); ++i) {
            R v = T::mul(lb, a[static_cast<std::size_t>(i)]);
            if (i >= shift && i - shift < db)
                v = T::sub(v, T::mul(la, b[static_cast<std::size_t>(i - shift)]));
            r[static_cast<std::size_t>(i)] = std::move(v);
        }
        a = std::move(r);
        trim(a);
        --e;
    }
    if (e > 0) {
        R s = pow(lb, e);
        for (auto& v : a) v = T::mul(v, s);
    }
    return a;
}

// Resultant via the subresultant PRS (Cohen, Alg. 3.3.7, contents kept in place).
template <class R>
R resultant(std::vector<R> a, std::vector<R> b) {
    using T = Traits<R>;
    trim(a);
    trim(b);
    if (a.empty() || b.empty()) return T::zero();
    int sign = 1;
    if (deg(a) < deg(b)) {
        if ((deg(a) & 1) && (deg(b) & 1)) sign = -sign;
        std::swap(a, b);
    }
    if (deg(b) == 0) {
        R r = pow(b[0], deg(a));
        return sign == 1 ? r : T::neg(r);
    }
    R g = T::one(), h = T::one();
    while (true) {
        long da = deg(a), db = deg(b);
        long delta = da - db;
        if ((da & 1) && (db & 1)) sign = -sign;
        std::vector<R> r = prem(a, b);
        a = std::move(b);
        R divisor = T::mul(g, pow(h, delta));
        b.clear();
        b.reserve(r.size());
        for (auto& v : r) b.push_back(T::exact_div(v, divisor));
        trim(b);
        g = a.back();
        if (delta > 0) h = T::exact_div(pow(g, delta), pow(h, delta - 1));
        if (b.empty()) return T::zero();
        if (deg(b) == 0) {
            long dA = deg(a);
            R res = T::exact_div(pow(b[0], dA), pow(h, dA - 1));
            return sign == 1 ? res : T::neg(res);
        }
    }
}

}  // namespace ring

inline mpz_class int_resultant(const IntPoly& a, const IntPoly& b) {
    return ring::resultant<mpz_class>(a.coeffs(), b.coeffs());
}

namespace detail {

// Denominator-cleared u-major form: D * Q = sum_j u_coeffs[j](x) * u^j.
struct UMajor {
    std::vector<IntPoly> u_coeffs;
    mpz_class den;
};

inline UMajor to_u_major(const BiPoly& q) {
    UMajor r;
    r.den = 1;
    for (const auto& c : q.x_coeffs()) {
        mpz_class l;
        mpz_lcm(l.get_mpz_t(), r.den.get_mpz_t(), c.den().get_mpz_t());
        r.den = l;
    }
    long du = q.degree_u();
    r.u_coeffs.assign(static_cast<std::size_t>(std::max(du, 0L)) + 1, IntPoly());
    long dx = q.degree_x();
    for (long j = 0; j <= std::max(du, 0L); ++j) {
        std::vector<mpz_class> cj(static_cast<std::size_t>(dx) + 1, mpz_class(0));
        for (long i = 0; i <= dx; ++i) {
            const RatPoly& ci = q.x_coeff(static_cast<std::size_t>(i));
            mpz_class scale;
            mpz_divexact(scale.get_mpz_t(), r.den.get_mpz_t(), ci.den().get_mpz_t());
            cj[static_cast<std::size_t>(i)] = ci.num()[static_cast<std::size_t>(j)] * scale;
        }
        r.u_coeffs[static_cast<std::size_t>(j)] = IntPoly(std::move(cj));
    }
    while (!r.u_coeffs.empty() && r.u_coeffs.back().is_zero()) r.u_coeffs.pop_back();
    return r;
}

}  // namespace detail

// Primitive integer polynomial proportional to Res_u(P(u), D*Q(u,x)), leading
// coefficient normalized positive.  Small instances run the subresultant PRS
// over Z[x] directly; larger ones evaluate x and interpolate, which avoids the
// coefficient blowup of pseudo-remainders with polynomial entries.
inline IntPoly resultant_wrt_u(const IntPoly& p, const BiPoly& q) {
    if (p.is_zero()) throw std::invalid_argument("resultant_wrt_u: zero P");
    if (q.degree_x() <= 0 && q.degree_u() <= 0)
        throw std::invalid_argument("resultant_wrt_u: Q constant in both u and x");
    detail::UMajor um = detail::to_u_major(q);
    long du = static_cast<long>(um.u_coeffs.size()) - 1;
    long dx = q.degree_x();
    long bound = p.degree() * std::max(dx, 0L);

    if (du <= 0) {
        // Q does not involve u: Res = Q(x)^deg(P) up to the cleared denominator.
        IntPoly r = ring::pow<IntPoly>(um.u_coeffs.empty() ? IntPoly() : um.u_coeffs[0],
                                       p.degree());
        if (r.is_zero()) return IntPoly();
        return r.primitive_part();
    }

    IntPoly res;
    if (bound <= 48) {
        std::vector<IntPoly> a;
        a.reserve(p.coeffs().size());
        for (const auto& v : p.coeffs()) a.push_back(IntPoly::constant(v));
        res = ring::resultant<IntPoly>(a, um.u_coeffs);
    } else {
        // Evaluate at integer points where the leading u-coefficient survives,
        // then Newton-interpolate.
        const IntPoly& lead = um.u_coeffs.back();
        std::vector<mpz_class> xs;
        std::vector<mpz_class> ys;
        mpz_class t = 0;
        long needed = bound + 1;
        long step = 0;
        while (static_cast<long>(xs.size()) < needed) {
            mpz_class x0 = (step % 2 == 0) ? mpz_class(step / 2) : mpz_class(-(step / 2 + 1));
            ++step;
            if (lead.eval(x0) == 0) continue;
            std::vector<mpz_class> bv(um.u_coeffs.size());
            for (std::size_t j = 0; j < um.u_coeffs.size(); ++j)
                bv[j] = um.u_coeffs[j].eval(x0);
            ys.push_back(ring::resultant<mpz_class>(p.coeffs(), bv));
            xs.push_back(std::move(x0));
        }
        // Newton divided differences over Q.
        std::size_t m = xs.size();
        std::vector<mpq_class> dd(m);
        for (std::size_t i = 0; i < m; ++i) dd[i] = mpq_class(ys[i]);
        for (std::size_t level = 1; level < m; ++level)
            for (std::size_t i = m; i-- > level;) {
                mpq_class denom(xs[i] - xs[i - level]);
                dd[i] = (dd[i] - dd[i - 1]) / denom;
            }
        // Expand the Newton form into monomial coefficients.
        std::vector<mpq_class> coeffs;
        for (std::size_t i = m; i-- > 0;) {
            // coeffs = coeffs * (x - xs[i]) + dd[i]
            coeffs.insert(coeffs.begin(), mpq_class(0));
            mpq_class shift(xs[i]);
            for (std::size_t j = 0; j + 1 < coeffs.size(); ++j)
                coeffs[j] -= shift * coeffs[j + 1];
            coeffs[0] += dd[i];
        }
        mpz_class denlcm = 1;
        for (auto& v : coeffs) {
            v.canonicalize();
            mpz_class l;
            mpz_lcm(l.get_mpz_t(), denlcm.get_mpz_t(), v.get_den().get_mpz_t());
            denlcm = l;
        }
        std::vector<mpz_class> ic(coeffs.size());
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            ic[i] = coeffs[i].get_num() * (denlcm / coeffs[i].get_den());
        res = IntPoly(std::move(ic));
    }
    if (res.is_zero()) return res;
    return res.primitive_part();
}

}  // namespace polycert
