#pragma once

// Exact arithmetic in the localization Z_(p): rationals whose denominator is
// prime to a fixed odd prime p.

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

namespace bpu {

struct DivisionByZero : std::domain_error {
    DivisionByZero() : std::domain_error("division by zero") {}
};

struct NotPLocal : std::domain_error {
    explicit NotPLocal(const std::string& what) : std::domain_error(what) {}
};

struct InvalidPrime : std::invalid_argument {
    explicit InvalidPrime(const std::string& what) : std::invalid_argument(what) {}
};

inline bool is_prime(long v) {
    if (v < 2) return false;
    for (long d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

/// The prime p, shared by every scalar of a computation.
class Prime {
public:
    explicit Prime(long value) : value_(value) {
        if (!is_prime(value)) throw InvalidPrime("p must be an odd prime");
        if (value == 2) throw InvalidPrime("p must be an odd prime");
    }
    long value() const { return value_; }
    operator long() const { return value_; }

private:
    long value_;
};

/// Element of Z_(p).  The prime is not stored; operations that can leave the
/// ring (division, parsing fractions) take it as an argument.
class PLocal {
public:
    PLocal() = default;
    PLocal(long v) : q_(v) {}
    PLocal(const mpz_class& v) : q_(v) {}

    /// num/den, canonicalized.  Throws NotPLocal if p divides the reduced
    /// denominator and DivisionByZero if den == 0.
    static PLocal fraction(const mpz_class& num, const mpz_class& den, const Prime& p) {
        if (den == 0) throw DivisionByZero();
        mpq_class q(num, den);
        q.canonicalize();
        PLocal r;
        r.q_ = q;
        r.check(p);
        return r;
    }

    const mpq_class& value() const { return q_; }
    mpz_class numerator() const { return q_.get_num(); }
    mpz_class denominator() const { return q_.get_den(); }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_one() const { return q_ == 1; }

    PLocal operator-() const {
        PLocal r;
        r.q_ = -q_;
        return r;
    }
    PLocal& operator+=(const PLocal& o) {
        q_ += o.q_;
        return *this;
    }
    PLocal& operator-=(const PLocal& o) {
        q_ -= o.q_;
        return *this;
    }
    PLocal& operator*=(const PLocal& o) {
        q_ *= o.q_;
        return *this;
    }
    friend PLocal operator+(PLocal a, const PLocal& b) { return a += b; }
    friend PLocal operator-(PLocal a, const PLocal& b) { return a -= b; }
    friend PLocal operator*(PLocal a, const PLocal& b) { return a *= b; }
    friend bool operator==(const PLocal& a, const PLocal& b) { return a.q_ == b.q_; }
    friend bool operator!=(const PLocal& a, const PLocal& b) { return a.q_ != b.q_; }

    /// "num/den", the form used in every serialized output.
    std::string str() const { return q_.get_num().get_str() + "/" + q_.get_den().get_str(); }

    /// Human form: "3", "-1/2".
    std::string pretty() const { return q_.get_str(); }

    void check(const Prime& p) const {
        if (mpz_divisible_ui_p(q_.get_den_mpz_t(), static_cast<unsigned long>(p.value())))
            throw NotPLocal(q_.get_str() + " is not in Z_(" + std::to_string(p.value()) + ")");
    }

private:
    mpq_class q_;
};

inline constexpr int kInfiniteValuation = std::numeric_limits<int>::max();

/// Largest k with p^k | a in Z_(p); kInfiniteValuation for zero.
inline int valuation(const PLocal& a, const Prime& p) {
    if (a.is_zero()) return kInfiniteValuation;
    mpz_class num = abs(a.numerator());
    mpz_class pz(p.value());
    mpz_class rest;
    auto k = mpz_remove(rest.get_mpz_t(), num.get_mpz_t(), pz.get_mpz_t());
    return static_cast<int>(k);
}

inline bool is_unit(const PLocal& a, const Prime& p) { return valuation(a, p) == 0; }

/// a / b in Z_(p).
inline PLocal divide(const PLocal& a, const PLocal& b, const Prime& p) {
    if (b.is_zero()) throw DivisionByZero();
    mpq_class q = a.value() / b.value();
    return PLocal::fraction(q.get_num(), q.get_den(), p);
}

enum class ArithOp { Add, Sub, Mul, Div };

inline PLocal scalar_arith(const PLocal& a, const PLocal& b, ArithOp op, const Prime& p) {
    switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
    case ArithOp::Div: return divide(a, b, p);
    }
    throw std::logic_error("bad op");
}

inline mpz_class ipow(long base, int e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(e));
    return r;
}

inline PLocal ppow(const Prime& p, int e) { return PLocal(ipow(p.value(), e)); }

/// Canonical representative of a modulo `modulus` in [0, modulus).
inline PLocal reduce_mod(const PLocal& a, const mpz_class& modulus) {
    mpz_class den_inv;
    mpz_class den = a.denominator();
    if (mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), modulus.get_mpz_t()) == 0)
        throw NotPLocal("denominator not invertible modulo " + modulus.get_str());
    mpz_class r = (a.numerator() * den_inv) % modulus;
    if (r < 0) r += modulus;
    return PLocal(r);
}

inline PLocal reduce_mod_p(const PLocal& a, const Prime& p) { return reduce_mod(a, mpz_class(p.value())); }

/// Binomial coefficient C(a, b); zero outside 0 <= b <= a.
inline mpz_class binomial(long a, long b) {
    if (b < 0 || a < 0 || b > a) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
    return r;
}

/// p-adic valuation of a positive integer.
inline int int_valuation(long v, long p) {
    int k = 0;
    while (v != 0 && v % p == 0) {
        v /= p;
        ++k;
    }
    return k;
}

} // namespace bpu
