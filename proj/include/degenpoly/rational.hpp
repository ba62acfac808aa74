#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace degenpoly {

/// Thrown on arithmetic domain errors (division by zero, 0 raised to a
/// negative power, malformed rational literals). Library code reports
/// every such condition through this exception and never aborts.
class arithmetic_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Arbitrary-precision rational number, always stored canonically reduced:
/// denominator > 0, gcd(|num|, den) = 1, zero is 0/1. Backed by GMP's mpq.
///
/// Values are immutable in spirit: all operations return new values and the
/// class is safe to share across threads for reading.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(int n) : v_(n) {}
    Rational(long n) : v_(static_cast<signed long>(n)) {}
    explicit Rational(const mpz_class& n) : v_(n) {}

    Rational(long num, long den) : Rational(mpz_class(num), mpz_class(den)) {}

    Rational(const mpz_class& num, const mpz_class& den) {
        if (den == 0) {
            throw arithmetic_error("rational with zero denominator");
        }
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }

    /// Parses the canonical serialization "p/q" (q > 0) or "p".
    static Rational from_string(std::string_view s);

    const mpz_class& num() const { return v_.get_num(); }
    const mpz_class& den() const { return v_.get_den(); }

    bool is_zero() const { return v_ == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) {
            throw arithmetic_error("rational division by zero");
        }
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    /// Exact integer power; e may be negative (reciprocal), 0^e with e < 0
    /// is a domain error.
    Rational pow(long e) const;

    friend bool operator==(const Rational& a, const Rational& b) {
        return mpq_equal(a.v_.get_mpq_t(), b.v_.get_mpq_t()) != 0;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) < 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) <= 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) > 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) >= 0; }

    /// Canonical serialization: "p/q" with q > 0 and gcd 1, or "p" when q = 1.
    std::string str() const { return v_.get_str(); }

private:
    explicit Rational(mpq_class q) : v_(std::move(q)) {}

    mpq_class v_; // canonical at all times
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// n! as an exact integer.
mpz_class factorial_z(unsigned n);

/// C(n, k) as an exact integer; 0 when k > n.
mpz_class binomial_z(unsigned n, unsigned k);

/// C(n, k) as a Rational.
Rational binomial(unsigned n, unsigned k);

} // namespace degenpoly
