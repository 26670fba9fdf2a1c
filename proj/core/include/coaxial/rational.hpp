#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace coaxial {

/// Exact rational scalar backed by GMP. Always reduced, denominator > 0,
/// canonical zero is 0/1.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(static_cast<signed long>(n)) {}
    Rational(int n) : v_(n) {}
    Rational(long num, long den);
    explicit Rational(mpq_class q) : v_(std::move(q)) { v_.canonicalize(); }

    /// Parses "p/q" or "p" (decimal, optional leading '-').
    static Rational parse(const std::string& text);

    const mpz_class& num() const { return v_.get_num(); }
    const mpz_class& den() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    Rational abs() const { return sign() < 0 ? -*this : *this; }
    Rational inv() const;
    Rational pow(long e) const;

    mpz_class floor() const;
    /// Nearest integer; exact ties round down.
    mpz_class round_nearest() const;
    /// Distance to the nearest integer, exact, in [0, 1/2].
    Rational frac_dist() const;

    double to_double() const { return v_.get_d(); }
    std::string str() const { return v_.get_str(); }

private:
    mpq_class v_;
};

/// gcd of |numerators| / lcm of denominators; the largest r with v = r * (integer
/// vector). Zero entries are ignored; all-zero input is an error.
Rational rational_content(const std::vector<Rational>& v);

}  // namespace coaxial
