#include "coaxial/rational.hpp"

namespace coaxial {

Rational::Rational(long num, long den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational Rational::parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("Rational::parse: empty string");
    mpq_class q;
    if (q.set_str(text, 10) != 0)
        throw std::invalid_argument("Rational::parse: bad literal '" + text + "'");
    if (sgn(q.get_den()) == 0)
        throw std::invalid_argument("Rational::parse: zero denominator in '" + text + "'");
    q.canonicalize();
    return Rational(std::move(q));
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::invalid_argument("Rational: division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::inv() const {
    if (is_zero()) throw std::invalid_argument("Rational: inverse of zero");
    return Rational(mpq_class(1) / v_);
}

Rational Rational::pow(long e) const {
    if (e == 0) return Rational(1);
    Rational base = e < 0 ? inv() : *this;
    unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
    Rational acc(1);
    while (n > 0) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

mpz_class Rational::floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
    return q;
}

mpz_class Rational::round_nearest() const {
    mpz_class f = floor();
    Rational frac = *this - Rational(mpq_class(f));
    // frac in [0,1); ties (frac == 1/2) round down
    if (frac > Rational(1, 2)) return f + 1;
    return f;
}

Rational Rational::frac_dist() const {
    mpz_class f = floor();
    Rational frac = *this - Rational(mpq_class(f));
    Rational up = Rational(1) - frac;
    return frac <= up ? frac : up;
}

Rational rational_content(const std::vector<Rational>& v) {
    mpz_class g = 0, l = 1;
    for (const Rational& r : v) {
        if (r.is_zero()) continue;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), r.num().get_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), r.den().get_mpz_t());
    }
    if (g == 0) throw std::invalid_argument("rational_content: all entries zero");
    mpq_class q(g, l);
    q.canonicalize();
    return Rational(std::move(q));
}

}  // namespace coaxial
