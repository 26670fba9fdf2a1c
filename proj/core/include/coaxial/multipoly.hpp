#pragma once

#include <complex>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coaxial/rational.hpp"

namespace coaxial {

/// Sparse multivariate polynomial with Rational coefficients over named
/// variables. Variables are kept sorted by name and unused ones are dropped,
/// so structural equality is semantic equality. No zero coefficients are
/// stored; the zero polynomial has no terms and no variables.
class MultiPoly {
public:
    using Exponents = std::vector<int>;
    using TermMap = std::map<Exponents, Rational>;  // lex order on exponent vectors

    MultiPoly() = default;
    explicit MultiPoly(Rational c);
    MultiPoly(long c) : MultiPoly(Rational(c)) {}

    static MultiPoly variable(const std::string& name);
    static MultiPoly constant(Rational c) { return MultiPoly(std::move(c)); }

    const std::vector<std::string>& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return vars_.empty(); }
    /// Value of a constant polynomial (zero polynomial gives 0).
    Rational constant_value() const;

    int total_degree() const;  // -1 for the zero polynomial
    int degree_in(const std::string& var) const;
    bool has_var(const std::string& var) const;

    MultiPoly operator-() const;
    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
    MultiPoly operator*(const Rational& c) const;
    MultiPoly operator/(const Rational& c) const;
    MultiPoly pow(int e) const;

    bool operator==(const MultiPoly& o) const = default;

    /// Coefficient of var^k as a polynomial in the remaining variables.
    MultiPoly coeff_of(const std::string& var, int k) const;
    /// All coefficients in var, ascending from degree 0.
    std::vector<MultiPoly> coeffs_in(const std::string& var) const;

    MultiPoly derivative(const std::string& var) const;
    MultiPoly substitute(const std::string& var, const MultiPoly& value) const;

    Rational eval(const std::map<std::string, Rational>& point) const;
    std::complex<double> eval(const std::map<std::string, std::complex<double>>& point) const;

    /// Exact quotient, or nullopt if the divisor does not divide exactly.
    std::optional<MultiPoly> try_divide_exact(const MultiPoly& divisor) const;
    MultiPoly divide_exact(const MultiPoly& divisor) const;

    /// gcd of all coefficients, carrying the sign of the lex-leading term.
    Rational content() const;

    /// Canonical rendering: terms sorted by descending (total degree, lex).
    std::string str() const;

private:
    std::vector<std::string> vars_;
    TermMap terms_;

    void normalize();
    friend MultiPoly align_mapped(const MultiPoly& p, const std::vector<std::string>& vars);
};

enum class PolyOp { add, sub, mul };
MultiPoly poly_arith(const MultiPoly& p, const MultiPoly& q, PolyOp op);

/// Sylvester resultant of p and q eliminating var, computed exactly by
/// fraction-free (Bareiss) elimination over the polynomial ring.
/// Both inputs must have positive degree in var.
MultiPoly resultant_in(const MultiPoly& p, const MultiPoly& q, const std::string& var);

/// Characteristic polynomial det(lambda*I - M) of a tridiagonal matrix via the
/// three-term recurrence p_j = (lambda - diag_j) p_{j-1} - super_{j-1} sub_j p_{j-2}.
/// diag has n entries, sub and super have n-1.
MultiPoly tridiag_charpoly(std::span<const MultiPoly> sub, std::span<const MultiPoly> diag,
                           std::span<const MultiPoly> super,
                           const std::string& lambda = "lambda");

/// Dense univariate extraction: coefficients ascending in the single variable
/// of p (constants allowed). Throws if p has more than one variable.
std::vector<Rational> univariate_coeffs(const MultiPoly& p);

}  // namespace coaxial
