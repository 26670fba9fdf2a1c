#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "coaxial/multipoly.hpp"
#include "coaxial/rational.hpp"

namespace coaxial {

using Complex = std::complex<double>;

/// Roots of a univariate polynomial, with multiplicities summing to its degree.
/// Entries are sorted by (re, im) and pairwise separated by more than the
/// clustering radius used to produce them.
struct RootMultiset {
    struct Entry {
        Complex root;
        int multiplicity;
    };
    std::vector<Entry> entries;

    int total() const {
        int s = 0;
        for (const auto& e : entries) s += e.multiplicity;
        return s;
    }
};

struct RootFindingError : std::runtime_error {
    std::vector<Complex> best_iterates;
    explicit RootFindingError(std::string msg, std::vector<Complex> best)
        : std::runtime_error(std::move(msg)), best_iterates(std::move(best)) {}
};

struct RootOptions {
    double residual_tol = 1e-10;  // relative to the coefficient magnitude scale
    double cluster_radius = 1e-8;
    int max_iterations = 500;
};

/// Aberth-Ehrlich simultaneous iteration on complex coefficients (ascending
/// order, leading coefficient nonzero, degree >= 1). Nearby roots are merged
/// by cluster_radius with summed multiplicity.
RootMultiset find_roots(const std::vector<Complex>& coeffs, const RootOptions& opt = {});

/// Exact path: square-free decomposition over Q first (gcd with the
/// derivative), so multiplicities are exact; each square-free factor is then
/// solved numerically.
RootMultiset find_roots(const std::vector<Rational>& coeffs, const RootOptions& opt = {});

/// Univariate MultiPoly convenience wrapper (throws on multivariate input).
RootMultiset find_roots(const MultiPoly& p, const RootOptions& opt = {});

/// Dense univariate helpers over Q, coefficients ascending.
namespace qpoly {
std::vector<Rational> derivative(const std::vector<Rational>& p);
std::vector<Rational> trim(std::vector<Rational> p);
int degree(const std::vector<Rational>& p);  // -1 for zero
/// Quotient and remainder; divisor must be nonzero.
std::pair<std::vector<Rational>, std::vector<Rational>> divmod(const std::vector<Rational>& a,
                                                               const std::vector<Rational>& b);
/// Monic gcd.
std::vector<Rational> gcd(std::vector<Rational> a, std::vector<Rational> b);
/// Yun square-free decomposition: returns factors f_i (monic) with
/// multiplicity i = position + 1, so p = lc * prod f_i^(i).
std::vector<std::vector<Rational>> squarefree(const std::vector<Rational>& p);
}  // namespace qpoly

}  // namespace coaxial
