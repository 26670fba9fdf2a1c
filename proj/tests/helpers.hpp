#pragma once

// Shared fixtures and independent oracles used across the test suite. The
// oracles deliberately avoid the library's own algorithms: determinants by
// cofactor expansion, products by naive convolution, lattice distances by box
// enumeration.

#include <complex>
#include <map>
#include <random>
#include <vector>

#include <coaxial/angle_gate.hpp>
#include <coaxial/heun.hpp>
#include <coaxial/multipoly.hpp>
#include <coaxial/rational.hpp>

namespace testutil {

using coaxial::Complex;
using coaxial::MultiPoly;
using coaxial::Rational;

inline bool close(const Complex& a, const Complex& b, double tol = 1e-9) {
    return std::abs(a - b) <= tol;
}

/// Random rational with denominator in [1, maxDen] and numerator magnitude
/// bounded by maxNum.
inline Rational random_rational(std::mt19937_64& rng, long maxNum, long maxDen) {
    std::uniform_int_distribution<long> num(-maxNum, maxNum);
    std::uniform_int_distribution<long> den(1, maxDen);
    return Rational(num(rng), den(rng));
}

/// Random positive non-integer rational in (0, cap).
inline Rational random_angle(std::mt19937_64& rng, long cap = 4, long maxDen = 12) {
    while (true) {
        std::uniform_int_distribution<long> den(2, maxDen);
        long d = den(rng);
        std::uniform_int_distribution<long> num(1, cap * d - 1);
        Rational r(num(rng), d);
        if (!r.is_integer() && r.sign() > 0) return r;
    }
}

/// Heun configuration with prescribed theta and k: draws theta0, theta1 and
/// signs, then sets thetaInf = k - e0 theta0 - e1 theta1, retrying until it is
/// positive and non-integer.
inline coaxial::HeunConfig random_heun(std::mt19937_64& rng, long theta, long k) {
    // large negative k needs eps = -1 and angles exceeding |k|
    long cap = std::max(4L, std::abs(k) + 2);
    for (int attempt = 0; attempt < 2000; ++attempt) {
        int e0 = (rng() & 1) ? 1 : -1;
        int e1 = (rng() & 1) ? 1 : -1;
        Rational th0 = random_angle(rng, cap);
        Rational th1 = random_angle(rng, cap);
        Rational thInf = Rational(k) - th0 * Rational(e0) - th1 * Rational(e1);
        if (thInf.sign() <= 0 || thInf.is_integer()) continue;
        return coaxial::HeunConfig::make(th0, th1, thInf, e0, e1, theta);
    }
    throw std::runtime_error("random_heun: could not build a configuration");
}

/// Determinant by cofactor expansion along the first row.
inline MultiPoly cofactor_det(const std::vector<std::vector<MultiPoly>>& m) {
    const std::size_t n = m.size();
    if (n == 1) return m[0][0];
    MultiPoly acc;
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        std::vector<std::vector<MultiPoly>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<MultiPoly> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(m[r][c]);
            minor.push_back(std::move(row));
        }
        MultiPoly term = m[0][j] * cofactor_det(minor);
        acc += (j % 2 == 0) ? term : -term;
    }
    return acc;
}

/// Product of two univariate coefficient lists by naive convolution.
inline std::vector<Rational> convolve(const std::vector<Rational>& a,
                                      const std::vector<Rational>& b) {
    std::vector<Rational> out(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

/// l1 distance to the odd lattice by explicit enumeration of the integer box
/// [floor(v_i)-1, ceil(v_i)+1] around the vector.
inline Rational brute_force_odd_distance(const std::vector<Rational>& v) {
    std::vector<std::vector<long>> candidates;
    for (const Rational& x : v) {
        long lo = static_cast<long>(x.floor().get_si()) - 1;
        std::vector<long> c;
        for (long z = lo; z <= lo + 3; ++z) c.push_back(z);
        candidates.push_back(std::move(c));
    }
    Rational best(-1);
    std::vector<std::size_t> idx(v.size(), 0);
    while (true) {
        long sum = 0;
        for (std::size_t i = 0; i < v.size(); ++i) sum += candidates[i][idx[i]];
        if (sum % 2 != 0) {
            Rational d(0);
            for (std::size_t i = 0; i < v.size(); ++i)
                d += (v[i] - Rational(candidates[i][idx[i]])).abs();
            if (best.sign() < 0 || d < best) best = d;
        }
        std::size_t pos = 0;
        while (pos < v.size() && ++idx[pos] == candidates[pos].size()) idx[pos++] = 0;
        if (pos == v.size()) break;
    }
    return best;
}

/// Two polynomials in (d, t) are proportional over Q(t): cross products of
/// their d-coefficients agree as polynomials in t.
inline bool proportional_over_t(const MultiPoly& p, const MultiPoly& q, const std::string& dvar) {
    int dp = p.degree_in(dvar), dq = q.degree_in(dvar);
    if (dp != dq) return false;
    std::vector<MultiPoly> pc = p.coeffs_in(dvar), qc = q.coeffs_in(dvar);
    for (int i = 0; i <= dp; ++i)
        for (int j = i + 1; j <= dp; ++j)
            if (!(pc[static_cast<std::size_t>(i)] * qc[static_cast<std::size_t>(j)] ==
                  pc[static_cast<std::size_t>(j)] * qc[static_cast<std::size_t>(i)]))
                return false;
    return true;
}

}  // namespace testutil
