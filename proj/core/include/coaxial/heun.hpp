#pragma once

#include <optional>
#include <utility>

#include "coaxial/multipoly.hpp"
#include "coaxial/roots.hpp"

namespace coaxial {

/// Angle data for the single-movable-point case: three non-integer angles at
/// 0, 1, inf, one integer angle theta at the movable point, and a sign choice
/// making k = thetaInf + eps0*theta0 + eps1*theta1 an integer of the same
/// parity as theta.
struct HeunConfig {
    Rational theta0, theta1, thetaInf;
    int eps0 = -1, eps1 = -1;
    long theta = 2;
    long k = 0;
    Rational alpha0, alpha1, alphaInf, alphaT;
    Rational alphaPrime, alphaDoublePrime;  // -(sum alpha)/2 - 1 and (alphaInf - rest)/2

    static HeunConfig make(Rational th0, Rational th1, Rational thInf, int e0, int e1,
                           long theta);
};

/// Tridiagonal accessory-parameter matrix entries: super-diagonal A_j(t)
/// (degree 2), diagonal B_j(t) (degree 1), sub-diagonal constants D_j.
struct MatrixEntries {
    std::vector<MultiPoly> superA;  // A_1..A_{theta-1}
    std::vector<MultiPoly> diagB;   // B_1..B_theta
    std::vector<Rational> subD;     // D_2..D_theta
};

struct CharPolySplit {
    MultiPoly P;             // det(lambda I - M), bivariate in (lambda, t)
    MultiPoly Pb, Pc;        // P = Pb * Pc exactly
    std::optional<long> blockIndex;  // (k+theta)/2 + 1 when |k| < theta
};

struct LimitCheckReport {
    bool at_zero_ok = false;      // P(lambda,0) splits into the predicted linear factors
    bool at_infinity_ok = false;  // leading form P_inf(lambda) likewise
    long failing_j = 0;           // 1-based index of the first failing factor, 0 if none
};

struct LocusRoot {
    Complex t;
    int multiplicity = 0;   // multiplicity as a root of the eliminant in t
    int fiberSize = 0;      // number of common lambda values above this t
    bool nearExcluded = false;  // within 1e-8 of 0 or 1 (not expected)
};

struct LocusResult {
    MultiPoly resT;  // eliminant of lambda from (Pb, Pc); constant when empty
    std::vector<LocusRoot> roots;
    long cardinality = 0;  // with multiplicity
    long predicted = 0;    // 0 if theta <= |k|, else (theta^2 - k^2)/4
    bool gcdNontrivial = false;  // Pb, Pc share a factor: eliminant vanished
};

MatrixEntries build_entries(const HeunConfig& cfg);

/// Closed form for the sub-diagonal entries:
/// D_j = (2j-k-theta-2)(2j-k-theta+2 thetaInf - 2)/4.
Rational subdiag_closed_form(const HeunConfig& cfg, long j);

/// Splits P along the vanishing sub-diagonal entry when |k| < theta; otherwise
/// one factor is the constant 1 (Pc for k <= -theta, Pb for k >= theta).
CharPolySplit split_charpoly(const HeunConfig& cfg, const MatrixEntries& entries);

LimitCheckReport limit_checks(const HeunConfig& cfg, const CharPolySplit& split);

LocusResult locus(const HeunConfig& cfg, const RootOptions& opt = {});

/// theta = 3, |k| = 1 closed form (sign-absorbed angles):
/// (theta0 thetaInf +- sqrt(-k theta0 theta1 thetaInf)) / ((theta0+theta1) thetaInf).
std::pair<Complex, Complex> closed_form_theta3(const HeunConfig& cfg);

}  // namespace coaxial
