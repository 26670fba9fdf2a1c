#pragma once

#include <string>
#include <vector>

#include "coaxial/angle_gate.hpp"
#include "coaxial/homotopy.hpp"

namespace coaxial {

/// Numeric data of a candidate developing map
///   h(x) = prod_{p in J1} (x-p)^(eps_p theta_p) * prod (x-a_j) / prod (x-b_j).
/// Exponents are kept exact so the degree bookkeeping can be checked in Q.
///
/// A valid h realizes the metric through the Liouville formula
/// u = ln(8|h'|^2 / (1+|h|^2)^2); the checks below certify h itself and never
/// materialize the metric.
struct DevelopingMap {
    struct PowerFactor {
        Label label;
        Complex pos;
        Rational exponent;  // eps_p * theta_p
    };
    struct FreePoint {
        Label label;
        Complex pos;
        long alpha;  // theta_p - 1
    };
    std::vector<PowerFactor> factors;  // includes 0 and 1
    std::vector<FreePoint> freePoints;
    std::vector<Complex> a, b;
    Rational thetaInf;

    static DevelopingMap make(const AngleConfig& cfg, const Branch& branch,
                              const AdmissibleZero& zero);

    /// All marked points: factor positions, free points, zeros, poles.
    std::vector<Complex> marked_points() const;
    /// Logarithmic derivative h'/h and its first two derivatives at x.
    Complex log_deriv(Complex x, int order = 0) const;
    /// -(1/2) {h, x} evaluated through the exact rational expressions.
    Complex schwarzian_q(Complex x) const;
};

struct CheckResult {
    bool ok = false;
    double max_deviation = 0.0;
    std::string detail;
};

struct VerificationReport {
    CheckResult gIdentity;
    CheckResult schwarzian;
    CheckResult asymptotic;
    std::vector<std::pair<Label, Complex>> dResiduals;  // recovered residues d_p
    double momentDeviation = 0.0;  // max of |sum d_p| and |sum(beta_p + p d_p) - betaInf|
    bool pass() const { return gIdentity.ok && schwarzian.ok && asymptotic.ok; }
};

/// Coefficientwise comparison of the expanded numerator of h'/h against
/// -thetaInf * prod over the free points of (x-p)^alpha_p. Relative 1e-9.
CheckResult check_g_identity(const DevelopingMap& dm);

/// Exact variant for rational data (the expansion is done over Q).
CheckResult check_g_identity_exact(const AngleConfig& cfg, const Branch& branch,
                                   const std::vector<Rational>& aVals,
                                   const std::vector<Rational>& bVals,
                                   const std::vector<Rational>& tVals);

/// Compares -(1/2){h,x} at sample points with the partial-fraction normal form
/// assembled from the exact beta_p and contour-recovered residues d_p.
CheckResult check_schwarzian(const DevelopingMap& dm, const std::vector<Complex>& samples,
                             std::vector<std::pair<Label, Complex>>* dOut = nullptr,
                             double* momentDevOut = nullptr);

/// Exponent-sum identity (exact) plus the x -> infinity normalizations
/// x^thetaInf h(x) -> 1 and h'(x)/(-thetaInf x^{-thetaInf-1}) -> 1.
CheckResult check_asymptotics(const DevelopingMap& dm);

/// Deterministic samples on the circle of radius 3 about 1/2, filtered to stay
/// at distance >= 0.1 from every marked point.
std::vector<Complex> default_samples(const DevelopingMap& dm, std::uint64_t seed,
                                     int count = 10);

VerificationReport verify(const DevelopingMap& dm, std::uint64_t seed = 0);

}  // namespace coaxial
