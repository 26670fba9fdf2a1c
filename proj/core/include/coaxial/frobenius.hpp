#pragma once

#include <map>
#include <string>
#include <vector>

#include "coaxial/angle_gate.hpp"
#include "coaxial/multipoly.hpp"

namespace coaxial {

/// Symbolic data of the normal-form potential
///   Q(x) = sum_p [ beta_p/(x-p)^2 + d_p/(x-p) ]
/// over the finite singular points, with the residues at 0 and 1 eliminated by
/// the two moment constraints (sum d_p = 0 and sum(beta_p + p d_p) = beta_inf),
/// leaving the d's at the movable points free.
struct QTemplate {
    std::vector<Label> points;            // "0", "1", "t1", ..., in order
    std::map<Label, Rational> beta;       // beta_p = (theta_p^2 - 1)/4
    Rational betaInf;
    std::map<Label, MultiPoly> position;  // 0, 1 constant; t_j variable or numeric
    std::vector<std::string> freeD;       // "d1".."d{n+m}"
    std::map<Label, MultiPoly> dExpr;     // residue d_p for every finite point
    std::map<Label, long> intTheta;       // integer angles at apparency centers

    /// Positions stay symbolic up to n+m <= 3 movable points; beyond that a
    /// numeric rational position is required for every movable point.
    static QTemplate make(const AngleConfig& cfg,
                          const std::map<Label, Rational>& numericPositions = {});

    const MultiPoly& pos(const Label& p) const { return position.at(p); }
    std::string d_name(int j) const { return "d" + std::to_string(j); }
    /// prod_{p != center} (pos(center) - pos(p)), the common denominator base.
    MultiPoly denom_base(const Label& center) const;
};

/// A value of the form numerator / D^denomPower with D the center's
/// denominator base.
struct LaurentCoeff {
    MultiPoly numerator;
    int denomPower = 0;
};

/// Laurent coefficients eta_0..eta_count of Q at the given center:
/// eta_0 = beta_c, eta_1 = d_c, and for j >= 2
///   eta_j = (-1)^j sum_{p != c} [beta_p (j-1) + d_p (c - p)] / (c - p)^j.
std::vector<LaurentCoeff> laurent_coeffs(const QTemplate& tmpl, const Label& center, int count);

/// Power-series coefficients c_0..c_{theta-1} of the Frobenius solution at an
/// integer-angle center, solved from j(j - theta) c_j = sum_{k<j} eta_{j-k} c_k.
/// Each c_j is returned with denominator power exactly j.
std::vector<LaurentCoeff> frobenius_coeffs(const QTemplate& tmpl, const Label& center);

struct ApparencyPoly {
    Label center;
    MultiPoly poly;                      // primitive, coprime to the position differences
    std::map<Label, int> clearedPowers;  // power of (t_c - p) left in the cleared form
};

/// The obstruction at order theta as a primitive polynomial over Q: vanishes
/// exactly when the local monodromy at the center is trivial (no logarithm).
/// Degree in the center's d variable and total d-degree both equal theta.
ApparencyPoly apparency_polynomial(const QTemplate& tmpl, const Label& center);

struct ApparencySystem {
    std::vector<ApparencyPoly> polys;  // one per integer-angle center
};

ApparencySystem apparency_system(const QTemplate& tmpl);

}  // namespace coaxial
