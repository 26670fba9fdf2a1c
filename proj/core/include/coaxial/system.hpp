#pragma once

#include <vector>

#include "coaxial/angle_gate.hpp"
#include "coaxial/multipoly.hpp"

namespace coaxial {

/// The polynomial system cutting out candidate developing-map data for one
/// branch: R_j are the normalized coefficients of the logarithmic-derivative
/// numerator G(x), C_j those of the target product over the free points, and
/// B_j = R_j - C_j. B_j has total degree j.
struct BranchSystem {
    Branch branch;
    std::vector<std::string> aVars, bVars;  // "a1"..,"b1"..
    std::vector<std::string> t1Vars;        // movable points inside J1, label order
    std::vector<Label> t2Labels;            // points of I \ J1, label order
    std::vector<MultiPoly> R, C, B;         // index j-1 holds degree-j data
    long L = 0;
};

BranchSystem build_system(const AngleConfig& cfg, const Branch& branch);

/// Square system after restricting the free points to the ray t2 = t * t20:
/// Bhat_j = R_j - C_j(t20) t^j in the unknowns (a, b, t1, t).
struct SlicedSystem {
    std::vector<Rational> direction;  // t20, first entry 1, no zero entries
    std::vector<Rational> cDir;       // C_j evaluated at the direction
    std::vector<MultiPoly> polys;     // Bhat_1..Bhat_L
    std::vector<std::string> unknowns;
    long L = 0;
};

SlicedSystem slice(const BranchSystem& sys, const std::vector<Rational>& direction);

}  // namespace coaxial
