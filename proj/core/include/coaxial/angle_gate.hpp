#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coaxial/rational.hpp"

namespace coaxial {

/// Labels for the singular points: "0", "1", "inf", "t1", "t2", ...
using Label = std::string;

/// Angle data: three non-integer angles at 0, 1, inf, then n non-integer and
/// m >= 1 integer angles at the movable points t_1..t_{n+m}.
struct AngleConfig {
    Rational theta0, theta1, thetaInf;
    std::vector<Rational> nonint;  // θ'_1..θ'_n, positive non-integers
    std::vector<long> ints;        // θ'_{n+1}..θ'_{n+m}, integers >= 2

    int n() const { return static_cast<int>(nonint.size()); }
    int m() const { return static_cast<int>(ints.size()); }

    /// Validates positivity / integrality / enumeration caps (n+m <= 8, θ' <= 64).
    static AngleConfig make(Rational th0, Rational th1, Rational thInf,
                            std::vector<Rational> nonint, std::vector<long> ints);

    /// θ at a labeled point ("0", "1", "inf", "t1"...).
    Rational theta_of(const Label& p) const;
    /// (θ_0, θ_1, θ_inf, θ'_1, ..., θ'_{n+m})
    std::vector<Rational> all_thetas() const;
    /// Labels t_1..t_{n+m}.
    std::vector<Label> t_labels() const;
    Label t_label(int j) const { return "t" + std::to_string(j); }
};

struct SignAssignment {
    std::map<Label, int> eps;  // values in {+1, -1}
    int at(const Label& p) const;
    bool operator==(const SignAssignment&) const = default;
};

/// A choice of J1 (points where the developing map has a pure power factor)
/// together with signs and the derived zero/pole counts.
struct Branch {
    std::vector<Label> J1;  // contains 0, 1, t1..tn; excludes at least one integer point
    SignAssignment signs;   // over J1 and "inf" (eps_inf = +1)
    long kPrime = 0;        // |m2 - m1|
    long kDoublePrime = 0;  // 2 * min(m1, m2)
    long m1 = 0, m2 = 0;
    long L = 0;  // m1 + m2 + |J1| - 1
};

struct FeasibilityWitness {
    SignAssignment signs;  // over {0, 1, inf, t1..tn}
    long kPrime = 0;
    long kDoublePrime = 0;
    Rational eta;
    std::vector<mpz_class> b;  // c = eta * b, gcd(b) = 1
    bool k3ok = false;         // 2 max integer angle <= sum b_j
};

struct FeasibilityReport {
    bool feasible = false;
    std::vector<FeasibilityWitness> witnesses;
    Rational mpDistance;  // l1 distance from θ-1 to the odd integer lattice
};

/// Minimum l1 distance from v to integer vectors with odd coordinate sum:
/// sum of per-coordinate nearest-integer distances, plus the cheapest parity
/// flip min_i(1 - 2 f_i) when the rounded sum is even. Exact.
Rational mp_distance(const std::vector<Rational>& v);

/// Enumerates all sign choices over {0, 1, inf, t1..tn} and reports every
/// witness with k' a nonnegative integer and k'' a nonnegative even integer,
/// along with the commensurability data and the mass bound check.
FeasibilityReport check_eremenko(const AngleConfig& cfg);

/// Zero/pole counts for a given (J1, signs) with eps_inf = +1; nullopt when
/// they fail to be nonnegative integers.
std::optional<std::pair<long, long>> derive_counts(const AngleConfig& cfg,
                                                   const std::vector<Label>& J1,
                                                   const SignAssignment& signs);

/// All count-valid branches, ordered lexicographically by (subset mask, sign
/// mask). Empty when the configuration is infeasible.
std::vector<Branch> enumerate_branches(const AngleConfig& cfg);

struct K3CheckResult {
    bool pass = true;
    /// Populated with the violating signs if the implication ever fails.
    std::optional<SignAssignment> counterexample;
    bool vacuous = false;  // mp distance != 1
};

/// If d1(Z_o, θ-1) = 1 and some sign choice passes the integrality gates,
/// checks that the mass bound holds for every such choice.
K3CheckResult mp_implies_k3_check(const AngleConfig& cfg);

}  // namespace coaxial
