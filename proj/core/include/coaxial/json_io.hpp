#pragma once

#include <string>
#include <vector>

#include "coaxial/angle_gate.hpp"
#include "coaxial/heun.hpp"
#include "coaxial/homotopy.hpp"
#include "coaxial/verifier.hpp"

namespace coaxial {

/// Parses {"theta0":"1/3","theta1":"1/6","thetaInf":"1/2","nonint":[],"ints":[2]}.
/// Rationals are strings "p/q"; malformed documents raise std::invalid_argument.
AngleConfig angle_config_from_json(const std::string& text);

/// Candidate for verification:
/// {"config":{...},"branch":{"J1":[...],"signs":{...}},"zero":{"a":[[re,im]..],"b":[..],"t":[..]}}.
struct VerifyInput {
    AngleConfig config;
    Branch branch;
    AdmissibleZero zero;
};
VerifyInput verify_input_from_json(const std::string& text);

/// Heun input {"theta0":..,"theta1":..,"thetaInf":..,"theta":3,"eps0":1,"eps1":1};
/// eps entries are optional (absent means: run every valid sign pair).
struct LocusInput {
    Rational theta0, theta1, thetaInf;
    long theta = 2;
    bool epsGiven = false;
    int eps0 = 1, eps1 = 1;
};
LocusInput locus_input_from_json(const std::string& text);

std::string feasibility_to_json(const FeasibilityReport& report);
std::string locus_to_json(const std::vector<std::pair<HeunConfig, LocusResult>>& branches);
std::string solve_to_json(const FeasibilityReport& gate, const std::vector<BranchLocus>& loci);
std::string verification_to_json(const VerificationReport& report);

struct SweepRow {
    long theta = 0, k = 0;
    int eps0 = 1, eps1 = 1;
    long degPb = 0, degPc = 0, count = 0, predicted = 0;
};
std::string sweep_to_json(const std::vector<SweepRow>& rows);

std::string feasibility_to_csv(const FeasibilityReport& report);
std::string locus_to_csv(const std::vector<std::pair<HeunConfig, LocusResult>>& branches);
std::string solve_to_csv(const FeasibilityReport& gate, const std::vector<BranchLocus>& loci);
std::string verification_to_csv(const VerificationReport& report);
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

}  // namespace coaxial
