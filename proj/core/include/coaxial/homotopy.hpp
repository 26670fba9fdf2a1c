#pragma once

#include <cstdint>
#include <vector>

#include "coaxial/system.hpp"
#include "coaxial/roots.hpp"

namespace coaxial {

/// One solution of the branch system, coordinates grouped back into zeros a,
/// poles b, and the full movable-point tuple t (label order t1..t_{n+m}).
struct AdmissibleZero {
    std::vector<Complex> a, b, t;
    bool admissible = false;
    double residual = 0.0;
    int multiplicity = 1;  // homotopy paths landing on this point (mod permutations)
};

struct SolveOptions {
    std::uint64_t seed = 0;
    double tol_root = 1e-10;   // endpoint residual bound
    double tol_sep = 1e-7;     // admissibility separation
    double tol_cluster = 1e-8; // endpoint deduplication radius
    int threads = 1;
};

struct SolveStats {
    int paths = 0;
    int converged = 0;  // finite endpoints meeting the residual bound
    int diverged = 0;   // benign: escaped to infinity
    int failed = 0;     // step-size underflow
};

struct SolveResult {
    std::vector<AdmissibleZero> zeros;
    SolveStats stats;
};

/// Total-degree homotopy with the gamma trick: start system x_j^j - gamma_j,
/// Euler predictor + Newton corrector, endpoint polishing, deduplication.
/// The path count is prod deg Bhat_j = L!. Requires L <= 6.
SolveResult solve_sliced(const AngleConfig& cfg, const BranchSystem& sys,
                         const SlicedSystem& sliced, const SolveOptions& opt = {});

struct BranchLocus {
    Branch branch;
    std::vector<Rational> direction;
    SolveResult result;
};

/// Runs every count-valid branch; for a single integer angle the admissible
/// zero count is checked against 2^(n+2) (theta'-1)!.
std::vector<BranchLocus> enumerate_locus(const AngleConfig& cfg, const SolveOptions& opt = {});

}  // namespace coaxial
