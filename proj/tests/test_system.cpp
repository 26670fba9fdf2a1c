#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <coaxial/heun.hpp>
#include <coaxial/homotopy.hpp>
#include <coaxial/system.hpp>

#include "helpers.hpp"

using namespace coaxial;
using testutil::close;

namespace {

AngleConfig heun_angles(long theta) {
    return AngleConfig::make(Rational(1, 3), Rational(1, 6), Rational(1, 2), {}, {theta});
}

Branch only_branch(const AngleConfig& cfg) {
    auto branches = enumerate_branches(cfg);
    REQUIRE(branches.size() >= 1);
    return branches.front();
}

}  // namespace

TEST_CASE("theta=2 system reduces to a single linear equation with root 2/3") {
    AngleConfig cfg = heun_angles(2);
    Branch br = only_branch(cfg);
    BranchSystem sys = build_system(cfg, br);
    REQUIRE(sys.L == 1);
    // B_1 = eps0 theta0 / thetaInf + t1, so the zero is t = -eps0 theta0/thetaInf = 2/3
    MultiPoly expect = MultiPoly::variable("t1") - MultiPoly(Rational(2, 3));
    CHECK(sys.B[0] == expect);
}

TEST_CASE("highest coefficient of the target product") {
    // two free points: C_L(t2) = (-1)^L prod t_j^{alpha_j}
    AngleConfig cfg = AngleConfig::make(Rational(1, 3), Rational(1, 6), Rational(1, 2), {}, {2, 3});
    auto branches = enumerate_branches(cfg);
    REQUIRE(!branches.empty());
    const Branch* br = nullptr;
    for (const auto& b : branches)
        if (b.J1 == std::vector<Label>{"0", "1"}) br = &b;
    REQUIRE(br != nullptr);
    BranchSystem sys = build_system(cfg, *br);
    CHECK(sys.L == 3);
    MultiPoly t1 = MultiPoly::variable("t1"), t2 = MultiPoly::variable("t2");
    MultiPoly expect = t1 * t2.pow(2);
    CHECK(sys.C.back() == -expect);  // (-1)^3 t1^1 t2^2
}

TEST_CASE("slicing") {
    SUBCASE("single free point: the slice is a renaming") {
        AngleConfig cfg = heun_angles(3);
        Branch br = only_branch(cfg);
        BranchSystem sys = build_system(cfg, br);
        SlicedSystem sl = slice(sys, {Rational(1)});
        REQUIRE(sl.L == sys.L);
        for (long j = 0; j < sys.L; ++j) {
            MultiPoly renamed =
                sys.B[static_cast<std::size_t>(j)].substitute("t1", MultiPoly::variable("t"));
            CHECK(sl.polys[static_cast<std::size_t>(j)] == renamed);
        }
    }
    SUBCASE("direction (1,2): sliced coefficients match the binomial convolution oracle") {
        AngleConfig cfg =
            AngleConfig::make(Rational(1, 3), Rational(1, 6), Rational(1, 2), {}, {2, 3});
        const Branch* br = nullptr;
        auto branches = enumerate_branches(cfg);
        for (const auto& b : branches)
            if (b.J1 == std::vector<Label>{"0", "1"}) br = &b;
        REQUIRE(br != nullptr);
        BranchSystem sys = build_system(cfg, *br);
        SlicedSystem sl = slice(sys, {Rational(1), Rational(2)});
        // oracle: expand (x - 1)^1 (x - 2)^2 by convolution; C_j = coeff of x^{L-j}
        std::vector<Rational> prod{Rational(1)};
        prod = testutil::convolve(prod, {Rational(-1), Rational(1)});
        prod = testutil::convolve(prod, {Rational(-2), Rational(1)});
        prod = testutil::convolve(prod, {Rational(-2), Rational(1)});
        for (long j = 1; j <= sys.L; ++j)
            CHECK(sl.cDir[static_cast<std::size_t>(j - 1)] ==
                  prod[static_cast<std::size_t>(sys.L - j)]);
        CHECK(!sl.cDir.back().is_zero());
        CHECK_THROWS_AS(slice(sys, {Rational(1), Rational(0)}), std::invalid_argument);
        CHECK_THROWS_AS(slice(sys, {Rational(2), Rational(1)}), std::invalid_argument);
    }
}

TEST_CASE("B_j is symmetric under permutations of the zero and pole variables") {
    // theta=6, k=0 gives m1 = m2 = 2
    AngleConfig cfg = heun_angles(6);
    Branch br = only_branch(cfg);
    REQUIRE(br.m1 == 2);
    REQUIRE(br.m2 == 2);
    BranchSystem sys = build_system(cfg, br);
    auto swapped = [](const MultiPoly& p, const std::string& u, const std::string& v) {
        return p.substitute(u, MultiPoly::variable("swap_tmp"))
            .substitute(v, MultiPoly::variable(u))
            .substitute("swap_tmp", MultiPoly::variable(v));
    };
    for (const MultiPoly& b : sys.B) {
        CHECK(swapped(b, "a1", "a2") == b);
        CHECK(swapped(b, "b1", "b2") == b);
    }
}

TEST_CASE("solving the sliced system") {
    SUBCASE("L = 1 linear system needs no continuation") {
        AngleConfig cfg = heun_angles(2);
        Branch br = only_branch(cfg);
        BranchSystem sys = build_system(cfg, br);
        SlicedSystem sl = slice(sys, {Rational(1)});
        SolveResult res = solve_sliced(cfg, sys, sl, {});
        CHECK(res.stats.paths == 1);
        CHECK(res.stats.converged == 1);
        REQUIRE(res.zeros.size() == 1);
        CHECK(res.zeros[0].admissible);
        CHECK(close(res.zeros[0].t[0], Complex(2.0 / 3, 0), 1e-9));
    }
    SUBCASE("theta=3: both admissible points, path count 2 = L!") {
        AngleConfig cfg = heun_angles(3);
        Branch br = only_branch(cfg);
        BranchSystem sys = build_system(cfg, br);
        SlicedSystem sl = slice(sys, {Rational(1)});
        SolveResult res = solve_sliced(cfg, sys, sl, {});
        CHECK(res.stats.paths == 2);
        CHECK(res.stats.converged == 2);
        bool plus = false, minus = false;
        for (const AdmissibleZero& z : res.zeros) {
            CHECK(z.admissible);
            CHECK(z.residual <= 1e-10);
            if (close(z.t[0], Complex(2.0 / 3, 2.0 / 3), 1e-8)) plus = true;
            if (close(z.t[0], Complex(2.0 / 3, -2.0 / 3), 1e-8)) minus = true;
        }
        CHECK(plus);
        CHECK(minus);
    }
    SUBCASE("four non-integer angles {1/2,1/6,1/6,1/6} with a triple point") {
        const Complex omega(0.5, std::sqrt(3.0) / 2);  // (1 + i sqrt 3)/2
        // normalization with the three equal angles at 0, 1, inf puts the
        // integer point at (1 +- i sqrt 3)/2
        AngleConfig cfg = AngleConfig::make(Rational(1, 6), Rational(1, 6), Rational(1, 6),
                                            {Rational(1, 2)}, {3});
        bool plus = false, minus = false;
        for (const BranchLocus& bl : enumerate_locus(cfg, {}))
            for (const AdmissibleZero& z : bl.result.zeros) {
                if (!z.admissible) continue;
                if (close(z.t[1], omega, 1e-8)) plus = true;
                if (close(z.t[1], std::conj(omega), 1e-8)) minus = true;
            }
        CHECK(plus);
        CHECK(minus);
        // the normalization with 1/2 at the origin carries the same values on
        // the non-integer movable point instead
        AngleConfig alt = AngleConfig::make(Rational(1, 2), Rational(1, 6), Rational(1, 6),
                                            {Rational(1, 6)}, {3});
        bool altPlus = false, altMinus = false;
        for (const BranchLocus& bl : enumerate_locus(alt, {}))
            for (const AdmissibleZero& z : bl.result.zeros) {
                if (!z.admissible) continue;
                if (close(z.t[0], omega, 1e-8)) altPlus = true;
                if (close(z.t[0], std::conj(omega), 1e-8)) altMinus = true;
            }
        CHECK(altPlus);
        CHECK(altMinus);
    }
}

TEST_CASE("agreement of the two pipelines for a single movable point") {
    std::mt19937_64 rng(246810);
    for (long theta : {2L, 3L, 4L}) {
        AngleConfig cfg = heun_angles(theta);
        for (const Branch& br : enumerate_branches(cfg)) {
            long k = br.m2 - br.m1;
            HeunConfig hc = HeunConfig::make(cfg.theta0, cfg.theta1, cfg.thetaInf,
                                             br.signs.at("0"), br.signs.at("1"), theta);
            REQUIRE(hc.k == k);
            LocusResult loc = locus(hc);
            BranchSystem sys = build_system(cfg, br);
            SlicedSystem sl = slice(sys, {Rational(1)});
            SolveResult res = solve_sliced(cfg, sys, sl, {});
            // every eliminant root appears among the admissible homotopy zeros
            for (const auto& root : loc.roots) {
                bool hit = false;
                for (const AdmissibleZero& z : res.zeros)
                    if (z.admissible && close(z.t[0], root.t, 1e-8)) hit = true;
                CHECK(hit);
            }
            // and conversely
            for (const AdmissibleZero& z : res.zeros) {
                if (!z.admissible) continue;
                bool hit = false;
                for (const auto& root : loc.roots)
                    if (close(z.t[0], root.t, 1e-8)) hit = true;
                CHECK(hit);
            }
        }
    }
}

TEST_CASE("pentagonal angles: distance exceeds one yet solutions exist") {
    // angles (1/5, 1/5, 2/5; 2/5; 3): existence holds although the odd-lattice
    // distance is 7/5, so co-axiality is not forced here
    AngleConfig cfg = AngleConfig::make(Rational(1, 5), Rational(1, 5), Rational(2, 5),
                                        {Rational(2, 5)}, {3});
    FeasibilityReport gate = check_eremenko(cfg);
    CHECK(gate.feasible);
    CHECK(gate.mpDistance == Rational(7, 5));
    int admissible = 0;
    for (const BranchLocus& bl : enumerate_locus(cfg, {}))
        for (const AdmissibleZero& z : bl.result.zeros)
            if (z.admissible) ++admissible;
    CHECK(admissible > 0);
}

TEST_CASE("the path budget cap rejects oversized systems") {
    AngleConfig cfg = heun_angles(8);  // L = 7, 7! paths
    Branch br = only_branch(cfg);
    BranchSystem sys = build_system(cfg, br);
    SlicedSystem sl = slice(sys, {Rational(1)});
    CHECK_THROWS_AS(solve_sliced(cfg, sys, sl, {}), std::invalid_argument);
}

TEST_CASE("multiple free points: slices along different rays witness a positive-dimensional set") {
    AngleConfig cfg = AngleConfig::make(Rational(1, 3), Rational(1, 6), Rational(1, 2), {}, {2, 3});
    const Branch* br = nullptr;
    auto branches = enumerate_branches(cfg);
    for (const auto& b : branches)
        if (b.J1 == std::vector<Label>{"0", "1"}) br = &b;
    REQUIRE(br != nullptr);
    BranchSystem sys = build_system(cfg, *br);
    std::vector<std::vector<Complex>> admissibleTuples;
    for (long c : {2L, 3L, 5L}) {
        SlicedSystem sl = slice(sys, {Rational(1), Rational(c)});
        SolveResult res = solve_sliced(cfg, sys, sl, {});
        CHECK(res.stats.converged + res.stats.diverged == res.stats.paths);
        for (const AdmissibleZero& z : res.zeros)
            if (z.admissible) admissibleTuples.push_back(z.t);
    }
    REQUIRE(admissibleTuples.size() >= 3);
    // tuples from distinct rays are pairwise distinct
    int distinctPairs = 0;
    for (std::size_t i = 0; i < admissibleTuples.size(); ++i)
        for (std::size_t j = i + 1; j < admissibleTuples.size(); ++j) {
            double d = 0.0;
            for (std::size_t c = 0; c < admissibleTuples[i].size(); ++c)
                d = std::max(d, std::abs(admissibleTuples[i][c] - admissibleTuples[j][c]));
            if (d > 1e-6) ++distinctPairs;
        }
    CHECK(distinctPairs >= 3);
}

TEST_CASE("determinism: identical seeds give identical zeros") {
    AngleConfig cfg = heun_angles(4);
    SolveOptions opt;
    opt.seed = 12345;
    auto l1 = enumerate_locus(cfg, opt);
    auto l2 = enumerate_locus(cfg, opt);
    REQUIRE(l1.size() == l2.size());
    for (std::size_t b = 0; b < l1.size(); ++b) {
        REQUIRE(l1[b].result.zeros.size() == l2[b].result.zeros.size());
        for (std::size_t i = 0; i < l1[b].result.zeros.size(); ++i)
            for (std::size_t c = 0; c < l1[b].result.zeros[i].t.size(); ++c)
                CHECK(l1[b].result.zeros[i].t[c] == l2[b].result.zeros[i].t[c]);
    }
}

TEST_CASE("path-level parallelism agrees with the sequential tracker") {
    AngleConfig cfg = heun_angles(5);
    Branch br = only_branch(cfg);
    BranchSystem sys = build_system(cfg, br);
    SlicedSystem sl = slice(sys, {Rational(1)});
    SolveOptions seq, par;
    par.threads = 4;
    SolveResult a = solve_sliced(cfg, sys, sl, seq);
    SolveResult b = solve_sliced(cfg, sys, sl, par);
    REQUIRE(a.zeros.size() == b.zeros.size());
    for (std::size_t i = 0; i < a.zeros.size(); ++i) {
        CHECK(a.zeros[i].multiplicity == b.zeros[i].multiplicity);
        for (std::size_t c = 0; c < a.zeros[i].t.size(); ++c)
            CHECK(a.zeros[i].t[c] == b.zeros[i].t[c]);
    }
}
