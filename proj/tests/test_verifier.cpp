#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <coaxial/verifier.hpp>

#include "helpers.hpp"

using namespace coaxial;
using testutil::close;

namespace {

AngleConfig heun_angles(long theta) {
    return AngleConfig::make(Rational(1, 3), Rational(1, 6), Rational(1, 2), {}, {theta});
}

std::pair<Branch, AdmissibleZero> theta2_solution() {
    AngleConfig cfg = heun_angles(2);
    Branch br = enumerate_branches(cfg).front();
    AdmissibleZero z;
    z.t = {Complex(2.0 / 3, 0.0)};
    z.admissible = true;
    return {br, z};
}

}  // namespace

TEST_CASE("log-derivative numerator identity at the known rational point") {
    AngleConfig cfg = heun_angles(2);
    auto [br, z] = theta2_solution();
    SUBCASE("exact route: both sides collapse to -(1/2)(x - 2/3)") {
        CheckResult r = check_g_identity_exact(cfg, br, {}, {}, {Rational(2, 3)});
        CHECK(r.ok);
        CheckResult bad = check_g_identity_exact(cfg, br, {}, {}, {Rational(2, 3) + Rational(1, 1000)});
        CHECK(!bad.ok);
    }
    SUBCASE("numeric route") {
        DevelopingMap dm = DevelopingMap::make(cfg, br, z);
        CheckResult r = check_g_identity(dm);
        CHECK(r.ok);
        CHECK(r.max_deviation <= 1e-12);
    }
    SUBCASE("a 1e-3 shift of the movable point breaks the identity") {
        AdmissibleZero shifted = z;
        shifted.t[0] += 1e-3;
        DevelopingMap dm = DevelopingMap::make(cfg, br, shifted);
        CHECK(!check_g_identity(dm).ok);
    }
}

TEST_CASE("full verification of solved zeros") {
    SUBCASE("theta=2") {
        AngleConfig cfg = heun_angles(2);
        auto [br, z] = theta2_solution();
        DevelopingMap dm = DevelopingMap::make(cfg, br, z);
        VerificationReport rep = verify(dm, 7);
        CHECK(rep.pass());
        CHECK(rep.momentDeviation <= 1e-9);
    }
    SUBCASE("theta=3 carries one pole (m2 = 1)") {
        AngleConfig cfg = heun_angles(3);
        Branch br = enumerate_branches(cfg).front();
        REQUIRE(br.m2 == 1);
        BranchSystem sys = build_system(cfg, br);
        SlicedSystem sl = slice(sys, {Rational(1)});
        SolveResult res = solve_sliced(cfg, sys, sl, {});
        int verified = 0;
        for (const AdmissibleZero& z : res.zeros) {
            if (!z.admissible) continue;
            DevelopingMap dm = DevelopingMap::make(cfg, br, z);
            VerificationReport rep = verify(dm, 11);
            CHECK(rep.pass());
            ++verified;
        }
        CHECK(verified == 2);
    }
}

TEST_CASE("two free points: sliced solutions certify") {
    AngleConfig cfg = AngleConfig::make(Rational(1, 3), Rational(1, 6), Rational(1, 2), {}, {2, 3});
    int verified = 0;
    for (const BranchLocus& bl : enumerate_locus(cfg, {})) {
        for (const AdmissibleZero& z : bl.result.zeros) {
            if (!z.admissible) continue;
            DevelopingMap dm = DevelopingMap::make(cfg, bl.branch, z);
            REQUIRE(dm.freePoints.size() + dm.factors.size() - 2 == 2);
            VerificationReport rep = verify(dm, 23);
            CHECK(rep.pass());
            ++verified;
        }
    }
    CHECK(verified > 0);
}

TEST_CASE("generic data is rejected") {
    AngleConfig cfg = heun_angles(3);
    Branch br = enumerate_branches(cfg).front();
    std::mt19937_64 rng(8675309);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    int rejected = 0;
    for (int i = 0; i < 5; ++i) {
        AdmissibleZero z;
        z.b = {Complex(u(rng), u(rng))};
        z.t = {Complex(u(rng), u(rng))};
        DevelopingMap dm = DevelopingMap::make(cfg, br, z);
        VerificationReport rep = verify(dm, 3);
        if (!rep.pass()) ++rejected;
    }
    CHECK(rejected == 5);
}

TEST_CASE("asymptotic normalization") {
    AngleConfig cfg = heun_angles(2);
    auto [br, z] = theta2_solution();
    SUBCASE("valid data passes with the h' ratio included") {
        DevelopingMap dm = DevelopingMap::make(cfg, br, z);
        CHECK(check_asymptotics(dm).ok);
    }
    SUBCASE("a flipped sign violates the exponent sum exactly") {
        DevelopingMap dm = DevelopingMap::make(cfg, br, z);
        dm.factors[0].exponent = -dm.factors[0].exponent;
        CheckResult r = check_asymptotics(dm);
        CHECK(!r.ok);
        CHECK(r.detail.find("exponent sum") != std::string::npos);
    }
}

TEST_CASE("schwarzian check rejects samples near singular points") {
    AngleConfig cfg = heun_angles(2);
    auto [br, z] = theta2_solution();
    DevelopingMap dm = DevelopingMap::make(cfg, br, z);
    CHECK_THROWS_AS(check_schwarzian(dm, {Complex(2.0 / 3 + 1e-3, 0)}), std::invalid_argument);
}

TEST_CASE("recovered residues satisfy both moment constraints") {
    AngleConfig cfg = heun_angles(3);
    Branch br = enumerate_branches(cfg).front();
    BranchSystem sys = build_system(cfg, br);
    SlicedSystem sl = slice(sys, {Rational(1)});
    SolveResult res = solve_sliced(cfg, sys, sl, {});
    REQUIRE(!res.zeros.empty());
    const AdmissibleZero& z = res.zeros.front();
    DevelopingMap dm = DevelopingMap::make(cfg, br, z);
    std::vector<std::pair<Label, Complex>> ds;
    double momentDev = 0.0;
    CheckResult r = check_schwarzian(dm, default_samples(dm, 19), &ds, &momentDev);
    CHECK(r.ok);
    CHECK(momentDev <= 1e-9);
    REQUIRE(ds.size() == 3);  // residues at 0, 1 and the movable point
}
