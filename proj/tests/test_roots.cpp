#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <coaxial/heun.hpp>
#include <coaxial/roots.hpp>

#include "helpers.hpp"

using coaxial::Complex;
using coaxial::Rational;
using coaxial::RootMultiset;

TEST_CASE("x^2 + 1 has roots +-i") {
    RootMultiset rm = coaxial::find_roots(std::vector<Rational>{Rational(1), Rational(0), Rational(1)});
    REQUIRE(rm.entries.size() == 2);
    CHECK(rm.entries[0].multiplicity == 1);
    CHECK(rm.entries[1].multiplicity == 1);
    CHECK(testutil::close(rm.entries[0].root, Complex(0, -1), 1e-12));
    CHECK(testutil::close(rm.entries[1].root, Complex(0, 1), 1e-12));
}

TEST_CASE("triple rational root is recovered with exact multiplicity") {
    // (x - 1/2)^3 = x^3 - 3/2 x^2 + 3/4 x - 1/8
    std::vector<Rational> p{Rational(-1, 8), Rational(3, 4), Rational(-3, 2), Rational(1)};
    RootMultiset rm = coaxial::find_roots(p);
    REQUIRE(rm.entries.size() == 1);
    CHECK(rm.entries[0].multiplicity == 3);
    CHECK(testutil::close(rm.entries[0].root, Complex(0.5, 0), 1e-12));
}

TEST_CASE("the theta=3 eliminant for (1/3,1/6,1/2) has roots 2(1 +- i)/3") {
    coaxial::HeunConfig cfg =
        coaxial::HeunConfig::make(Rational(1, 3), Rational(1, 6), Rational(1, 2), +1, +1, 3);
    coaxial::LocusResult loc = coaxial::locus(cfg);
    RootMultiset rm = coaxial::find_roots(coaxial::univariate_coeffs(loc.resT));
    REQUIRE(rm.entries.size() == 2);
    CHECK(testutil::close(rm.entries[0].root, Complex(2.0 / 3, -2.0 / 3), 1e-10));
    CHECK(testutil::close(rm.entries[1].root, Complex(2.0 / 3, 2.0 / 3), 1e-10));
}

TEST_CASE("degenerate inputs are rejected") {
    CHECK_THROWS_AS(coaxial::find_roots(std::vector<Rational>{Rational(3)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(coaxial::find_roots(std::vector<Complex>{{1, 0}}), std::invalid_argument);
}

TEST_CASE("unreachable residual tolerance reports the best iterates") {
    std::vector<Complex> p;
    for (int i = 0; i <= 9; ++i) p.push_back(Complex(1.0 + i, 0.5 * i));
    coaxial::RootOptions opt;
    opt.residual_tol = 1e-40;  // below what doubles can certify
    try {
        coaxial::find_roots(p, opt);
        FAIL("expected RootFindingError");
    } catch (const coaxial::RootFindingError& e) {
        CHECK(e.best_iterates.size() == 9);
        // the iterates are still good roots at any sane tolerance
        for (const Complex& z : e.best_iterates) {
            Complex v = 0.0;
            for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * z + *it;
            CHECK(std::abs(v) < 1e-8);
        }
    }
}

TEST_CASE("roots at the origin are deflated") {
    // x^2 (x - 2)
    std::vector<Rational> p{Rational(0), Rational(0), Rational(-2), Rational(1)};
    RootMultiset rm = coaxial::find_roots(p);
    REQUIRE(rm.entries.size() == 2);
    CHECK(rm.entries[0].multiplicity == 2);
    CHECK(testutil::close(rm.entries[0].root, Complex(0, 0), 1e-12));
    CHECK(testutil::close(rm.entries[1].root, Complex(2, 0), 1e-12));
}

TEST_CASE("product of monic linear factors reproduces the polynomial") {
    std::mt19937_64 rng(424242);
    std::uniform_real_distribution<double> re(-2.0, 2.0);
    for (int deg : {3, 6, 9, 12}) {
        // well-separated random roots
        std::vector<Complex> roots;
        while (static_cast<int>(roots.size()) < deg) {
            Complex z(re(rng), re(rng));
            bool ok = true;
            for (const Complex& w : roots)
                if (std::abs(z - w) < 0.35) ok = false;
            if (ok) roots.push_back(z);
        }
        std::vector<Complex> coeffs{1.0};
        for (const Complex& r : roots) {
            std::vector<Complex> next(coeffs.size() + 1, Complex(0));
            for (std::size_t i = 0; i < coeffs.size(); ++i) {
                next[i + 1] += coeffs[i];
                next[i] -= coeffs[i] * r;
            }
            coeffs = std::move(next);
        }
        RootMultiset rm = coaxial::find_roots(coeffs);
        CHECK(rm.total() == deg);
        // rebuild from the found roots and compare coefficientwise
        std::vector<Complex> rebuilt{1.0};
        for (const auto& e : rm.entries)
            for (int k = 0; k < e.multiplicity; ++k) {
                std::vector<Complex> next(rebuilt.size() + 1, Complex(0));
                for (std::size_t i = 0; i < rebuilt.size(); ++i) {
                    next[i + 1] += rebuilt[i];
                    next[i] -= rebuilt[i] * e.root;
                }
                rebuilt = std::move(next);
            }
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            CHECK(std::abs(rebuilt[i] - coeffs[i]) < 1e-8);
    }
}
