#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <coaxial/multipoly.hpp>

#include "helpers.hpp"

using coaxial::MultiPoly;
using coaxial::PolyOp;
using coaxial::Rational;

namespace {

MultiPoly var(const char* name) { return MultiPoly::variable(name); }

MultiPoly random_poly(std::mt19937_64& rng, const std::vector<std::string>& vars, int maxDeg,
                      int terms) {
    MultiPoly p;
    std::uniform_int_distribution<int> deg(0, maxDeg);
    for (int i = 0; i < terms; ++i) {
        MultiPoly mono(testutil::random_rational(rng, 9, 5));
        for (const auto& v : vars) mono *= MultiPoly::variable(v).pow(deg(rng));
        p += mono;
    }
    return p;
}

}  // namespace

TEST_CASE("product and identity") {
    MultiPoly x = var("x");
    CHECK(poly_arith(x + MultiPoly(1), x - MultiPoly(1), PolyOp::mul) ==
          x.pow(2) - MultiPoly(1));
    MultiPoly p = x.pow(3) - x * Rational(5) + MultiPoly(Rational(1, 2));
    CHECK(poly_arith(p, MultiPoly(), PolyOp::add) == p);
}

TEST_CASE("cube of a linear factor matches naive convolution") {
    MultiPoly x = var("x"), t = var("t");
    MultiPoly lin = x - t;
    MultiPoly cube = poly_arith(poly_arith(lin, lin, PolyOp::mul), lin, PolyOp::mul);
    // oracle: ternary convolution of (x - t) with itself, coefficients in t
    // (x-t)^3 = x^3 - 3tx^2 + 3t^2x - t^3 by convolving [-t, 1] three times
    MultiPoly expect = x.pow(3) - x.pow(2) * t * Rational(3) + x * t.pow(2) * Rational(3) -
                       t.pow(3);
    CHECK(cube == expect);
}

TEST_CASE("ring axioms on random triples") {
    std::mt19937_64 rng(20240811);
    for (int i = 0; i < 40; ++i) {
        MultiPoly p = random_poly(rng, {"x", "y"}, 3, 4);
        MultiPoly q = random_poly(rng, {"y", "z"}, 3, 4);
        MultiPoly r = random_poly(rng, {"x", "z"}, 3, 4);
        CHECK((p * q) * r == p * (q * r));
        CHECK(p * (q + r) == p * q + p * r);
        CHECK(p + q == q + p);
        CHECK((p - p).is_zero());
    }
}

TEST_CASE("exact division round-trips and rejects non-divisors") {
    std::mt19937_64 rng(98321);
    for (int i = 0; i < 25; ++i) {
        MultiPoly p = random_poly(rng, {"x", "y"}, 3, 3);
        MultiPoly q = random_poly(rng, {"x", "y"}, 2, 3);
        if (q.is_zero()) continue;
        CHECK((p * q).divide_exact(q) == p);
    }
    MultiPoly x = var("x");
    CHECK(!(x.pow(2) + MultiPoly(1)).try_divide_exact(x + MultiPoly(1)).has_value());
}

TEST_CASE("resultant of two linear polynomials") {
    MultiPoly lam = var("lambda"), a = var("a"), b = var("b");
    MultiPoly r = resultant_in(lam - a, lam - b, "lambda");
    bool matches = (r == a - b) || (r == b - a);
    CHECK(matches);
}

TEST_CASE("resultant eliminating lambda from the two-line configuration") {
    // eigenvalue lines lambda and lambda - (t/2 - 1/3)
    MultiPoly lam = var("lambda"), t = var("t");
    MultiPoly line = lam - (t * Rational(1, 2) - MultiPoly(Rational(1, 3)));
    MultiPoly r = resultant_in(lam, line, "lambda");
    MultiPoly expect = t * Rational(1, 2) - MultiPoly(Rational(1, 3));
    bool matches = (r == expect) || (r == -expect);
    CHECK(matches);
}

TEST_CASE("resultant of x^2+1 and x^2-1 is 4") {
    MultiPoly x = var("x");
    MultiPoly r = resultant_in(x.pow(2) + MultiPoly(1), x.pow(2) - MultiPoly(1), "x");
    // oracle: 4x4 Sylvester determinant by cofactor expansion
    MultiPoly zero, one(Rational(1)), mone(Rational(-1));
    std::vector<std::vector<MultiPoly>> syl = {
        {one, zero, one, zero},
        {zero, one, zero, one},
        {one, zero, mone, zero},
        {zero, one, zero, mone},
    };
    CHECK(testutil::cofactor_det(syl) == MultiPoly(4));
    CHECK(r == MultiPoly(4));
}

TEST_CASE("resultant vanishes exactly on a shared factor") {
    std::mt19937_64 rng(5150);
    MultiPoly x = var("x"), t = var("t");
    for (int i = 0; i < 10; ++i) {
        MultiPoly common = x - t * testutil::random_rational(rng, 5, 3) -
                           MultiPoly(testutil::random_rational(rng, 5, 3));
        MultiPoly p = common * (x - MultiPoly(testutil::random_rational(rng, 5, 3)));
        MultiPoly q = common * (x + t + MultiPoly(testutil::random_rational(rng, 5, 3)));
        CHECK(resultant_in(p, q, "x").is_zero());
        // and off the shared factor it does not vanish
        MultiPoly q2 = (x - t - MultiPoly(17)) * (x + t + MultiPoly(19));
        CHECK(!resultant_in(p, q2, "x").is_zero());
    }
}

TEST_CASE("resultant rejects constants in the eliminated variable") {
    MultiPoly x = var("x"), t = var("t");
    CHECK_THROWS_AS(resultant_in(t + MultiPoly(1), x + t, "x"), std::invalid_argument);
}

TEST_CASE("charpoly of a 1x1 matrix") {
    std::vector<MultiPoly> diag{var("b1")};
    MultiPoly p = tridiag_charpoly({}, diag, {});
    CHECK(p == var("lambda") - var("b1"));
}

TEST_CASE("charpoly of the theta=2 accessory matrix") {
    // entries for angles (1/3, 1/6, 1/2) with both signs negative, k = 0
    MultiPoly t = var("t");
    std::vector<MultiPoly> diag{MultiPoly(), t * Rational(1, 2) - MultiPoly(Rational(1, 3))};
    std::vector<MultiPoly> super{t * (t - MultiPoly(1)) * Rational(-1)};
    std::vector<MultiPoly> sub{MultiPoly()};
    MultiPoly p = tridiag_charpoly(sub, diag, super);
    MultiPoly lam = var("lambda");
    CHECK(p == lam * (lam - t * Rational(1, 2) + MultiPoly(Rational(1, 3))));
}

TEST_CASE("charpoly matches the dense determinant oracle on random tridiagonal matrices") {
    std::mt19937_64 rng(777);
    MultiPoly lam = var("lambda");
    for (int n : {2, 3, 4, 6, 8}) {
        std::vector<MultiPoly> diag, super, sub;
        for (int i = 0; i < n; ++i)
            diag.push_back(MultiPoly(testutil::random_rational(rng, 6, 4)));
        for (int i = 0; i + 1 < n; ++i) {
            super.push_back(MultiPoly(testutil::random_rational(rng, 6, 4)));
            sub.push_back(MultiPoly(testutil::random_rational(rng, 6, 4)));
        }
        MultiPoly p = tridiag_charpoly(sub, diag, super);
        std::vector<std::vector<MultiPoly>> m(static_cast<std::size_t>(n),
                                              std::vector<MultiPoly>(static_cast<std::size_t>(n)));
        for (int i = 0; i < n; ++i) {
            m[i][i] = lam - diag[static_cast<std::size_t>(i)];
            if (i + 1 < n) {
                m[i][i + 1] = -super[static_cast<std::size_t>(i)];
                m[i + 1][i] = -sub[static_cast<std::size_t>(i)];
            }
        }
        CHECK(p == testutil::cofactor_det(m));
    }
    CHECK_THROWS_AS(coaxial::tridiag_charpoly({}, {}, {}), std::invalid_argument);
    std::vector<MultiPoly> d2{MultiPoly(1), MultiPoly(2)};
    CHECK_THROWS_AS(coaxial::tridiag_charpoly({}, d2, {}), std::invalid_argument);
}

TEST_CASE("canonical string rendering") {
    MultiPoly x = var("x"), t = var("t");
    MultiPoly p = x.pow(2) * Rational(-1, 2) + t * Rational(3) - MultiPoly(Rational(2, 7));
    CHECK(p.str() == "-1/2*x^2 + 3*t - 2/7");
    CHECK(MultiPoly().str() == "0");
}
