#include "coaxial/heun.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace coaxial {

HeunConfig HeunConfig::make(Rational th0, Rational th1, Rational thInf, int e0, int e1,
                            long theta) {
    auto positive_nonint = [](const Rational& r, const char* who) {
        if (r.sign() <= 0 || r.is_integer())
            throw std::invalid_argument(std::string(who) + ": must be positive non-integer");
    };
    positive_nonint(th0, "theta0");
    positive_nonint(th1, "theta1");
    positive_nonint(thInf, "thetaInf");
    if (theta < 2) throw std::invalid_argument("HeunConfig: theta must be >= 2");
    if (std::abs(e0) != 1 || std::abs(e1) != 1)
        throw std::invalid_argument("HeunConfig: signs must be +-1");
    Rational kr = thInf + th0 * Rational(e0) + th1 * Rational(e1);
    if (!kr.is_integer())
        throw std::invalid_argument("HeunConfig: thetaInf + eps0*theta0 + eps1*theta1 not an integer");
    long k = static_cast<long>(kr.num().get_si());
    if (((theta - k) % 2 + 2) % 2 != 0)
        throw std::invalid_argument("HeunConfig: theta and k must have equal parity");

    HeunConfig cfg;
    cfg.theta0 = std::move(th0);
    cfg.theta1 = std::move(th1);
    cfg.thetaInf = std::move(thInf);
    cfg.eps0 = e0;
    cfg.eps1 = e1;
    cfg.theta = theta;
    cfg.k = k;
    cfg.alpha0 = cfg.theta0 * Rational(e0) - Rational(1);
    cfg.alpha1 = cfg.theta1 * Rational(e1) - Rational(1);
    cfg.alphaInf = cfg.thetaInf - Rational(1);
    cfg.alphaT = Rational(theta - 1);
    Rational sum = cfg.alpha0 + cfg.alpha1 + cfg.alphaT + cfg.alphaInf;
    cfg.alphaPrime = -sum / Rational(2) - Rational(1);
    cfg.alphaDoublePrime = (cfg.alphaInf - cfg.alpha0 - cfg.alpha1 - cfg.alphaT) / Rational(2);
    return cfg;
}

MatrixEntries build_entries(const HeunConfig& cfg) {
    MatrixEntries e;
    const MultiPoly t = MultiPoly::variable("t");
    const MultiPoly one(Rational(1));
    const MultiPoly tt1 = t * (t - one);
    const Rational aa = cfg.alphaPrime * cfg.alphaDoublePrime;

    for (long j = 1; j < cfg.theta; ++j)
        e.superA.push_back(tt1 * Rational(j * (j - cfg.theta)));
    for (long j = 1; j <= cfg.theta; ++j) {
        MultiPoly bj = (t * Rational(2) - one) * Rational((j - 1) * (j - 2));
        MultiPoly bracket = (t - one) * cfg.alpha0 + t * cfg.alpha1 +
                            (t * Rational(2) - one) * cfg.alphaT;
        bj -= bracket * Rational(j - 1);
        bj += t * aa;
        e.diagB.push_back(std::move(bj));
    }
    for (long j = 2; j <= cfg.theta; ++j) {
        Rational dj = Rational((j - 2) * (j - 3)) -
                      (cfg.alpha0 + cfg.alpha1 + cfg.alphaT) * Rational(j - 2) + aa;
        e.subD.push_back(dj);
    }
    return e;
}

Rational subdiag_closed_form(const HeunConfig& cfg, long j) {
    Rational u = Rational(2 * j - cfg.k - cfg.theta - 2);
    Rational v = Rational(2 * j - cfg.k - cfg.theta - 2) + cfg.thetaInf * Rational(2);
    return u * v / Rational(4);
}

namespace {

MultiPoly charpoly_block(const MatrixEntries& e, std::size_t lo, std::size_t hi) {
    // rows/cols lo..hi (0-based, inclusive) of the tridiagonal matrix
    std::vector<MultiPoly> diag(e.diagB.begin() + static_cast<long>(lo),
                                e.diagB.begin() + static_cast<long>(hi) + 1);
    std::vector<MultiPoly> super, sub;
    for (std::size_t j = lo; j < hi; ++j) {
        super.push_back(e.superA[j]);
        sub.push_back(MultiPoly(e.subD[j]));  // subD[j] couples rows j+1, j+2 (1-based D_{j+2})
    }
    return tridiag_charpoly(sub, diag, super);
}

}  // namespace

CharPolySplit split_charpoly(const HeunConfig& cfg, const MatrixEntries& entries) {
    CharPolySplit out;
    const std::size_t n = static_cast<std::size_t>(cfg.theta);
    out.P = charpoly_block(entries, 0, n - 1);

    if (std::labs(cfg.k) < cfg.theta) {
        const long cut = (cfg.k + cfg.theta) / 2;  // leading block size
        out.blockIndex = cut + 1;
        // the sub-diagonal entry D_{cut+1} vanishes there
        out.Pc = charpoly_block(entries, 0, static_cast<std::size_t>(cut) - 1);
        out.Pb = charpoly_block(entries, static_cast<std::size_t>(cut), n - 1);
    } else if (cfg.k >= cfg.theta) {
        out.Pb = MultiPoly(Rational(1));
        out.Pc = out.P;
    } else {
        out.Pc = MultiPoly(Rational(1));
        out.Pb = out.P;
    }
    if (!(out.Pb * out.Pc == out.P))
        throw std::logic_error("split_charpoly: block factorization failed");
    return out;
}

namespace {

/// Divides p (univariate in lambda) by the linear factors (lambda - r_j); true
/// when they exhaust p exactly.
bool splits_into(const MultiPoly& p, const std::vector<Rational>& roots, long& failing) {
    MultiPoly rem = p;
    const MultiPoly lam = MultiPoly::variable("lambda");
    for (std::size_t j = 0; j < roots.size(); ++j) {
        auto q = rem.try_divide_exact(lam - MultiPoly(roots[j]));
        if (!q) {
            failing = static_cast<long>(j + 1);
            return false;
        }
        rem = std::move(*q);
    }
    if (!rem.is_constant()) {
        failing = static_cast<long>(roots.size());
        return false;
    }
    return true;
}

}  // namespace

LimitCheckReport limit_checks(const HeunConfig& cfg, const CharPolySplit& split) {
    LimitCheckReport rep;
    // t = 0: roots are (j-1)(alpha0 + alphaT - j + 2)
    MultiPoly p0 = split.P.substitute("t", MultiPoly(Rational(0)));
    std::vector<Rational> roots0;
    for (long j = 1; j <= cfg.theta; ++j)
        roots0.push_back(Rational(j - 1) * (cfg.alpha0 + cfg.alphaT - Rational(j - 2)));
    rep.at_zero_ok = splits_into(p0, roots0, rep.failing_j);

    // leading form: sum of terms with deg_lambda + deg_t = theta, at t = 1
    MultiPoly pinf;
    for (const auto& [e, c] : split.P.terms()) {
        int total = 0;
        for (int x : e) total += x;
        if (total == cfg.theta) {
            MultiPoly::Exponents ne = e;
            MultiPoly term(c);
            for (std::size_t i = 0; i < split.P.vars().size(); ++i)
                if (ne[i] > 0 && split.P.vars()[i] == "lambda")
                    term *= MultiPoly::variable("lambda").pow(ne[i]);
            pinf += term;
        }
    }
    Rational beta0 = (cfg.theta0 * cfg.theta0 - Rational(1)) / Rational(4);
    Rational beta1 = (cfg.theta1 * cfg.theta1 - Rational(1)) / Rational(4);
    Rational betaInf = (cfg.thetaInf * cfg.thetaInf - Rational(1)) / Rational(4);
    Rational betaT = (Rational(cfg.theta) * Rational(cfg.theta) - Rational(1)) / Rational(4);
    std::vector<Rational> rootsInf;
    for (long j = 1; j <= cfg.theta; ++j) {
        Rational lj = Rational(j - 1) * (cfg.alphaInf + cfg.alphaT - Rational(j - 2)) - betaInf -
                      betaT + beta0 + beta1 + cfg.alpha0 * cfg.alpha1 / Rational(2) -
                      cfg.alphaT * cfg.alphaInf / Rational(2);
        rootsInf.push_back(lj);
    }
    long failInf = 0;
    rep.at_infinity_ok = splits_into(pinf, rootsInf, failInf);
    if (!rep.at_infinity_ok && rep.failing_j == 0) rep.failing_j = failInf;
    return rep;
}

LocusResult locus(const HeunConfig& cfg, const RootOptions& opt) {
    LocusResult out;
    out.predicted =
        cfg.theta <= std::labs(cfg.k) ? 0 : (cfg.theta * cfg.theta - cfg.k * cfg.k) / 4;

    MatrixEntries entries = build_entries(cfg);
    CharPolySplit split = split_charpoly(cfg, entries);
    if (split.Pb.is_constant() || split.Pc.is_constant()) {
        out.resT = MultiPoly(Rational(1));
        return out;  // theta <= |k|: empty locus
    }
    out.resT = resultant_in(split.Pb, split.Pc, "lambda");
    if (out.resT.is_zero()) {
        out.gcdNontrivial = true;
        return out;
    }
    if (out.resT.total_degree() != out.predicted)
        throw std::logic_error("locus: eliminant degree disagrees with the degree count");

    RootMultiset rm = find_roots(univariate_coeffs(out.resT), opt);
    for (const auto& e : rm.entries) {
        LocusRoot r;
        r.t = e.root;
        r.multiplicity = e.multiplicity;
        r.nearExcluded = std::abs(e.root) < 1e-8 || std::abs(e.root - Complex(1.0)) < 1e-8;
        // lambda fiber over this t: common eigenvalues of the two blocks
        std::map<std::string, Complex> at{{"t", e.root}};
        auto lamRoots = [&](const MultiPoly& p) {
            std::vector<Complex> cs;
            for (const MultiPoly& c : p.coeffs_in("lambda")) cs.push_back(c.eval(at));
            return find_roots(cs, opt);
        };
        RootMultiset rb = lamRoots(split.Pb), rc = lamRoots(split.Pc);
        for (const auto& x : rb.entries)
            for (const auto& y : rc.entries)
                if (std::abs(x.root - y.root) < 1e-6) ++r.fiberSize;
        out.roots.push_back(r);
        out.cardinality += e.multiplicity;
    }
    return out;
}

std::pair<Complex, Complex> closed_form_theta3(const HeunConfig& cfg) {
    if (cfg.theta != 3 || std::labs(cfg.k) != 1)
        throw std::invalid_argument("closed_form_theta3: requires theta = 3, |k| = 1");
    // sign-absorbed angles
    double th0 = (cfg.theta0 * Rational(cfg.eps0)).to_double();
    double th1 = (cfg.theta1 * Rational(cfg.eps1)).to_double();
    double thInf = cfg.thetaInf.to_double();
    Complex disc = -static_cast<double>(cfg.k) * th0 * th1 * thInf;
    Complex s = std::sqrt(disc);
    Complex denom = (th0 + th1) * thInf;
    return {(th0 * thInf + s) / denom, (th0 * thInf - s) / denom};
}

}  // namespace coaxial
