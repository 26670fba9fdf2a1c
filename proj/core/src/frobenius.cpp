#include "coaxial/frobenius.hpp"

#include <algorithm>
#include <stdexcept>

namespace coaxial {

QTemplate QTemplate::make(const AngleConfig& cfg,
                          const std::map<Label, Rational>& numericPositions) {
    QTemplate t;
    t.points = {"0", "1"};
    for (const Label& p : cfg.t_labels()) t.points.push_back(p);

    auto betaOf = [](const Rational& theta) {
        return (theta * theta - Rational(1)) / Rational(4);
    };
    t.beta["0"] = betaOf(cfg.theta0);
    t.beta["1"] = betaOf(cfg.theta1);
    t.betaInf = betaOf(cfg.thetaInf);
    for (const Label& p : cfg.t_labels()) t.beta[p] = betaOf(cfg.theta_of(p));

    t.position["0"] = MultiPoly(Rational(0));
    t.position["1"] = MultiPoly(Rational(1));
    const int nm = cfg.n() + cfg.m();
    for (int j = 1; j <= nm; ++j) {
        Label p = cfg.t_label(j);
        auto it = numericPositions.find(p);
        if (it != numericPositions.end()) {
            if (it->second.is_zero() || it->second == Rational(1))
                throw std::invalid_argument("QTemplate: movable point collides with 0 or 1");
            t.position[p] = MultiPoly(it->second);
        } else if (nm <= 3) {
            t.position[p] = MultiPoly::variable(p);
        } else {
            throw std::invalid_argument(
                "QTemplate: positions must be numeric rationals for n+m > 3");
        }
    }
    for (int j = 1; j <= nm; ++j) t.freeD.push_back(t.d_name(j));
    for (int j = cfg.n() + 1; j <= nm; ++j) {
        Label p = cfg.t_label(j);
        t.intTheta[p] = cfg.ints[static_cast<std::size_t>(j - cfg.n() - 1)];
    }

    // eliminate d_1 and d_0 from the two moment constraints
    Rational betaSum = t.beta.at("0") + t.beta.at("1");
    for (const Label& p : cfg.t_labels()) betaSum += t.beta.at(p);
    MultiPoly d1(t.betaInf - betaSum);
    MultiPoly dSum;
    for (int j = 1; j <= nm; ++j) {
        Label p = cfg.t_label(j);
        MultiPoly dj = MultiPoly::variable(t.d_name(j));
        d1 -= t.position.at(p) * dj;
        dSum += dj;
    }
    MultiPoly d0 = -d1 - dSum;
    t.dExpr["0"] = std::move(d0);
    t.dExpr["1"] = std::move(d1);
    for (int j = 1; j <= nm; ++j)
        t.dExpr[cfg.t_label(j)] = MultiPoly::variable(t.d_name(j));
    return t;
}

MultiPoly QTemplate::denom_base(const Label& center) const {
    MultiPoly d(Rational(1));
    const MultiPoly& c = pos(center);
    for (const Label& p : points) {
        if (p == center) continue;
        d *= c - pos(p);
    }
    return d;
}

std::vector<LaurentCoeff> laurent_coeffs(const QTemplate& tmpl, const Label& center, int count) {
    if (count < 2) throw std::invalid_argument("laurent_coeffs: count must be >= 2");
    if (std::find(tmpl.points.begin(), tmpl.points.end(), center) == tmpl.points.end())
        throw std::invalid_argument("laurent_coeffs: unknown center " + center);
    std::vector<LaurentCoeff> eta;
    eta.push_back({MultiPoly(tmpl.beta.at(center)), 0});
    eta.push_back({tmpl.dExpr.at(center), 0});

    const MultiPoly& c = tmpl.pos(center);
    // diffs[p] = c - p for the other points
    std::vector<std::pair<Label, MultiPoly>> diffs;
    for (const Label& p : tmpl.points)
        if (p != center) diffs.emplace_back(p, c - tmpl.pos(p));

    for (int j = 2; j <= count; ++j) {
        MultiPoly num;
        for (std::size_t i = 0; i < diffs.size(); ++i) {
            const Label& p = diffs[i].first;
            MultiPoly local =
                MultiPoly(tmpl.beta.at(p) * Rational(j - 1)) + tmpl.dExpr.at(p) * diffs[i].second;
            for (std::size_t q = 0; q < diffs.size(); ++q)
                if (q != i) local *= diffs[q].second.pow(j);
            num += local;
        }
        if (j % 2 != 0) num = -num;
        eta.push_back({std::move(num), j});
    }
    return eta;
}

std::vector<LaurentCoeff> frobenius_coeffs(const QTemplate& tmpl, const Label& center) {
    auto it = tmpl.intTheta.find(center);
    if (it == tmpl.intTheta.end())
        throw std::invalid_argument("frobenius_coeffs: " + center + " is not an integer-angle point");
    const long theta = it->second;
    const MultiPoly D = tmpl.denom_base(center);
    std::vector<LaurentCoeff> eta = laurent_coeffs(tmpl, center, static_cast<int>(theta));

    std::vector<LaurentCoeff> c;
    c.push_back({MultiPoly(Rational(1)), 0});
    for (long j = 1; j < theta; ++j) {
        MultiPoly rhs;
        for (long k = 0; k < j; ++k) {
            const LaurentCoeff& e = eta[static_cast<std::size_t>(j - k)];
            const LaurentCoeff& ck = c[static_cast<std::size_t>(k)];
            int scale = static_cast<int>(j) - e.denomPower - ck.denomPower;
            MultiPoly term = e.numerator * ck.numerator;
            if (scale > 0) term *= D.pow(scale);
            rhs += term;
        }
        Rational divisor = Rational(j) * Rational(j - theta);  // nonzero for j < theta
        c.push_back({rhs / divisor, static_cast<int>(j)});
    }
    return c;
}

ApparencyPoly apparency_polynomial(const QTemplate& tmpl, const Label& center) {
    auto it = tmpl.intTheta.find(center);
    if (it == tmpl.intTheta.end())
        throw std::invalid_argument("apparency_polynomial: " + center +
                                    " is not an integer-angle point");
    const long theta = it->second;
    const MultiPoly D = tmpl.denom_base(center);
    std::vector<LaurentCoeff> eta = laurent_coeffs(tmpl, center, static_cast<int>(theta));
    std::vector<LaurentCoeff> c = frobenius_coeffs(tmpl, center);

    // obstruction at order theta, over the common denominator D^theta
    MultiPoly obstruction;
    for (long k = 0; k < theta; ++k) {
        const LaurentCoeff& e = eta[static_cast<std::size_t>(theta - k)];
        const LaurentCoeff& ck = c[static_cast<std::size_t>(k)];
        int scale = static_cast<int>(theta) - e.denomPower - ck.denomPower;
        MultiPoly term = e.numerator * ck.numerator;
        if (scale > 0) term *= D.pow(scale);
        obstruction += term;
    }

    ApparencyPoly out;
    out.center = center;
    // strip every position-difference factor so the result is coprime to them
    for (const Label& p : tmpl.points) {
        if (p == center) continue;
        MultiPoly factor = tmpl.pos(center) - tmpl.pos(p);
        int stripped = 0;
        if (!factor.is_constant()) {
            while (true) {
                auto q = obstruction.try_divide_exact(factor);
                if (!q) break;
                obstruction = std::move(*q);
                ++stripped;
            }
        }
        out.clearedPowers[p] = static_cast<int>(theta) - stripped;
    }
    Rational content = obstruction.content();
    if (!content.is_zero()) obstruction = obstruction / content;
    out.poly = std::move(obstruction);
    return out;
}

ApparencySystem apparency_system(const QTemplate& tmpl) {
    ApparencySystem sys;
    for (const Label& p : tmpl.points)
        if (tmpl.intTheta.count(p)) sys.polys.push_back(apparency_polynomial(tmpl, p));
    return sys;
}

}  // namespace coaxial
