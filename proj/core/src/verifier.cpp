#include "coaxial/verifier.hpp"

#include "quad_complex.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace coaxial {

DevelopingMap DevelopingMap::make(const AngleConfig& cfg, const Branch& branch,
                                  const AdmissibleZero& zero) {
    DevelopingMap dm;
    dm.thetaInf = cfg.thetaInf;
    dm.a = zero.a;
    dm.b = zero.b;
    auto posOf = [&](const Label& p) -> Complex {
        if (p == "0") return {0.0, 0.0};
        if (p == "1") return {1.0, 0.0};
        int j = std::stoi(p.substr(1));
        return zero.t.at(static_cast<std::size_t>(j - 1));
    };
    for (const Label& p : branch.J1)
        dm.factors.push_back({p, posOf(p), cfg.theta_of(p) * Rational(branch.signs.at(p))});
    for (const Label& p : cfg.t_labels()) {
        if (std::find(branch.J1.begin(), branch.J1.end(), p) != branch.J1.end()) continue;
        long alpha = static_cast<long>(cfg.theta_of(p).num().get_si()) - 1;
        dm.freePoints.push_back({p, posOf(p), alpha});
    }
    return dm;
}

std::vector<Complex> DevelopingMap::marked_points() const {
    std::vector<Complex> pts;
    for (const auto& f : factors) pts.push_back(f.pos);
    for (const auto& f : freePoints) pts.push_back(f.pos);
    pts.insert(pts.end(), a.begin(), a.end());
    pts.insert(pts.end(), b.begin(), b.end());
    return pts;
}

namespace {

// The partial-fraction sums below cancel by many orders of magnitude near the
// free points (h'/h vanishes to the order of the local exponent there), so
// they are accumulated in quadruple precision.
using Quad2 = detail::QuadComplex;

Quad2 pole_sum(const DevelopingMap& dm, const Complex& x, int order) {
    Quad2 acc;
    Quad2 xq(x);
    auto add = [&](const Complex& pos, double c) {
        Quad2 d = xq - Quad2(pos);
        Quad2 cq(c, 0);
        switch (order) {
            case 0: acc = acc + cq / d; break;
            case 1: acc = acc - cq / (d * d); break;
            default: acc = acc + Quad2(2, 0) * cq / (d * d * d); break;
        }
    };
    for (const auto& f : dm.factors) add(f.pos, f.exponent.to_double());
    for (const Complex& z : dm.a) add(z, 1.0);
    for (const Complex& z : dm.b) add(z, -1.0);
    return acc;
}

}  // namespace

Complex DevelopingMap::log_deriv(Complex x, int order) const {
    if (order < 0 || order > 2) throw std::invalid_argument("log_deriv: order must be 0..2");
    return pole_sum(*this, x, order).value();
}

Complex DevelopingMap::schwarzian_q(Complex x) const {
    Quad2 s = pole_sum(*this, x, 0);
    Quad2 s1 = pole_sum(*this, x, 1);
    Quad2 s2 = pole_sum(*this, x, 2);
    // Q = -(1/2){h,x} with {h,x} written through h'/h = s:
    // Q = s^2/4 + (3/4)(s'/s)^2 - s''/(2s)
    Quad2 r = s1 / s;
    Quad2 q = Quad2(0.25, 0) * (s * s) + Quad2(0.75, 0) * (r * r) - s2 / (Quad2(2, 0) * s);
    return q.value();
}

namespace {

// dense polynomial helpers over an arbitrary field scalar
template <typename T>
std::vector<T> mul_linear(std::vector<T> p, const T& root) {
    std::vector<T> out(p.size() + 1, T(0));
    for (std::size_t i = 0; i < p.size(); ++i) {
        out[i + 1] += p[i];
        out[i] -= p[i] * root;
    }
    return out;
}

template <typename T>
void add_scaled(std::vector<T>& acc, const std::vector<T>& p, const T& c) {
    if (acc.size() < p.size()) acc.resize(p.size(), T(0));
    for (std::size_t i = 0; i < p.size(); ++i) acc[i] += p[i] * c;
}

/// Expands the numerator G of h'/h for h = prod (x-p)^{c_p} prod(x-a)/prod(x-b):
/// G = [sum_p c_p prod_{q != p}(x-q)] A B + P [sum_k prod_{j != k}(x-a_j)] B
///   - P A [sum_k prod_{j != k}(x-b_j)], with P, A, B the plain products.
template <typename T>
std::vector<T> expand_g(const std::vector<std::pair<T, T>>& powerFactors,  // (pos, exponent)
                        const std::vector<T>& as, const std::vector<T>& bs) {
    auto productOf = [](const std::vector<T>& roots) {
        std::vector<T> p{T(1)};
        for (const T& r : roots) p = mul_linear(p, r);
        return p;
    };
    std::vector<T> jRoots, aRoots = as, bRoots = bs;
    for (const auto& f : powerFactors) jRoots.push_back(f.first);
    std::vector<T> P = productOf(jRoots), A = productOf(aRoots), B = productOf(bRoots);

    std::vector<T> sum1{T(0)};
    for (std::size_t i = 0; i < powerFactors.size(); ++i) {
        std::vector<T> part{T(1)};
        for (std::size_t q = 0; q < powerFactors.size(); ++q)
            if (q != i) part = mul_linear(part, powerFactors[q].first);
        add_scaled(sum1, part, powerFactors[i].second);
    }
    auto sumSkipOne = [&](const std::vector<T>& roots) {
        std::vector<T> s{T(0)};
        for (std::size_t k = 0; k < roots.size(); ++k) {
            std::vector<T> part{T(1)};
            for (std::size_t j = 0; j < roots.size(); ++j)
                if (j != k) part = mul_linear(part, roots[j]);
            add_scaled(s, part, T(1));
        }
        return s;
    };

    auto polyMul = [](const std::vector<T>& u, const std::vector<T>& v) {
        std::vector<T> out(u.size() + v.size() - 1, T(0));
        for (std::size_t i = 0; i < u.size(); ++i)
            for (std::size_t j = 0; j < v.size(); ++j) out[i + j] += u[i] * v[j];
        return out;
    };

    std::vector<T> g = polyMul(polyMul(sum1, A), B);
    add_scaled(g, polyMul(polyMul(P, sumSkipOne(aRoots)), B), T(1));
    add_scaled(g, polyMul(polyMul(P, sumSkipOne(bRoots)), A), T(-1));
    while (g.size() > 1 && g.back() == T(0)) g.pop_back();
    return g;
}

}  // namespace

CheckResult check_g_identity(const DevelopingMap& dm) {
    std::vector<std::pair<Complex, Complex>> pf;
    for (const auto& f : dm.factors)
        pf.emplace_back(f.pos, Complex(f.exponent.to_double(), 0.0));
    std::vector<Complex> g = expand_g<Complex>(pf, dm.a, dm.b);

    std::vector<Complex> rhs{Complex(-dm.thetaInf.to_double(), 0.0)};
    for (const auto& f : dm.freePoints)
        for (long i = 0; i < f.alpha; ++i) rhs = mul_linear(rhs, f.pos);

    CheckResult res;
    double scale = 0.0;
    for (const Complex& c : rhs) scale = std::max(scale, std::abs(c));
    scale = std::max(scale, 1.0);
    std::size_t n = std::max(g.size(), rhs.size());
    for (std::size_t i = 0; i < n; ++i) {
        Complex lv = i < g.size() ? g[i] : Complex(0.0);
        Complex rv = i < rhs.size() ? rhs[i] : Complex(0.0);
        res.max_deviation = std::max(res.max_deviation, std::abs(lv - rv) / scale);
    }
    res.ok = res.max_deviation <= 1e-9;
    if (!res.ok) res.detail = "coefficient mismatch in the log-derivative numerator";
    return res;
}

CheckResult check_g_identity_exact(const AngleConfig& cfg, const Branch& branch,
                                   const std::vector<Rational>& aVals,
                                   const std::vector<Rational>& bVals,
                                   const std::vector<Rational>& tVals) {
    auto posOf = [&](const Label& p) -> Rational {
        if (p == "0") return Rational(0);
        if (p == "1") return Rational(1);
        int j = std::stoi(p.substr(1));
        return tVals.at(static_cast<std::size_t>(j - 1));
    };
    std::vector<std::pair<Rational, Rational>> pf;
    for (const Label& p : branch.J1)
        pf.emplace_back(posOf(p), cfg.theta_of(p) * Rational(branch.signs.at(p)));
    std::vector<Rational> g = expand_g<Rational>(pf, aVals, bVals);

    std::vector<Rational> rhs{-cfg.thetaInf};
    for (const Label& p : cfg.t_labels()) {
        if (std::find(branch.J1.begin(), branch.J1.end(), p) != branch.J1.end()) continue;
        long alpha = static_cast<long>(cfg.theta_of(p).num().get_si()) - 1;
        for (long i = 0; i < alpha; ++i) rhs = mul_linear(rhs, posOf(p));
    }
    CheckResult res;
    res.ok = true;
    std::size_t n = std::max(g.size(), rhs.size());
    for (std::size_t i = 0; i < n; ++i) {
        Rational lv = i < g.size() ? g[i] : Rational(0);
        Rational rv = i < rhs.size() ? rhs[i] : Rational(0);
        if (!(lv == rv)) {
            res.ok = false;
            res.max_deviation = std::max(res.max_deviation, (lv - rv).abs().to_double());
        }
    }
    if (!res.ok) res.detail = "exact coefficient mismatch";
    return res;
}

CheckResult check_schwarzian(const DevelopingMap& dm, const std::vector<Complex>& samples,
                             std::vector<std::pair<Label, Complex>>* dOut,
                             double* momentDevOut) {
    std::vector<Complex> marked = dm.marked_points();
    for (const Complex& s : samples)
        for (const Complex& p : marked)
            if (std::abs(s - p) < 0.1)
                throw std::invalid_argument("check_schwarzian: sample too close to a singular point");

    struct Pole {
        Label label;
        Complex pos;
        Rational betaExact;
    };
    std::vector<Pole> poles;
    for (const auto& f : dm.factors) {
        Rational theta = f.exponent.abs();
        poles.push_back({f.label, f.pos, (theta * theta - Rational(1)) / Rational(4)});
    }
    for (const auto& f : dm.freePoints) {
        Rational theta(f.alpha + 1);
        poles.push_back({f.label, f.pos, (theta * theta - Rational(1)) / Rational(4)});
    }

    // residues by contour quadrature on small circles (trapezoid rule is
    // exponentially accurate for Laurent series)
    const int K = 64;
    std::vector<Complex> dRec(poles.size());
    std::vector<Complex> betaRec(poles.size());
    CheckResult res;
    for (std::size_t i = 0; i < poles.size(); ++i) {
        double rho = 1e9;
        for (const Complex& q : marked)
            if (std::abs(q - poles[i].pos) > 1e-12)
                rho = std::min(rho, std::abs(q - poles[i].pos));
        rho = std::min(rho / 4.0, 0.25);
        Complex d = 0.0, beta = 0.0;
        for (int k = 0; k < K; ++k) {
            Complex w = std::polar(1.0, 2.0 * std::numbers::pi * k / K);
            Complex q = dm.schwarzian_q(poles[i].pos + rho * w);
            d += q * rho * w;
            beta += q * rho * rho * w * w;
        }
        dRec[i] = d / static_cast<double>(K);
        betaRec[i] = beta / static_cast<double>(K);
        res.max_deviation = std::max(
            res.max_deviation, std::abs(betaRec[i] - Complex(poles[i].betaExact.to_double())));
    }

    Complex sumD = 0.0, moment = 0.0;
    for (std::size_t i = 0; i < poles.size(); ++i) {
        sumD += dRec[i];
        moment += Complex(poles[i].betaExact.to_double()) + poles[i].pos * dRec[i];
    }
    moment -= Complex(((dm.thetaInf * dm.thetaInf - Rational(1)) / Rational(4)).to_double());
    double momentDev = std::max(std::abs(sumD), std::abs(moment));
    if (momentDevOut) *momentDevOut = momentDev;
    if (dOut) {
        dOut->clear();
        for (std::size_t i = 0; i < poles.size(); ++i) dOut->emplace_back(poles[i].label, dRec[i]);
    }

    double sampleDev = 0.0;
    for (const Complex& x : samples) {
        Complex direct = dm.schwarzian_q(x);
        Complex pf = 0.0;
        for (std::size_t i = 0; i < poles.size(); ++i) {
            Complex d = x - poles[i].pos;
            pf += Complex(poles[i].betaExact.to_double()) / (d * d) + dRec[i] / d;
        }
        sampleDev = std::max(sampleDev, std::abs(direct - pf));
    }
    res.max_deviation = std::max(res.max_deviation, sampleDev);
    res.ok = sampleDev <= 1e-8 && momentDev <= 1e-9;
    if (!res.ok) res.detail = "normal form disagrees with the direct Schwarzian";
    return res;
}

CheckResult check_asymptotics(const DevelopingMap& dm) {
    CheckResult res;
    // exact exponent bookkeeping: sum of power exponents + #zeros - #poles = -thetaInf
    Rational expSum(0);
    for (const auto& f : dm.factors) expSum += f.exponent;
    expSum += Rational(static_cast<long>(dm.a.size())) - Rational(static_cast<long>(dm.b.size()));
    if (!(expSum == -dm.thetaInf)) {
        res.ok = false;
        res.detail = "exponent sum violates the normalization at infinity";
        res.max_deviation = (expSum + dm.thetaInf).abs().to_double();
        return res;
    }

    // numeric decay: x^thetaInf h(x) -> 1 and the matching ratio for h'
    struct Pt {
        Complex pos;
        double c;
    };
    std::vector<Pt> pts;
    for (const auto& f : dm.factors) pts.push_back({f.pos, f.exponent.to_double()});
    for (const Complex& z : dm.a) pts.push_back({z, 1.0});
    for (const Complex& z : dm.b) pts.push_back({z, -1.0});
    double c1 = 1.0;
    for (const auto& p : pts) c1 += std::abs(p.c) * std::abs(p.pos);
    const double bound = 8.0 * c1;
    const double thetaInf = dm.thetaInf.to_double();

    res.ok = true;
    for (double radius : {1e2, 1e3, 1e4}) {
        Complex x = std::polar(radius, 0.37);
        Complex logSum = 0.0;
        for (const auto& p : pts) logSum += p.c * std::log(1.0 - p.pos / x);
        Complex v = std::exp(logSum);  // x^thetaInf h(x)
        double dev = std::abs(v - 1.0);
        Complex ratio = v * (x * dm.log_deriv(x, 0)) / (-thetaInf);
        double dev2 = std::abs(ratio - 1.0);
        res.max_deviation = std::max({res.max_deviation, dev * radius / c1, dev2 * radius / c1});
        if (dev > bound / radius || dev2 > bound / radius) res.ok = false;
    }
    if (!res.ok && res.detail.empty()) res.detail = "decay at infinity outside the O(1/|x|) bound";
    return res;
}

std::vector<Complex> default_samples(const DevelopingMap& dm, std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed ^ 0xa0761d6478bd642full);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::vector<Complex> marked = dm.marked_points();
    std::vector<Complex> out;
    int attempts = 0;
    while (static_cast<int>(out.size()) < count && attempts < 10000) {
        ++attempts;
        Complex x = Complex(0.5, 0.0) + std::polar(3.0, angle(rng));
        bool ok = true;
        for (const Complex& p : marked)
            if (std::abs(x - p) < 0.15) ok = false;
        if (ok) out.push_back(x);
    }
    if (static_cast<int>(out.size()) < count)
        throw std::runtime_error("default_samples: could not place samples away from singularities");
    return out;
}

VerificationReport verify(const DevelopingMap& dm, std::uint64_t seed) {
    VerificationReport rep;
    rep.gIdentity = check_g_identity(dm);
    rep.schwarzian =
        check_schwarzian(dm, default_samples(dm, seed), &rep.dResiduals, &rep.momentDeviation);
    rep.asymptotic = check_asymptotics(dm);
    return rep;
}

}  // namespace coaxial
