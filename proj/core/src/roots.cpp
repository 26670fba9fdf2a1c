#include "coaxial/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace coaxial {

namespace qpoly {

std::vector<Rational> trim(std::vector<Rational> p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
    return p;
}

int degree(const std::vector<Rational>& p) {
    for (std::size_t i = p.size(); i > 0; --i)
        if (!p[i - 1].is_zero()) return static_cast<int>(i - 1);
    return -1;
}

std::vector<Rational> derivative(const std::vector<Rational>& p) {
    std::vector<Rational> d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rational(static_cast<long>(i)));
    return trim(std::move(d));
}

std::pair<std::vector<Rational>, std::vector<Rational>> divmod(const std::vector<Rational>& a,
                                                               const std::vector<Rational>& b) {
    std::vector<Rational> r = trim(a);
    std::vector<Rational> bb = trim(b);
    if (bb.empty()) throw std::invalid_argument("qpoly::divmod: zero divisor");
    int db = static_cast<int>(bb.size()) - 1;
    if (static_cast<int>(r.size()) - 1 < db) return {{}, r};
    std::vector<Rational> q(r.size() - bb.size() + 1, Rational(0));
    Rational lead = bb.back();
    while (static_cast<int>(r.size()) - 1 >= db && !r.empty()) {
        int dr = static_cast<int>(r.size()) - 1;
        Rational c = r.back() / lead;
        q[static_cast<std::size_t>(dr - db)] = c;
        for (int i = 0; i <= db; ++i)
            r[static_cast<std::size_t>(dr - db + i)] -= c * bb[static_cast<std::size_t>(i)];
        r = trim(std::move(r));
    }
    return {trim(std::move(q)), r};
}

std::vector<Rational> gcd(std::vector<Rational> a, std::vector<Rational> b) {
    a = trim(std::move(a));
    b = trim(std::move(b));
    while (!b.empty()) {
        auto [q, r] = divmod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.empty()) return a;
    Rational lead = a.back();
    for (auto& c : a) c /= lead;
    return a;
}

std::vector<std::vector<Rational>> squarefree(const std::vector<Rational>& p) {
    std::vector<Rational> f = trim(p);
    if (degree(f) < 1) return {};
    std::vector<Rational> fp = derivative(f);
    std::vector<Rational> a0 = gcd(f, fp);
    if (degree(a0) == 0) {
        Rational lead = f.back();
        std::vector<Rational> mono = f;
        for (auto& c : mono) c /= lead;
        return {mono};
    }
    // Yun's algorithm
    std::vector<Rational> b = divmod(f, a0).first;
    std::vector<Rational> c = divmod(fp, a0).first;
    std::vector<Rational> d = trim([&] {
        std::vector<Rational> bp = derivative(b);
        std::vector<Rational> r(std::max(c.size(), bp.size()), Rational(0));
        for (std::size_t i = 0; i < c.size(); ++i) r[i] += c[i];
        for (std::size_t i = 0; i < bp.size(); ++i) r[i] -= bp[i];
        return r;
    }());
    std::vector<std::vector<Rational>> out;
    while (degree(b) >= 1) {
        std::vector<Rational> ai = gcd(b, d);
        out.push_back(ai);
        b = divmod(b, ai).first;
        std::vector<Rational> cNext = divmod(d, ai).first;
        std::vector<Rational> bp = derivative(b);
        std::vector<Rational> r(std::max(cNext.size(), bp.size()), Rational(0));
        for (std::size_t i = 0; i < cNext.size(); ++i) r[i] += cNext[i];
        for (std::size_t i = 0; i < bp.size(); ++i) r[i] -= bp[i];
        d = trim(std::move(r));
    }
    return out;
}

}  // namespace qpoly

namespace {

Complex horner(const std::vector<Complex>& c, Complex z) {
    Complex acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

double coeff_scale(const std::vector<Complex>& c, double zAbs) {
    double s = 0.0, p = 1.0;
    for (const Complex& x : c) {
        s += std::abs(x) * p;
        p *= std::max(zAbs, 1e-300);
    }
    return std::max(s, 1e-300);
}

// Core Aberth-Ehrlich iteration on a polynomial with nonzero constant and
// leading coefficients. Returns raw (unclustered) roots.
std::vector<Complex> aberth(const std::vector<Complex>& coeffs, const RootOptions& opt) {
    const int n = static_cast<int>(coeffs.size()) - 1;
    std::vector<Complex> dcoeffs;
    for (int i = 1; i <= n; ++i)
        dcoeffs.push_back(coeffs[static_cast<std::size_t>(i)] * static_cast<double>(i));

    // initial guesses on a circle between the root radius bounds, detuned angles
    double lead = std::abs(coeffs.back());
    double rmax = 0.0;
    for (int i = 0; i < n; ++i)
        rmax = std::max(rmax, std::pow(std::abs(coeffs[static_cast<std::size_t>(i)]) / lead,
                                       1.0 / static_cast<double>(n - i)));
    double r = std::max(2.0 * rmax, 0.5);
    std::vector<Complex> z(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double ang = 2.0 * std::numbers::pi * static_cast<double>(i) / n + 0.45;
        z[static_cast<std::size_t>(i)] = std::polar(r, ang);
    }

    for (int iter = 0; iter < opt.max_iterations; ++iter) {
        double worst = 0.0;
        for (int i = 0; i < n; ++i) {
            Complex zi = z[static_cast<std::size_t>(i)];
            Complex pv = horner(coeffs, zi);
            if (std::abs(pv) <= 1e-3 * opt.residual_tol * coeff_scale(coeffs, std::abs(zi)))
                continue;
            Complex dv = horner(dcoeffs, zi);
            if (dv == Complex(0.0)) {
                z[static_cast<std::size_t>(i)] += Complex(1e-6, 1e-6);
                worst = 1.0;
                continue;
            }
            Complex newton = pv / dv;
            Complex rep = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                Complex diff = zi - z[static_cast<std::size_t>(j)];
                if (std::abs(diff) < 1e-150) diff = Complex(1e-150, 0.0);
                rep += 1.0 / diff;
            }
            Complex denom = 1.0 - newton * rep;
            Complex step = std::abs(denom) < 1e-150 ? newton : newton / denom;
            z[static_cast<std::size_t>(i)] -= step;
            worst = std::max(worst, std::abs(step) / (1.0 + std::abs(zi)));
        }
        if (worst < 1e-15) break;
    }

    // final Newton polish and residual gate
    bool ok = true;
    for (int i = 0; i < n; ++i) {
        Complex& zi = z[static_cast<std::size_t>(i)];
        for (int it = 0; it < 8; ++it) {
            Complex pv = horner(coeffs, zi);
            Complex dv = horner(dcoeffs, zi);
            if (std::abs(dv) < 1e-150) break;
            Complex step = pv / dv;
            if (std::abs(step) > 0.5 * (1.0 + std::abs(zi))) break;
            zi -= step;
        }
        double res = std::abs(horner(coeffs, zi));
        if (!(res <= opt.residual_tol * coeff_scale(coeffs, std::abs(zi)))) ok = false;
        if (!std::isfinite(zi.real()) || !std::isfinite(zi.imag())) ok = false;
    }
    if (!ok)
        throw RootFindingError("find_roots: Aberth iteration did not reach residual tolerance",
                               z);
    return z;
}

void cluster_into(RootMultiset& out, const std::vector<Complex>& raw, int multiplicity,
                  double radius) {
    std::vector<Complex> pts = raw;
    std::vector<bool> used(pts.size(), false);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (used[i]) continue;
        Complex sum = pts[i];
        int count = 1;
        used[i] = true;
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            if (used[j]) continue;
            if (std::abs(pts[j] - pts[i]) <= radius) {
                sum += pts[j];
                ++count;
                used[j] = true;
            }
        }
        Complex center = sum / static_cast<double>(count);
        bool merged = false;
        for (auto& e : out.entries) {
            if (std::abs(e.root - center) <= radius) {
                e.multiplicity += count * multiplicity;
                merged = true;
                break;
            }
        }
        if (!merged) out.entries.push_back({center, count * multiplicity});
    }
}

void sort_entries(RootMultiset& rm) {
    std::sort(rm.entries.begin(), rm.entries.end(), [](const auto& a, const auto& b) {
        if (a.root.real() != b.root.real()) return a.root.real() < b.root.real();
        return a.root.imag() < b.root.imag();
    });
}

}  // namespace

RootMultiset find_roots(const std::vector<Complex>& coeffs, const RootOptions& opt) {
    std::vector<Complex> c = coeffs;
    while (!c.empty() && std::abs(c.back()) == 0.0) c.pop_back();
    if (c.size() < 2) throw std::invalid_argument("find_roots: degree must be >= 1");
    // deflate roots at the origin
    int zeroMult = 0;
    while (std::abs(c.front()) == 0.0) {
        c.erase(c.begin());
        ++zeroMult;
    }
    RootMultiset out;
    if (zeroMult > 0) out.entries.push_back({Complex(0.0, 0.0), zeroMult});
    if (c.size() >= 2) cluster_into(out, aberth(c, opt), 1, opt.cluster_radius);
    sort_entries(out);
    return out;
}

RootMultiset find_roots(const std::vector<Rational>& coeffs, const RootOptions& opt) {
    std::vector<Rational> p = qpoly::trim(coeffs);
    if (qpoly::degree(p) < 1) throw std::invalid_argument("find_roots: degree must be >= 1");
    RootMultiset out;
    auto factors = qpoly::squarefree(p);
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (qpoly::degree(factors[i]) < 1) continue;
        std::vector<Complex> fc;
        for (const Rational& r : factors[i]) fc.push_back(Complex(r.to_double(), 0.0));
        RootMultiset part = find_roots(fc, opt);
        for (const auto& e : part.entries) {
            // e.multiplicity > 1 can only come from clustering inside one
            // square-free factor; scale by the factor's multiplicity
            bool merged = false;
            for (auto& o : out.entries)
                if (std::abs(o.root - e.root) <= opt.cluster_radius) {
                    o.multiplicity += e.multiplicity * static_cast<int>(i + 1);
                    merged = true;
                    break;
                }
            if (!merged)
                out.entries.push_back({e.root, e.multiplicity * static_cast<int>(i + 1)});
        }
    }
    sort_entries(out);
    return out;
}

RootMultiset find_roots(const MultiPoly& p, const RootOptions& opt) {
    return find_roots(univariate_coeffs(p), opt);
}

}  // namespace coaxial
