#include "coaxial/homotopy.hpp"

#include "quad_complex.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

namespace coaxial {

namespace {

struct CompiledTerm {
    Complex c;
    std::vector<int> e;
};
using CompiledPoly = std::vector<CompiledTerm>;

CompiledPoly compile(const MultiPoly& p, const std::vector<std::string>& unknowns) {
    CompiledPoly out;
    std::vector<int> where(p.vars().size(), -1);
    for (std::size_t i = 0; i < p.vars().size(); ++i) {
        auto it = std::find(unknowns.begin(), unknowns.end(), p.vars()[i]);
        if (it == unknowns.end())
            throw std::logic_error("homotopy: polynomial variable outside the unknown list");
        where[i] = static_cast<int>(it - unknowns.begin());
    }
    for (const auto& [e, c] : p.terms()) {
        CompiledTerm t;
        t.c = Complex(c.to_double(), 0.0);
        t.e.assign(unknowns.size(), 0);
        for (std::size_t i = 0; i < e.size(); ++i) t.e[static_cast<std::size_t>(where[i])] = e[i];
        out.push_back(std::move(t));
    }
    return out;
}

Complex eval(const CompiledPoly& p, const std::vector<Complex>& x) {
    Complex acc = 0.0;
    for (const auto& t : p) {
        Complex v = t.c;
        for (std::size_t i = 0; i < x.size(); ++i)
            for (int k = 0; k < t.e[i]; ++k) v *= x[i];
        acc += v;
    }
    return acc;
}

CompiledPoly differentiate(const CompiledPoly& p, std::size_t var) {
    CompiledPoly out;
    for (const auto& t : p) {
        if (t.e[var] == 0) continue;
        CompiledTerm d = t;
        d.c *= static_cast<double>(t.e[var]);
        d.e[var] -= 1;
        out.push_back(std::move(d));
    }
    return out;
}

/// In-place Gaussian elimination with partial pivoting; returns false when the
/// matrix is numerically singular.
bool solve_linear(std::vector<std::vector<Complex>>& m, std::vector<Complex>& rhs) {
    const std::size_t n = rhs.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(m[i][k]) > std::abs(m[piv][k])) piv = i;
        if (std::abs(m[piv][k]) < 1e-300) return false;
        std::swap(m[k], m[piv]);
        std::swap(rhs[k], rhs[piv]);
        for (std::size_t i = k + 1; i < n; ++i) {
            Complex f = m[i][k] / m[k][k];
            for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
            rhs[i] -= f * rhs[k];
        }
    }
    for (std::size_t k = n; k-- > 0;) {
        Complex s = rhs[k];
        for (std::size_t j = k + 1; j < n; ++j) s -= m[k][j] * rhs[j];
        rhs[k] = s / m[k][k];
    }
    return true;
}

struct Tracker {
    std::size_t n = 0;
    std::vector<CompiledPoly> target;
    std::vector<std::vector<CompiledPoly>> targetJac;
    std::vector<int> startDeg;
    std::vector<Complex> startGamma;  // x_j^d - gamma_j
    Complex gammaTrick;
    double tolRoot = 1e-10;
    std::vector<double> coeffNorm;  // per-equation 1-norms for relative tracking tolerance
    std::vector<int> totalDeg;

    // |H_i| is compared against tol * coeffNorm_i * max(1,|x|)^deg_i, so paths
    // that excurse far from the origin stay trackable
    double scale_of(std::size_t i, double xnorm) const {
        return std::max(1.0, coeffNorm[i] * std::pow(std::max(1.0, xnorm),
                                                     static_cast<double>(totalDeg[i])));
    }

    Complex start_eval(std::size_t j, const std::vector<Complex>& x) const {
        Complex v = 1.0;
        for (int k = 0; k < startDeg[j]; ++k) v *= x[j];
        return v - startGamma[j];
    }
    Complex start_deriv(std::size_t j, const std::vector<Complex>& x) const {
        Complex v = static_cast<double>(startDeg[j]);
        for (int k = 0; k < startDeg[j] - 1; ++k) v *= x[j];
        return v;
    }

    void homotopy_at(const std::vector<Complex>& x, double s, std::vector<Complex>& h,
                     std::vector<std::vector<Complex>>& jac) const {
        Complex w = gammaTrick * (1.0 - s);
        for (std::size_t i = 0; i < n; ++i) {
            h[i] = w * start_eval(i, x) + s * eval(target[i], x);
            for (std::size_t j = 0; j < n; ++j) {
                Complex dj = s * eval(targetJac[i][j], x);
                if (i == j) dj += w * start_deriv(i, x);
                jac[i][j] = dj;
            }
        }
    }

    double residual(const std::vector<Complex>& x) const {
        double r = 0.0;
        for (std::size_t i = 0; i < n; ++i) r = std::max(r, std::abs(eval(target[i], x)));
        return r;
    }

    bool within_track_tol(const std::vector<Complex>& h, const std::vector<Complex>& x,
                          double tol) const {
        double xnorm = 0.0;
        for (const Complex& v : x) xnorm = std::max(xnorm, std::abs(v));
        for (std::size_t i = 0; i < n; ++i)
            if (std::abs(h[i]) >= tol * scale_of(i, xnorm)) return false;
        return true;
    }

    // Newton correction on H(., s). Returns false if it fails to contract.
    bool correct(std::vector<Complex>& x, double s, int iters, double tol) const {
        std::vector<Complex> h(n);
        std::vector<std::vector<Complex>> jac(n, std::vector<Complex>(n));
        for (int it = 0; it < iters; ++it) {
            homotopy_at(x, s, h, jac);
            if (within_track_tol(h, x, tol)) return true;
            std::vector<Complex> rhs = h;
            for (Complex& v : rhs) v = -v;
            if (!solve_linear(jac, rhs)) return false;
            for (std::size_t i = 0; i < n; ++i) x[i] += rhs[i];
        }
        std::vector<std::vector<Complex>> jj(n, std::vector<Complex>(n));
        homotopy_at(x, s, h, jj);
        return within_track_tol(h, x, tol);
    }

    enum class PathEnd { converged, diverged, failed };

    PathEnd track(std::vector<Complex>& x) const {
        double s = 0.0, ds = 0.05;
        int streak = 0;
        std::vector<Complex> h(n);
        std::vector<std::vector<Complex>> jac(n, std::vector<Complex>(n));
        while (s < 1.0 - 1e-10) {
            // geometric approach to s = 1: singular endpoints pull paths
            // together, and large late steps can hop between basins
            double cap = s > 0.9 ? 0.5 * (1.0 - s) : ds;
            double step = std::min({ds, cap, 1.0 - s});
            // Euler predictor: dx/ds = -J^{-1} (f - gamma g)
            homotopy_at(x, s, h, jac);
            std::vector<Complex> rhs(n);
            for (std::size_t i = 0; i < n; ++i)
                rhs[i] = gammaTrick * start_eval(i, x) - eval(target[i], x);
            std::vector<std::vector<Complex>> jcopy = jac;
            std::vector<Complex> xNext = x;
            bool ok = solve_linear(jcopy, rhs);
            double predNorm = 0.0;
            if (ok) {
                for (std::size_t i = 0; i < n; ++i) {
                    xNext[i] += rhs[i] * step;
                    predNorm = std::max(predNorm, std::abs(rhs[i]) * step);
                }
                std::vector<Complex> xPred = xNext;
                ok = correct(xNext, s + step, 4, 1e-9);
                if (ok) {
                    // trust region: the corrector must stay near the prediction
                    double moved = 0.0, xn = 1.0;
                    for (std::size_t i = 0; i < n; ++i) {
                        moved = std::max(moved, std::abs(xNext[i] - xPred[i]));
                        xn = std::max(xn, std::abs(x[i]));
                    }
                    if (moved > std::max(4.0 * predNorm, 0.05 * xn)) ok = false;
                }
            }
            if (ok) {
                x = std::move(xNext);
                s += step;
                if (++streak >= 3) {
                    ds = std::min(ds * 2.0, 0.1);
                    streak = 0;
                }
            } else {
                ds *= 0.5;
                streak = 0;
                if (ds < 1e-14) return PathEnd::failed;
            }
            double norm = 0.0;
            for (const Complex& v : x) norm = std::max(norm, std::abs(v));
            if (norm > 1e10) return PathEnd::diverged;
        }
        // endpoint polish on the target system (plain Newton also contracts,
        // linearly, at multiple roots); keep the best iterate seen
        std::vector<Complex> best = x;
        double bestRes = residual(x);
        for (int it = 0; it < 200 && bestRes > tolRoot; ++it) {
            std::vector<Complex> rhs(n);
            for (std::size_t i = 0; i < n; ++i) rhs[i] = -eval(target[i], x);
            std::vector<std::vector<Complex>> j(n, std::vector<Complex>(n));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t c = 0; c < n; ++c) j[i][c] = eval(targetJac[i][c], x);
            if (!solve_linear(j, rhs)) break;
            for (std::size_t i = 0; i < n; ++i) x[i] += rhs[i];
            double r = residual(x);
            if (r < bestRes) {
                bestRes = r;
                best = x;
            }
        }
        x = best;
        if (bestRes <= tolRoot) {
            refine_quad(x);
            return PathEnd::converged;
        }
        // singular endpoints stagnate at the square root of machine precision
        // in coordinates; their residual floor scales accordingly
        if (jacobian_floor(x) < 1e-3 && bestRes <= 1e4 * tolRoot) return PathEnd::converged;
        return PathEnd::failed;
    }

    /// A few Newton steps in quadruple precision: ill-conditioned regular
    /// zeros (tightly clustered coordinates) are only ~1e-9 accurate after the
    /// double polish, which is not enough for downstream residue checks.
    void refine_quad(std::vector<Complex>& x) const {
        using detail::QuadComplex;
        std::vector<QuadComplex> z;
        for (const Complex& v : x) z.emplace_back(v);
        auto evalQ = [&](const CompiledPoly& p, const std::vector<QuadComplex>& at) {
            QuadComplex acc;
            for (const auto& t : p) {
                QuadComplex v(t.c);
                for (std::size_t i = 0; i < at.size(); ++i)
                    for (int k = 0; k < t.e[i]; ++k) v = v * at[i];
                acc += v;
            }
            return acc;
        };
        for (int it = 0; it < 6; ++it) {
            std::vector<QuadComplex> rhs(n);
            std::vector<std::vector<QuadComplex>> m(n, std::vector<QuadComplex>(n));
            for (std::size_t i = 0; i < n; ++i) {
                rhs[i] = QuadComplex() - evalQ(target[i], z);
                for (std::size_t c = 0; c < n; ++c) m[i][c] = evalQ(targetJac[i][c], z);
            }
            // Gaussian elimination with partial pivoting in quad
            bool ok = true;
            for (std::size_t k = 0; k < n && ok; ++k) {
                std::size_t piv = k;
                for (std::size_t i = k + 1; i < n; ++i)
                    if (m[i][k].norm1() > m[piv][k].norm1()) piv = i;
                if (m[piv][k].norm1() == 0) {
                    ok = false;
                    break;
                }
                std::swap(m[k], m[piv]);
                std::swap(rhs[k], rhs[piv]);
                for (std::size_t i = k + 1; i < n; ++i) {
                    QuadComplex f = m[i][k] / m[k][k];
                    for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
                    rhs[i] -= f * rhs[k];
                }
            }
            if (!ok) return;
            for (std::size_t k = n; k-- > 0;) {
                QuadComplex s = rhs[k];
                for (std::size_t j = k + 1; j < n; ++j) s -= m[k][j] * rhs[j];
                rhs[k] = s / m[k][k];
            }
            __float128 step = 0;
            for (std::size_t i = 0; i < n; ++i) {
                z[i] += rhs[i];
                step = step > rhs[i].norm1() ? step : rhs[i].norm1();
            }
            if (static_cast<double>(step) < 1e-30) break;
        }
        // accept only if the refinement did not wander off
        double moved = 0.0;
        for (std::size_t i = 0; i < n; ++i) moved = std::max(moved, std::abs(z[i].value() - x[i]));
        if (moved < 1e-4) {
            for (std::size_t i = 0; i < n; ++i) x[i] = z[i].value();
        }
    }

    /// Smallest pivot magnitude of the target Jacobian at x, as a proxy for
    /// endpoint multiplicity.
    double jacobian_floor(const std::vector<Complex>& x) const {
        std::vector<std::vector<Complex>> m(n, std::vector<Complex>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t c = 0; c < n; ++c) m[i][c] = eval(targetJac[i][c], x);
        double floorPivot = 1e300;
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t piv = k;
            for (std::size_t i = k + 1; i < n; ++i)
                if (std::abs(m[i][k]) > std::abs(m[piv][k])) piv = i;
            floorPivot = std::min(floorPivot, std::abs(m[piv][k]));
            if (std::abs(m[piv][k]) < 1e-300) return 0.0;
            std::swap(m[k], m[piv]);
            for (std::size_t i = k + 1; i < n; ++i) {
                Complex f = m[i][k] / m[k][k];
                for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
            }
        }
        return floorPivot;
    }
};

}  // namespace

SolveResult solve_sliced(const AngleConfig& cfg, const BranchSystem& sys,
                         const SlicedSystem& sliced, const SolveOptions& opt) {
    if (sliced.L > 6)
        throw std::invalid_argument("solve_sliced: L > 6 exceeds the L! path budget");
    const std::size_t n = static_cast<std::size_t>(sliced.L);

    Tracker tr;
    tr.n = n;
    tr.tolRoot = opt.tol_root;
    for (const MultiPoly& p : sliced.polys) tr.target.push_back(compile(p, sliced.unknowns));
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<CompiledPoly> row;
        for (std::size_t j = 0; j < n; ++j) row.push_back(differentiate(tr.target[i], j));
        tr.targetJac.push_back(std::move(row));
        double norm = 0.0;
        int deg = 0;
        for (const CompiledTerm& t : tr.target[i]) {
            norm += std::abs(t.c);
            int d = 0;
            for (int e : t.e) d += e;
            deg = std::max(deg, d);
        }
        tr.coeffNorm.push_back(norm);
        tr.totalDeg.push_back(deg);
    }
    for (std::size_t j = 0; j < n; ++j) tr.startDeg.push_back(static_cast<int>(j) + 1);

    long totalPaths = 1;
    for (int d : tr.startDeg) totalPaths *= d;

    std::vector<std::vector<Complex>> endpoints(static_cast<std::size_t>(totalPaths));
    std::vector<Tracker::PathEnd> outcome(static_cast<std::size_t>(totalPaths));

    std::mt19937_64 rng(opt.seed ^ 0x9e3779b97f4a7c15ull);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);

    // a handful of deterministic gamma draws: paths that graze the
    // discriminant for one draw track cleanly for another; keep the best draw
    int failures = 0;
    std::vector<std::vector<Complex>> bestEndpoints;
    std::vector<Tracker::PathEnd> bestOutcome;
    int bestFailures = static_cast<int>(totalPaths) + 1;
    for (int attempt = 0; attempt < 3; ++attempt) {
        tr.startGamma.clear();
        for (std::size_t j = 0; j < n; ++j) tr.startGamma.push_back(std::polar(1.0, angle(rng)));
        tr.gammaTrick = std::polar(1.0, angle(rng));

        std::vector<std::vector<Complex>> startRoots(n);
        for (std::size_t j = 0; j < n; ++j) {
            int d = tr.startDeg[j];
            double arg = std::arg(tr.startGamma[j]);
            for (int r = 0; r < d; ++r)
                startRoots[j].push_back(
                    std::polar(1.0, (arg + 2.0 * std::numbers::pi * r) / static_cast<double>(d)));
        }

        auto runPath = [&](long pathIdx) {
            long rem = pathIdx;
            std::vector<Complex> x(n);
            for (std::size_t j = 0; j < n; ++j) {
                int d = tr.startDeg[j];
                x[j] = startRoots[j][static_cast<std::size_t>(rem % d)];
                rem /= d;
            }
            outcome[static_cast<std::size_t>(pathIdx)] = tr.track(x);
            endpoints[static_cast<std::size_t>(pathIdx)] = std::move(x);
        };

        const int threads = std::max(1, opt.threads);
        if (threads == 1 || totalPaths < 4) {
            for (long p = 0; p < totalPaths; ++p) runPath(p);
        } else {
            std::vector<std::thread> pool;
            std::atomic<long> next{0};
            for (int w = 0; w < threads; ++w)
                pool.emplace_back([&] {
                    for (long p = next.fetch_add(1); p < totalPaths; p = next.fetch_add(1))
                        runPath(p);
                });
            for (auto& th : pool) th.join();
        }

        failures = 0;
        for (long p = 0; p < totalPaths; ++p)
            if (outcome[static_cast<std::size_t>(p)] == Tracker::PathEnd::failed) ++failures;
        if (failures < bestFailures) {
            bestFailures = failures;
            bestOutcome = outcome;
            bestEndpoints = endpoints;
        }
        if (failures == 0) break;
    }
    failures = bestFailures;
    outcome = std::move(bestOutcome);
    endpoints = std::move(bestEndpoints);

    SolveResult res;
    res.stats.paths = static_cast<int>(totalPaths);
    for (long p = 0; p < totalPaths; ++p) {
        switch (outcome[static_cast<std::size_t>(p)]) {
            case Tracker::PathEnd::converged: ++res.stats.converged; break;
            case Tracker::PathEnd::diverged: ++res.stats.diverged; break;
            case Tracker::PathEnd::failed: ++res.stats.failed; break;
        }
    }
    if (failures * 10 > static_cast<int>(totalPaths))
        throw std::runtime_error("solve_sliced: more than 10% of paths failed");

    // canonicalize (sort the a and b blocks) and deduplicate, path order
    const std::size_t m1 = sys.aVars.size(), m2 = sys.bVars.size();
    auto canonical = [&](std::vector<Complex> x) {
        auto lt = [](const Complex& u, const Complex& v) {
            if (u.real() != v.real()) return u.real() < v.real();
            return u.imag() < v.imag();
        };
        std::sort(x.begin(), x.begin() + static_cast<long>(m1), lt);
        std::sort(x.begin() + static_cast<long>(m1), x.begin() + static_cast<long>(m1 + m2), lt);
        return x;
    };

    std::vector<std::vector<Complex>> reps;
    std::vector<int> counts;
    std::vector<double> radii;
    std::vector<double> repRes;
    auto residual_of = [&](const std::vector<Complex>& x) {
        double r = 0.0;
        for (std::size_t i = 0; i < n; ++i) r = std::max(r, std::abs(eval(tr.target[i], x)));
        return r;
    };
    for (long p = 0; p < totalPaths; ++p) {
        if (outcome[static_cast<std::size_t>(p)] != Tracker::PathEnd::converged) continue;
        std::vector<Complex> x = canonical(endpoints[static_cast<std::size_t>(p)]);
        // multiple zeros polish only to about the square root of the residual
        // tolerance, and their Jacobian pivots are of the same size, so the
        // singularity proxy needs a loose threshold
        double radius =
            tr.jacobian_floor(x) < 1e-3 ? std::max(opt.tol_cluster, 1e-4) : opt.tol_cluster;
        double res2 = residual_of(x);
        bool merged = false;
        for (std::size_t r = 0; r < reps.size(); ++r) {
            double d = 0.0;
            for (std::size_t i = 0; i < n; ++i) d = std::max(d, std::abs(x[i] - reps[r][i]));
            if (d <= std::max(radius, radii[r])) {
                ++counts[r];
                if (res2 < repRes[r]) {  // keep the sharpest member
                    reps[r] = std::move(x);
                    repRes[r] = res2;
                }
                merged = true;
                break;
            }
        }
        if (!merged) {
            reps.push_back(std::move(x));
            counts.push_back(1);
            radii.push_back(radius);
            repRes.push_back(res2);
        }
    }

    for (std::size_t r = 0; r < reps.size(); ++r) {
        const std::vector<Complex>& x = reps[r];
        AdmissibleZero z;
        z.multiplicity = counts[r];
        std::size_t idx = 0;
        for (std::size_t i = 0; i < m1; ++i) z.a.push_back(x[idx++]);
        for (std::size_t i = 0; i < m2; ++i) z.b.push_back(x[idx++]);
        std::map<Label, Complex> tval;
        for (const std::string& v : sys.t1Vars) tval[v] = x[idx++];
        Complex tRay = x[idx++];
        for (std::size_t i = 0; i < sys.t2Labels.size(); ++i)
            tval[sys.t2Labels[i]] = tRay * sliced.direction[i].to_double();
        for (const Label& p : cfg.t_labels()) z.t.push_back(tval.at(p));

        double res2 = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            res2 = std::max(res2, std::abs(eval(tr.target[i], x)));
        z.residual = res2;

        // admissibility: all coordinates distinct and away from 0 and 1
        std::vector<Complex> all;
        all.insert(all.end(), z.a.begin(), z.a.end());
        all.insert(all.end(), z.b.begin(), z.b.end());
        all.insert(all.end(), z.t.begin(), z.t.end());
        z.admissible = true;
        for (std::size_t i = 0; i < all.size() && z.admissible; ++i) {
            if (std::abs(all[i]) <= opt.tol_sep || std::abs(all[i] - Complex(1.0)) <= opt.tol_sep)
                z.admissible = false;
            for (std::size_t j = i + 1; j < all.size(); ++j)
                if (std::abs(all[i] - all[j]) <= opt.tol_sep) z.admissible = false;
        }
        res.zeros.push_back(std::move(z));
    }
    return res;
}

std::vector<BranchLocus> enumerate_locus(const AngleConfig& cfg, const SolveOptions& opt) {
    std::vector<BranchLocus> out;
    std::vector<Branch> branches = enumerate_branches(cfg);
    std::mt19937_64 rng(opt.seed * 0x2545f4914f6cdd1dull + 0x9e3779b9ull);
    static const long pool[] = {2, 3, 5, 7, 11, 13};

    for (const Branch& br : branches) {
        BranchLocus bl;
        bl.branch = br;
        BranchSystem sys = build_system(cfg, br);
        std::vector<Rational> dir{Rational(1)};
        std::vector<long> avail(std::begin(pool), std::end(pool));
        for (std::size_t i = 1; i < sys.t2Labels.size(); ++i) {
            std::size_t slot = rng() % avail.size();
            dir.push_back(Rational(avail[slot]));
            avail.erase(avail.begin() + static_cast<long>(slot));
        }
        bl.direction = dir;
        SlicedSystem sl = slice(sys, dir);
        bl.result = solve_sliced(cfg, sys, sl, opt);
        out.push_back(std::move(bl));
    }

    if (cfg.m() == 1) {
        // admissible movable-point tuples, deduplicated across branches
        std::vector<std::vector<Complex>> seen;
        for (const BranchLocus& bl : out)
            for (const AdmissibleZero& z : bl.result.zeros) {
                if (!z.admissible) continue;
                bool dup = false;
                for (const auto& s : seen) {
                    double d = 0.0;
                    for (std::size_t i = 0; i < s.size(); ++i)
                        d = std::max(d, std::abs(s[i] - z.t[i]));
                    if (d <= opt.tol_cluster) dup = true;
                }
                if (!dup) seen.push_back(z.t);
            }
        long thetaInt = cfg.ints.back();
        long bound = (1L << (cfg.n() + 2));
        for (long i = 2; i < thetaInt; ++i) bound *= i;  // * (theta'-1)!
        if (static_cast<long>(seen.size()) > bound)
            throw std::logic_error("enumerate_locus: admissible count exceeds the bound");
    }
    return out;
}

}  // namespace coaxial
