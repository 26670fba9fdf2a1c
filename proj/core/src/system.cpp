#include "coaxial/system.hpp"

#include <algorithm>

namespace coaxial {

namespace {

MultiPoly position_of(const Label& p) {
    if (p == "0") return MultiPoly(Rational(0));
    if (p == "1") return MultiPoly(Rational(1));
    return MultiPoly::variable(p);
}

}  // namespace

BranchSystem build_system(const AngleConfig& cfg, const Branch& branch) {
    BranchSystem sys;
    sys.branch = branch;
    sys.L = branch.L;
    for (long j = 1; j <= branch.m1; ++j) sys.aVars.push_back("a" + std::to_string(j));
    for (long j = 1; j <= branch.m2; ++j) sys.bVars.push_back("b" + std::to_string(j));
    for (const Label& p : branch.J1)
        if (p != "0" && p != "1") sys.t1Vars.push_back(p);
    for (const Label& p : cfg.t_labels())
        if (std::find(branch.J1.begin(), branch.J1.end(), p) == branch.J1.end())
            sys.t2Labels.push_back(p);

    const MultiPoly x = MultiPoly::variable("x");
    MultiPoly prodA(Rational(1)), prodB(Rational(1)), prodJ(Rational(1));
    for (const auto& v : sys.aVars) prodA *= x - MultiPoly::variable(v);
    for (const auto& v : sys.bVars) prodB *= x - MultiPoly::variable(v);
    for (const Label& p : branch.J1) prodJ *= x - position_of(p);

    // d/dx log h, cleared of denominators: the three sums of the product rule
    MultiPoly term1;
    for (const Label& p : branch.J1) {
        MultiPoly part(cfg.theta_of(p) * Rational(branch.signs.at(p)));
        for (const Label& q : branch.J1)
            if (q != p) part *= x - position_of(q);
        term1 += part;
    }
    term1 *= prodA * prodB;

    MultiPoly term2;
    for (const auto& vk : sys.aVars) {
        MultiPoly part(Rational(1));
        for (const auto& vj : sys.aVars)
            if (vj != vk) part *= x - MultiPoly::variable(vj);
        term2 += part;
    }
    term2 *= prodJ * prodB;

    MultiPoly term3;
    for (const auto& vk : sys.bVars) {
        MultiPoly part(Rational(1));
        for (const auto& vj : sys.bVars)
            if (vj != vk) part *= x - MultiPoly::variable(vj);
        term3 += part;
    }
    term3 *= prodJ * prodA;

    MultiPoly g = term1 + term2 - term3;
    if (g.degree_in("x") != sys.L)
        throw std::logic_error("build_system: G has unexpected degree");
    MultiPoly lead = g.coeff_of("x", static_cast<int>(sys.L));
    if (!(lead == MultiPoly(-cfg.thetaInf)))
        throw std::logic_error("build_system: leading coefficient of G is not -thetaInf");

    const Rational negInvThetaInf = -cfg.thetaInf.inv();
    for (long j = 1; j <= sys.L; ++j)
        sys.R.push_back(g.coeff_of("x", static_cast<int>(sys.L - j)) * negInvThetaInf);

    // target product over the free points
    MultiPoly target(Rational(1));
    long alphaSum = 0;
    for (const Label& p : sys.t2Labels) {
        long alpha = static_cast<long>(cfg.theta_of(p).num().get_si()) - 1;
        alphaSum += alpha;
        target *= (x - MultiPoly::variable(p)).pow(static_cast<int>(alpha));
    }
    if (alphaSum != sys.L)
        throw std::logic_error("build_system: exponent sum of the free points is not L");
    for (long j = 1; j <= sys.L; ++j)
        sys.C.push_back(target.coeff_of("x", static_cast<int>(sys.L - j)));

    for (long j = 0; j < sys.L; ++j) {
        sys.B.push_back(sys.R[static_cast<std::size_t>(j)] - sys.C[static_cast<std::size_t>(j)]);
        int expect = static_cast<int>(j) + 1;
        if (sys.B.back().total_degree() > expect)
            throw std::logic_error("build_system: B_j degree exceeds j");
    }
    return sys;
}

SlicedSystem slice(const BranchSystem& sys, const std::vector<Rational>& direction) {
    if (direction.size() != sys.t2Labels.size())
        throw std::invalid_argument("slice: direction length mismatch");
    if (!(direction.front() == Rational(1)))
        throw std::invalid_argument("slice: first direction entry must be 1");
    for (const Rational& d : direction)
        if (d.is_zero()) throw std::invalid_argument("slice: zero entry in direction");

    SlicedSystem out;
    out.direction = direction;
    out.L = sys.L;
    out.unknowns = sys.aVars;
    out.unknowns.insert(out.unknowns.end(), sys.bVars.begin(), sys.bVars.end());
    out.unknowns.insert(out.unknowns.end(), sys.t1Vars.begin(), sys.t1Vars.end());
    out.unknowns.push_back("t");

    std::map<std::string, Rational> at;
    for (std::size_t i = 0; i < direction.size(); ++i) at[sys.t2Labels[i]] = direction[i];
    const MultiPoly t = MultiPoly::variable("t");
    for (long j = 1; j <= sys.L; ++j) {
        Rational cj = sys.C[static_cast<std::size_t>(j - 1)].eval(at);
        out.cDir.push_back(cj);
        out.polys.push_back(sys.R[static_cast<std::size_t>(j - 1)] -
                            t.pow(static_cast<int>(j)) * cj);
    }
    if (out.cDir.back().is_zero())
        throw std::logic_error("slice: C_L vanished on a nonzero direction");
    return out;
}

}  // namespace coaxial
