#include "coaxial/angle_gate.hpp"

#include <algorithm>
#include <stdexcept>

namespace coaxial {

AngleConfig AngleConfig::make(Rational th0, Rational th1, Rational thInf,
                              std::vector<Rational> nonintIn, std::vector<long> intsIn) {
    AngleConfig cfg{std::move(th0), std::move(th1), std::move(thInf), std::move(nonintIn),
                    std::move(intsIn)};
    auto checkNonint = [](const Rational& r, const char* who) {
        if (r.sign() <= 0) throw std::invalid_argument(std::string(who) + ": must be positive");
        if (r.is_integer())
            throw std::invalid_argument(std::string(who) + ": must be non-integer");
    };
    checkNonint(cfg.theta0, "theta0");
    checkNonint(cfg.theta1, "theta1");
    checkNonint(cfg.thetaInf, "thetaInf");
    for (const Rational& r : cfg.nonint) checkNonint(r, "nonint angle");
    if (cfg.ints.empty()) throw std::invalid_argument("AngleConfig: need at least one integer angle");
    for (long v : cfg.ints) {
        if (v < 2) throw std::invalid_argument("AngleConfig: integer angles must be >= 2");
        if (v > 64) throw std::invalid_argument("AngleConfig: integer angle cap 64 exceeded");
    }
    if (cfg.n() + cfg.m() > 8)
        throw std::invalid_argument("AngleConfig: n+m cap 8 exceeded");
    return cfg;
}

Rational AngleConfig::theta_of(const Label& p) const {
    if (p == "0") return theta0;
    if (p == "1") return theta1;
    if (p == "inf") return thetaInf;
    if (p.size() > 1 && p[0] == 't') {
        int j = std::stoi(p.substr(1));
        if (j >= 1 && j <= n()) return nonint[static_cast<std::size_t>(j - 1)];
        if (j > n() && j <= n() + m()) return Rational(ints[static_cast<std::size_t>(j - n() - 1)]);
    }
    throw std::invalid_argument("AngleConfig: unknown label " + p);
}

std::vector<Rational> AngleConfig::all_thetas() const {
    std::vector<Rational> v{theta0, theta1, thetaInf};
    v.insert(v.end(), nonint.begin(), nonint.end());
    for (long i : ints) v.push_back(Rational(i));
    return v;
}

std::vector<Label> AngleConfig::t_labels() const {
    std::vector<Label> v;
    for (int j = 1; j <= n() + m(); ++j) v.push_back(t_label(j));
    return v;
}

int SignAssignment::at(const Label& p) const {
    auto it = eps.find(p);
    if (it == eps.end()) throw std::invalid_argument("SignAssignment: no sign for " + p);
    return it->second;
}

Rational mp_distance(const std::vector<Rational>& v) {
    if (v.empty()) throw std::invalid_argument("mp_distance: empty vector");
    Rational total(0);
    mpz_class roundedSum = 0;
    Rational cheapestFlip(2);  // 1 - 2 f_i <= 1 always
    for (const Rational& x : v) {
        Rational f = x.frac_dist();
        total += f;
        roundedSum += x.round_nearest();
        Rational flip = Rational(1) - Rational(2) * f;
        cheapestFlip = std::min(cheapestFlip, flip);
    }
    if (mpz_odd_p(roundedSum.get_mpz_t())) return total;
    return total + cheapestFlip;
}

namespace {

/// Labels carrying a sign in the existence test: 0, 1, inf, t1..tn.
std::vector<Label> gate_sign_labels(const AngleConfig& cfg) {
    std::vector<Label> labels{"0", "1", "inf"};
    for (int j = 1; j <= cfg.n(); ++j) labels.push_back(cfg.t_label(j));
    return labels;
}

}  // namespace

FeasibilityReport check_eremenko(const AngleConfig& cfg) {
    FeasibilityReport report;
    std::vector<Rational> alphas;
    for (const Rational& th : cfg.all_thetas()) alphas.push_back(th - Rational(1));
    report.mpDistance = mp_distance(alphas);

    const std::vector<Label> labels = gate_sign_labels(cfg);
    const std::size_t bits = labels.size();
    Rational intSum(0);
    for (long v : cfg.ints) intSum += Rational(v);
    long maxInt = *std::max_element(cfg.ints.begin(), cfg.ints.end());
    const long nm3 = cfg.n() + cfg.m() + 3;

    for (std::uint32_t mask = 0; mask < (1u << bits); ++mask) {
        SignAssignment signs;
        Rational kp(0);
        for (std::size_t i = 0; i < bits; ++i) {
            int e = (mask >> i) & 1u ? -1 : +1;
            signs.eps[labels[i]] = e;
            kp += cfg.theta_of(labels[i]) * Rational(e);
        }
        if (!kp.is_integer() || kp.sign() < 0) continue;
        long kPrime = static_cast<long>(kp.num().get_si());
        Rational kppR = intSum - Rational(nm3) - kp + Rational(2);
        if (!kppR.is_integer() || kppR.sign() < 0) continue;
        long kDouble = static_cast<long>(kppR.num().get_si());
        if (kDouble % 2 != 0) continue;

        FeasibilityWitness w;
        w.signs = signs;
        w.kPrime = kPrime;
        w.kDoublePrime = kDouble;
        std::vector<Rational> c{cfg.theta0, cfg.theta1, cfg.thetaInf};
        c.insert(c.end(), cfg.nonint.begin(), cfg.nonint.end());
        for (long i = 0; i < kPrime + kDouble; ++i) c.push_back(Rational(1));
        w.eta = rational_content(c);
        // theta0 is non-integer, so c is never an all-integer vector
        if (w.eta.is_integer())
            throw std::logic_error("check_eremenko: integral content for non-integer angles");
        mpz_class bSum = 0;
        for (const Rational& ci : c) {
            Rational bi = ci / w.eta;
            w.b.push_back(bi.num());
            bSum += bi.num();
        }
        w.k3ok = bSum >= 2 * maxInt;
        if (w.k3ok) report.feasible = true;
        report.witnesses.push_back(std::move(w));
    }
    return report;
}

std::optional<std::pair<long, long>> derive_counts(const AngleConfig& cfg,
                                                   const std::vector<Label>& J1,
                                                   const SignAssignment& signs) {
    // sum over I \ J1 of θ_p; and the signed sum over J = J1 ∪ {inf}
    Rational outSum(0);
    for (const Label& p : cfg.t_labels())
        if (std::find(J1.begin(), J1.end(), p) == J1.end()) outSum += cfg.theta_of(p);
    Rational signedSum = cfg.thetaInf;  // eps_inf = +1
    for (const Label& p : J1) signedSum += cfg.theta_of(p) * Rational(signs.at(p));

    const Rational nm1 = Rational(cfg.n() + cfg.m() + 1);
    Rational twoM1 = outSum - signedSum - nm1;
    Rational twoM2 = outSum + signedSum - nm1;
    if (!twoM1.is_integer() || !twoM2.is_integer()) return std::nullopt;
    long a = static_cast<long>(twoM1.num().get_si());
    long b = static_cast<long>(twoM2.num().get_si());
    if (a < 0 || b < 0 || a % 2 != 0 || b % 2 != 0) return std::nullopt;
    return std::make_pair(a / 2, b / 2);
}

std::vector<Branch> enumerate_branches(const AngleConfig& cfg) {
    std::vector<Branch> out;
    if (!check_eremenko(cfg).feasible) return out;

    std::vector<Label> base{"0", "1"};
    for (int j = 1; j <= cfg.n(); ++j) base.push_back(cfg.t_label(j));
    const int m = cfg.m();

    // J1 = base ∪ S with S a proper subset of the integer-angle points
    for (std::uint32_t sMask = 0; sMask + 1 < (1u << m); ++sMask) {
        std::vector<Label> J1 = base;
        for (int j = 0; j < m; ++j)
            if ((sMask >> j) & 1u) J1.push_back(cfg.t_label(cfg.n() + 1 + j));
        const std::size_t bits = J1.size();
        for (std::uint32_t eMask = 0; eMask < (1u << bits); ++eMask) {
            SignAssignment signs;
            signs.eps["inf"] = +1;
            for (std::size_t i = 0; i < bits; ++i)
                signs.eps[J1[i]] = (eMask >> i) & 1u ? -1 : +1;
            auto counts = derive_counts(cfg, J1, signs);
            if (!counts) continue;
            Branch br;
            br.J1 = J1;
            br.signs = signs;
            br.m1 = counts->first;
            br.m2 = counts->second;
            br.kPrime = std::abs(br.m2 - br.m1);
            br.kDoublePrime = 2 * std::min(br.m1, br.m2);
            br.L = br.m1 + br.m2 + static_cast<long>(J1.size()) - 1;
            out.push_back(std::move(br));
        }
    }
    return out;
}

K3CheckResult mp_implies_k3_check(const AngleConfig& cfg) {
    K3CheckResult result;
    std::vector<Rational> alphas;
    for (const Rational& th : cfg.all_thetas()) alphas.push_back(th - Rational(1));
    if (!(mp_distance(alphas) == Rational(1))) {
        result.vacuous = true;
        return result;
    }
    FeasibilityReport rep = check_eremenko(cfg);
    for (const FeasibilityWitness& w : rep.witnesses) {
        if (!w.k3ok) {
            result.pass = false;
            result.counterexample = w.signs;
            return result;
        }
    }
    return result;
}

}  // namespace coaxial
