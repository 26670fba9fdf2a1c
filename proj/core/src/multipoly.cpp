#include "coaxial/multipoly.hpp"

#include <algorithm>
#include <sstream>

namespace coaxial {

MultiPoly::MultiPoly(Rational c) {
    if (!c.is_zero()) terms_.emplace(Exponents{}, std::move(c));
}

MultiPoly MultiPoly::variable(const std::string& name) {
    if (name.empty()) throw std::invalid_argument("MultiPoly: empty variable name");
    MultiPoly p;
    p.vars_ = {name};
    p.terms_.emplace(Exponents{1}, Rational(1));
    return p;
}

Rational MultiPoly::constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) throw std::logic_error("MultiPoly: not a constant");
    return terms_.begin()->second;
}

int MultiPoly::total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
        int s = 0;
        for (int x : e) s += x;
        d = std::max(d, s);
    }
    return d;
}

int MultiPoly::degree_in(const std::string& var) const {
    auto it = std::find(vars_.begin(), vars_.end(), var);
    if (it == vars_.end()) return terms_.empty() ? -1 : 0;
    std::size_t idx = static_cast<std::size_t>(it - vars_.begin());
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[idx]);
    return d;
}

bool MultiPoly::has_var(const std::string& var) const {
    return std::find(vars_.begin(), vars_.end(), var) != vars_.end();
}

void MultiPoly::normalize() {
    for (auto it = terms_.begin(); it != terms_.end();)
        it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
    if (vars_.empty()) return;
    // drop variables that no longer occur
    std::vector<bool> used(vars_.size(), false);
    for (const auto& [e, c] : terms_)
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) used[i] = true;
    if (std::all_of(used.begin(), used.end(), [](bool b) { return b; })) return;
    std::vector<std::string> keep;
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (used[i]) keep.push_back(vars_[i]);
    TermMap slim;
    for (auto& [e, c] : terms_) {
        Exponents ne;
        ne.reserve(keep.size());
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (used[i]) ne.push_back(e[i]);
        slim.emplace(std::move(ne), c);
    }
    vars_ = std::move(keep);
    terms_ = std::move(slim);
}

// Re-expresses p over the superset variable list `vars` (sorted, includes all of p's).
MultiPoly align_mapped(const MultiPoly& p, const std::vector<std::string>& vars) {
    MultiPoly out;
    out.vars_ = vars;
    std::vector<std::size_t> where(p.vars_.size());
    for (std::size_t i = 0; i < p.vars_.size(); ++i) {
        auto it = std::lower_bound(vars.begin(), vars.end(), p.vars_[i]);
        where[i] = static_cast<std::size_t>(it - vars.begin());
    }
    for (const auto& [e, c] : p.terms_) {
        MultiPoly::Exponents ne(vars.size(), 0);
        for (std::size_t i = 0; i < e.size(); ++i) ne[where[i]] = e[i];
        out.terms_.emplace(std::move(ne), c);
    }
    return out;
}

namespace {

std::vector<std::string> merged_vars(const MultiPoly& a, const MultiPoly& b) {
    std::vector<std::string> u;
    std::set_union(a.vars().begin(), a.vars().end(), b.vars().begin(), b.vars().end(),
                   std::back_inserter(u));
    return u;
}

}  // namespace

MultiPoly MultiPoly::operator-() const {
    MultiPoly out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    if (vars_ == o.vars_) {
        for (const auto& [e, c] : o.terms_) {
            auto [it, fresh] = terms_.emplace(e, c);
            if (!fresh) it->second += c;
        }
        normalize();
        return *this;
    }
    std::vector<std::string> u = merged_vars(*this, o);
    MultiPoly a = align_mapped(*this, u);
    MultiPoly b = align_mapped(o, u);
    for (const auto& [e, c] : b.terms_) {
        auto [it, fresh] = a.terms_.emplace(e, c);
        if (!fresh) it->second += c;
    }
    a.normalize();
    return *this = std::move(a);
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) { return *this += -o; }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    if (a.is_zero() || b.is_zero()) return MultiPoly();
    std::vector<std::string> u = merged_vars(a, b);
    MultiPoly x = align_mapped(a, u);
    MultiPoly y = align_mapped(b, u);
    MultiPoly out;
    out.vars_ = u;
    for (const auto& [ea, ca] : x.terms_) {
        for (const auto& [eb, cb] : y.terms_) {
            MultiPoly::Exponents e(u.size());
            for (std::size_t i = 0; i < u.size(); ++i) e[i] = ea[i] + eb[i];
            Rational c = ca * cb;
            auto [it, fresh] = out.terms_.emplace(std::move(e), std::move(c));
            if (!fresh) it->second += ca * cb;
        }
    }
    out.normalize();
    return out;
}

MultiPoly MultiPoly::operator*(const Rational& c) const {
    if (c.is_zero()) return MultiPoly();
    MultiPoly out = *this;
    for (auto& [e, v] : out.terms_) v *= c;
    return out;
}

MultiPoly MultiPoly::operator/(const Rational& c) const {
    if (c.is_zero()) throw std::invalid_argument("MultiPoly: division by zero scalar");
    return *this * c.inv();
}

MultiPoly MultiPoly::pow(int e) const {
    if (e < 0) throw std::invalid_argument("MultiPoly::pow: negative exponent");
    MultiPoly acc(Rational(1));
    MultiPoly base = *this;
    while (e > 0) {
        if (e & 1) acc *= base;
        e >>= 1;
        if (e > 0) base *= base;
    }
    return acc;
}

MultiPoly MultiPoly::coeff_of(const std::string& var, int k) const {
    auto it = std::find(vars_.begin(), vars_.end(), var);
    if (it == vars_.end()) {
        if (k == 0) return *this;
        return MultiPoly();
    }
    std::size_t idx = static_cast<std::size_t>(it - vars_.begin());
    MultiPoly out;
    out.vars_ = vars_;
    for (const auto& [e, c] : terms_) {
        if (e[idx] != k) continue;
        Exponents ne = e;
        ne[idx] = 0;
        out.terms_.emplace(std::move(ne), c);
    }
    out.normalize();
    return out;
}

std::vector<MultiPoly> MultiPoly::coeffs_in(const std::string& var) const {
    int d = degree_in(var);
    std::vector<MultiPoly> out;
    for (int k = 0; k <= std::max(d, 0); ++k) out.push_back(coeff_of(var, k));
    return out;
}

MultiPoly MultiPoly::derivative(const std::string& var) const {
    auto it = std::find(vars_.begin(), vars_.end(), var);
    if (it == vars_.end()) return MultiPoly();
    std::size_t idx = static_cast<std::size_t>(it - vars_.begin());
    MultiPoly out;
    out.vars_ = vars_;
    for (const auto& [e, c] : terms_) {
        if (e[idx] == 0) continue;
        Exponents ne = e;
        ne[idx] -= 1;
        out.terms_.emplace(std::move(ne), c * Rational(e[idx]));
    }
    out.normalize();
    return out;
}

MultiPoly MultiPoly::substitute(const std::string& var, const MultiPoly& value) const {
    if (!has_var(var)) return *this;
    std::vector<MultiPoly> cs = coeffs_in(var);
    MultiPoly acc;  // Horner
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) acc = acc * value + *it;
    return acc;
}

Rational MultiPoly::eval(const std::map<std::string, Rational>& point) const {
    Rational acc(0);
    for (const auto& [e, c] : terms_) {
        Rational term = c;
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (e[i] == 0) continue;
            auto it = point.find(vars_[i]);
            if (it == point.end())
                throw std::invalid_argument("MultiPoly::eval: missing value for " + vars_[i]);
            term *= it->second.pow(e[i]);
        }
        acc += term;
    }
    return acc;
}

std::complex<double> MultiPoly::eval(
    const std::map<std::string, std::complex<double>>& point) const {
    std::complex<double> acc = 0.0;
    for (const auto& [e, c] : terms_) {
        std::complex<double> term = c.to_double();
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (e[i] == 0) continue;
            auto it = point.find(vars_[i]);
            if (it == point.end())
                throw std::invalid_argument("MultiPoly::eval: missing value for " + vars_[i]);
            std::complex<double> p = it->second;
            for (int k = 0; k < e[i]; ++k) term *= p;
        }
        acc += term;
    }
    return acc;
}

std::optional<MultiPoly> MultiPoly::try_divide_exact(const MultiPoly& divisor) const {
    if (divisor.is_zero()) throw std::invalid_argument("MultiPoly: division by zero");
    if (is_zero()) return MultiPoly();
    if (divisor.is_constant()) return *this / divisor.constant_value();
    std::vector<std::string> u = merged_vars(*this, divisor);
    TermMap rem = align_mapped(*this, u).terms_;
    TermMap div = align_mapped(divisor, u).terms_;
    const Exponents dExp = div.rbegin()->first;  // lex-leading term of the divisor
    const Rational dCoeff = div.rbegin()->second;
    TermMap quot;
    while (!rem.empty()) {
        auto rLead = rem.rbegin();
        Exponents q(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) {
            q[i] = rLead->first[i] - dExp[i];
            if (q[i] < 0) return std::nullopt;
        }
        Rational qc = rLead->second / dCoeff;
        // rem -= qc * x^q * divisor; the leading term cancels exactly
        for (const auto& [e, c] : div) {
            Exponents ne(u.size());
            for (std::size_t i = 0; i < u.size(); ++i) ne[i] = e[i] + q[i];
            Rational delta = qc * c;
            auto [it, fresh] = rem.emplace(std::move(ne), -delta);
            if (!fresh) {
                it->second -= delta;
                if (it->second.is_zero()) rem.erase(it);
            }
        }
        quot.emplace(std::move(q), std::move(qc));
    }
    MultiPoly out;
    out.vars_ = std::move(u);
    out.terms_ = std::move(quot);
    out.normalize();
    return out;
}

MultiPoly MultiPoly::divide_exact(const MultiPoly& divisor) const {
    auto q = try_divide_exact(divisor);
    if (!q) throw std::domain_error("MultiPoly::divide_exact: not divisible");
    return *q;
}

Rational MultiPoly::content() const {
    if (is_zero()) return Rational(0);
    mpz_class g = 0, l = 1;
    for (const auto& [e, c] : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.num().get_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.den().get_mpz_t());
    }
    mpq_class q(g, l);
    q.canonicalize();
    Rational r{std::move(q)};
    return terms_.rbegin()->second.sign() < 0 ? -r : r;
}

std::string MultiPoly::str() const {
    if (terms_.empty()) return "0";
    // descending by (total degree, lex on exponents)
    std::vector<const std::pair<const Exponents, Rational>*> order;
    for (const auto& t : terms_) order.push_back(&t);
    std::sort(order.begin(), order.end(), [](auto* a, auto* b) {
        int da = 0, db = 0;
        for (int x : a->first) da += x;
        for (int x : b->first) db += x;
        if (da != db) return da > db;
        return a->first > b->first;
    });
    std::ostringstream os;
    bool first = true;
    for (auto* t : order) {
        Rational c = t->second;
        if (first) {
            if (c.sign() < 0) os << "-";
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        first = false;
        Rational a = c.abs();
        bool hasVar = false;
        for (int x : t->first)
            if (x > 0) hasVar = true;
        if (!hasVar || !(a == Rational(1))) os << a.str();
        bool starNeeded = !hasVar ? false : !(a == Rational(1));
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            int e = t->first[i];
            if (e == 0) continue;
            if (starNeeded) os << "*";
            os << vars_[i];
            if (e > 1) os << "^" << e;
            starNeeded = true;
        }
    }
    return os.str();
}

MultiPoly poly_arith(const MultiPoly& p, const MultiPoly& q, PolyOp op) {
    switch (op) {
        case PolyOp::add: return p + q;
        case PolyOp::sub: return p - q;
        case PolyOp::mul: return p * q;
    }
    throw std::logic_error("poly_arith: bad op");
}

MultiPoly resultant_in(const MultiPoly& p, const MultiPoly& q, const std::string& var) {
    int dp = p.degree_in(var), dq = q.degree_in(var);
    if (dp < 1 || dq < 1)
        throw std::invalid_argument("resultant_in: nothing to eliminate (degree 0 in " + var +
                                    ")");
    std::vector<MultiPoly> pc = p.coeffs_in(var);  // ascending
    std::vector<MultiPoly> qc = q.coeffs_in(var);
    const int n = dp + dq;
    // Sylvester matrix: dq rows of p's coefficients, dp rows of q's, descending
    std::vector<std::vector<MultiPoly>> m(static_cast<std::size_t>(n),
                                          std::vector<MultiPoly>(static_cast<std::size_t>(n)));
    for (int r = 0; r < dq; ++r)
        for (int j = 0; j <= dp; ++j) m[r][r + j] = pc[static_cast<std::size_t>(dp - j)];
    for (int r = 0; r < dp; ++r)
        for (int j = 0; j <= dq; ++j) m[dq + r][r + j] = qc[static_cast<std::size_t>(dq - j)];

    // Bareiss fraction-free elimination; divisions are exact in the polynomial ring.
    MultiPoly prev(Rational(1));
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k].is_zero()) {
            int swap = -1;
            for (int i = k + 1; i < n; ++i)
                if (!m[i][k].is_zero()) {
                    swap = i;
                    break;
                }
            if (swap < 0) return MultiPoly();  // singular: resultant vanishes
            std::swap(m[k], m[swap]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j)
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]).divide_exact(prev);
            m[i][k] = MultiPoly();
        }
        prev = m[k][k];
    }
    MultiPoly det = m[n - 1][n - 1];
    return sign < 0 ? -det : det;
}

MultiPoly tridiag_charpoly(std::span<const MultiPoly> sub, std::span<const MultiPoly> diag,
                           std::span<const MultiPoly> super, const std::string& lambda) {
    const std::size_t n = diag.size();
    if (n == 0) throw std::invalid_argument("tridiag_charpoly: empty diagonal");
    if (sub.size() != n - 1 || super.size() != n - 1)
        throw std::invalid_argument("tridiag_charpoly: length mismatch");
    MultiPoly lam = MultiPoly::variable(lambda);
    MultiPoly pm1(Rational(1));  // p_{j-1}
    MultiPoly pj = lam - diag[0];
    for (std::size_t j = 1; j < n; ++j) {
        MultiPoly next = (lam - diag[j]) * pj - super[j - 1] * sub[j - 1] * pm1;
        pm1 = std::move(pj);
        pj = std::move(next);
    }
    return pj;
}

std::vector<Rational> univariate_coeffs(const MultiPoly& p) {
    if (p.vars().size() > 1)
        throw std::invalid_argument("univariate_coeffs: polynomial is multivariate");
    if (p.is_constant()) return {p.constant_value()};
    const std::string& v = p.vars()[0];
    std::vector<Rational> out(static_cast<std::size_t>(p.degree_in(v)) + 1, Rational(0));
    for (const auto& [e, c] : p.terms()) out[static_cast<std::size_t>(e[0])] = c;
    return out;
}

}  // namespace coaxial
