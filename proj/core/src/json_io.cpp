#include "coaxial/json_io.hpp"

#include <charconv>
#include <sstream>

#include <json.hpp>

namespace coaxial {

namespace {

using nlohmann::json;

json parse_document(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw std::invalid_argument("malformed JSON input");
    return j;
}

Rational rational_field(const json& j, const char* key) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("missing field ") + key);
    const json& v = j.at(key);
    if (v.is_string()) return Rational::parse(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long>());
    throw std::invalid_argument(std::string("field ") + key + " must be a rational string");
}

json complex_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex complex_field(const json& v) {
    if (!v.is_array() || v.size() != 2)
        throw std::invalid_argument("complex values must be [re, im] pairs");
    return {v[0].get<double>(), v[1].get<double>()};
}

json signs_json(const SignAssignment& s) {
    json o = json::object();
    for (const auto& [label, e] : s.eps) o[label] = e;
    return o;
}

std::string format_double(double v) {
    char buf[40];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

}  // namespace

AngleConfig angle_config_from_json(const std::string& text) {
    json j = parse_document(text);
    std::vector<Rational> nonint;
    if (j.contains("nonint"))
        for (const json& v : j.at("nonint"))
            nonint.push_back(v.is_string() ? Rational::parse(v.get<std::string>())
                                           : Rational(v.get<long>()));
    std::vector<long> ints;
    if (!j.contains("ints")) throw std::invalid_argument("missing field ints");
    for (const json& v : j.at("ints")) ints.push_back(v.get<long>());
    return AngleConfig::make(rational_field(j, "theta0"), rational_field(j, "theta1"),
                             rational_field(j, "thetaInf"), std::move(nonint), std::move(ints));
}

VerifyInput verify_input_from_json(const std::string& text) {
    json j = parse_document(text);
    if (!j.contains("config") || !j.contains("branch") || !j.contains("zero"))
        throw std::invalid_argument("verify input needs config, branch, zero");
    VerifyInput in{angle_config_from_json(j.at("config").dump()), Branch{}, AdmissibleZero{}};

    const json& br = j.at("branch");
    for (const json& v : br.at("J1")) in.branch.J1.push_back(v.get<std::string>());
    in.branch.signs.eps["inf"] = +1;
    for (const auto& [label, e] : br.at("signs").items())
        in.branch.signs.eps[label] = e.get<int>();
    auto counts = derive_counts(in.config, in.branch.J1, in.branch.signs);
    if (!counts) throw std::invalid_argument("verify input: branch counts are not admissible");
    in.branch.m1 = counts->first;
    in.branch.m2 = counts->second;
    in.branch.kPrime = std::abs(in.branch.m2 - in.branch.m1);
    in.branch.kDoublePrime = 2 * std::min(in.branch.m1, in.branch.m2);
    in.branch.L = in.branch.m1 + in.branch.m2 + static_cast<long>(in.branch.J1.size()) - 1;

    const json& z = j.at("zero");
    for (const json& v : z.at("a")) in.zero.a.push_back(complex_field(v));
    for (const json& v : z.at("b")) in.zero.b.push_back(complex_field(v));
    for (const json& v : z.at("t")) in.zero.t.push_back(complex_field(v));
    if (static_cast<long>(in.zero.a.size()) != in.branch.m1 ||
        static_cast<long>(in.zero.b.size()) != in.branch.m2 ||
        static_cast<int>(in.zero.t.size()) != in.config.n() + in.config.m())
        throw std::invalid_argument("verify input: zero shape disagrees with the branch");
    return in;
}

LocusInput locus_input_from_json(const std::string& text) {
    json j = parse_document(text);
    LocusInput in;
    in.theta0 = rational_field(j, "theta0");
    in.theta1 = rational_field(j, "theta1");
    in.thetaInf = rational_field(j, "thetaInf");
    in.theta = j.contains("theta") ? j.at("theta").get<long>() : 0;  // sweep inputs omit it
    if (j.contains("eps0") != j.contains("eps1"))
        throw std::invalid_argument("eps0 and eps1 must be given together");
    if (j.contains("eps0")) {
        in.epsGiven = true;
        in.eps0 = j.at("eps0").get<int>();
        in.eps1 = j.at("eps1").get<int>();
    }
    return in;
}

std::string feasibility_to_json(const FeasibilityReport& report) {
    json j;
    j["v"] = 1;
    j["feasible"] = report.feasible;
    j["d1"] = report.mpDistance.str();
    json ws = json::array();
    for (const auto& w : report.witnesses) {
        json wj;
        wj["signs"] = signs_json(w.signs);
        wj["kPrime"] = w.kPrime;
        wj["kDoublePrime"] = w.kDoublePrime;
        wj["eta"] = w.eta.str();
        json b = json::array();
        for (const mpz_class& x : w.b) b.push_back(x.get_str());
        wj["b"] = b;
        wj["k3ok"] = w.k3ok;
        ws.push_back(std::move(wj));
    }
    j["witnesses"] = std::move(ws);
    return j.dump();
}

namespace {

json locus_branch_json(const HeunConfig& cfg, const LocusResult& res) {
    json j;
    j["theta"] = cfg.theta;
    j["k"] = cfg.k;
    j["eps0"] = cfg.eps0;
    j["eps1"] = cfg.eps1;
    j["resultant"] = res.resT.str();
    j["predicted"] = res.predicted;
    j["cardinality"] = res.cardinality;
    j["gcdNontrivial"] = res.gcdNontrivial;
    json roots = json::array();
    for (const auto& r : res.roots) {
        json rj;
        rj["t"] = complex_json(r.t);
        rj["mult"] = r.multiplicity;
        rj["fiber"] = r.fiberSize;
        rj["nearExcluded"] = r.nearExcluded;
        roots.push_back(std::move(rj));
    }
    j["roots"] = std::move(roots);
    return j;
}

}  // namespace

std::string locus_to_json(const std::vector<std::pair<HeunConfig, LocusResult>>& branches) {
    json j;
    j["v"] = 1;
    if (branches.size() == 1) {
        j.update(locus_branch_json(branches[0].first, branches[0].second));
    } else {
        json arr = json::array();
        for (const auto& [cfg, res] : branches) arr.push_back(locus_branch_json(cfg, res));
        j["branches"] = std::move(arr);
    }
    return j.dump();
}

std::string solve_to_json(const FeasibilityReport& gate, const std::vector<BranchLocus>& loci) {
    json j;
    j["v"] = 1;
    j["feasible"] = gate.feasible;
    j["d1"] = gate.mpDistance.str();
    json arr = json::array();
    for (const BranchLocus& bl : loci) {
        json b;
        b["J1"] = bl.branch.J1;
        b["signs"] = signs_json(bl.branch.signs);
        b["m1"] = bl.branch.m1;
        b["m2"] = bl.branch.m2;
        b["L"] = bl.branch.L;
        json dir = json::array();
        for (const Rational& d : bl.direction) dir.push_back(d.str());
        b["direction"] = std::move(dir);
        b["paths"] = bl.result.stats.paths;
        b["converged"] = bl.result.stats.converged;
        b["diverged"] = bl.result.stats.diverged;
        b["failed"] = bl.result.stats.failed;
        json zs = json::array();
        for (const AdmissibleZero& z : bl.result.zeros) {
            json zj;
            json a = json::array(), bb = json::array(), t = json::array();
            for (const Complex& v : z.a) a.push_back(complex_json(v));
            for (const Complex& v : z.b) bb.push_back(complex_json(v));
            for (const Complex& v : z.t) t.push_back(complex_json(v));
            zj["a"] = std::move(a);
            zj["b"] = std::move(bb);
            zj["t"] = std::move(t);
            zj["admissible"] = z.admissible;
            zj["residual"] = z.residual;
            zj["mult"] = z.multiplicity;
            zs.push_back(std::move(zj));
        }
        b["zeros"] = std::move(zs);
        arr.push_back(std::move(b));
    }
    j["branches"] = std::move(arr);
    return j.dump();
}

std::string verification_to_json(const VerificationReport& report) {
    json j;
    j["v"] = 1;
    j["pass"] = report.pass();
    auto cj = [](const CheckResult& c) {
        json o;
        o["ok"] = c.ok;
        o["maxDeviation"] = c.max_deviation;
        if (!c.detail.empty()) o["detail"] = c.detail;
        return o;
    };
    j["gIdentity"] = cj(report.gIdentity);
    j["schwarzian"] = cj(report.schwarzian);
    j["asymptotics"] = cj(report.asymptotic);
    j["momentDeviation"] = report.momentDeviation;
    json ds = json::array();
    for (const auto& [label, d] : report.dResiduals) {
        json o;
        o["p"] = label;
        o["d"] = complex_json(d);
        ds.push_back(std::move(o));
    }
    j["dResiduals"] = std::move(ds);
    return j.dump();
}

std::string sweep_to_json(const std::vector<SweepRow>& rows) {
    json j;
    j["v"] = 1;
    json arr = json::array();
    for (const SweepRow& r : rows) {
        json o;
        o["theta"] = r.theta;
        o["k"] = r.k;
        o["eps0"] = r.eps0;
        o["eps1"] = r.eps1;
        o["degPb"] = r.degPb;
        o["degPc"] = r.degPc;
        o["count"] = r.count;
        o["predicted"] = r.predicted;
        arr.push_back(std::move(o));
    }
    j["rows"] = std::move(arr);
    return j.dump();
}

namespace {

std::string signs_compact(const SignAssignment& s) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [label, e] : s.eps) {
        if (!first) os << ";";
        first = false;
        os << label << "=" << (e > 0 ? "+1" : "-1");
    }
    return os.str();
}

std::string complex_compact(const Complex& z) {
    return format_double(z.real()) + "|" + format_double(z.imag());
}

}  // namespace

std::string feasibility_to_csv(const FeasibilityReport& report) {
    std::ostringstream os;
    os << "feasible,d1,signs,kPrime,kDoublePrime,eta,bSum,k3ok\n";
    if (report.witnesses.empty()) {
        os << (report.feasible ? "true" : "false") << "," << report.mpDistance.str()
           << ",,,,,,\n";
        return os.str();
    }
    for (const auto& w : report.witnesses) {
        mpz_class bSum = 0;
        for (const mpz_class& x : w.b) bSum += x;
        os << (report.feasible ? "true" : "false") << "," << report.mpDistance.str() << ","
           << signs_compact(w.signs) << "," << w.kPrime << "," << w.kDoublePrime << ","
           << w.eta.str() << "," << bSum.get_str() << "," << (w.k3ok ? "true" : "false") << "\n";
    }
    return os.str();
}

std::string locus_to_csv(const std::vector<std::pair<HeunConfig, LocusResult>>& branches) {
    std::ostringstream os;
    os << "theta,k,eps0,eps1,tRe,tIm,mult,fiber,predicted\n";
    for (const auto& [cfg, res] : branches)
        for (const auto& r : res.roots)
            os << cfg.theta << "," << cfg.k << "," << cfg.eps0 << "," << cfg.eps1 << ","
               << format_double(r.t.real()) << "," << format_double(r.t.imag()) << ","
               << r.multiplicity << "," << r.fiberSize << "," << res.predicted << "\n";
    return os.str();
}

std::string solve_to_csv(const FeasibilityReport& gate, const std::vector<BranchLocus>& loci) {
    std::ostringstream os;
    os << "branch,signs,L,admissible,residual,mult,a,b,t\n";
    int idx = 0;
    for (const BranchLocus& bl : loci) {
        for (const AdmissibleZero& z : bl.result.zeros) {
            auto joined = [](const std::vector<Complex>& v) {
                std::string s;
                for (std::size_t i = 0; i < v.size(); ++i) {
                    if (i) s += ";";
                    s += complex_compact(v[i]);
                }
                return s;
            };
            os << idx << "," << signs_compact(bl.branch.signs) << "," << bl.branch.L << ","
               << (z.admissible ? "true" : "false") << "," << format_double(z.residual) << ","
               << z.multiplicity << "," << joined(z.a) << "," << joined(z.b) << ","
               << joined(z.t) << "\n";
        }
        ++idx;
    }
    if (loci.empty())
        os << (gate.feasible ? "" : "-1,infeasible,0,false,0,0,,,\n");
    return os.str();
}

std::string verification_to_csv(const VerificationReport& report) {
    std::ostringstream os;
    os << "check,ok,maxDeviation\n";
    os << "gIdentity," << (report.gIdentity.ok ? "true" : "false") << ","
       << format_double(report.gIdentity.max_deviation) << "\n";
    os << "schwarzian," << (report.schwarzian.ok ? "true" : "false") << ","
       << format_double(report.schwarzian.max_deviation) << "\n";
    os << "asymptotics," << (report.asymptotic.ok ? "true" : "false") << ","
       << format_double(report.asymptotic.max_deviation) << "\n";
    return os.str();
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << "theta,k,eps0,eps1,degPb,degPc,count,predicted\n";
    for (const SweepRow& r : rows)
        os << r.theta << "," << r.k << "," << r.eps0 << "," << r.eps1 << "," << r.degPb << ","
           << r.degPc << "," << r.count << "," << r.predicted << "\n";
    return os.str();
}

}  // namespace coaxial
