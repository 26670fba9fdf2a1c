// Command-line surface: gate | locus | solve | verify | sweep over JSON/CSV.
// Exit codes: 0 success, 2 infeasible input, 3 malformed input, 1 internal error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "coaxial/json_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitBadInput = 3;

struct GlobalOpts {
    std::string input;
    std::uint64_t seed = 0;
    std::string format = "json";
    double tolRoot = 1e-10;
    double tolSep = 1e-7;
    int threads = 1;
    long maxTheta = 6;
};

std::string read_input(const std::string& source) {
    if (source.empty()) throw std::invalid_argument("--input is required");
    if (source == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    // inline JSON is allowed; anything starting with '{' is treated as a document
    if (source.front() == '{') return source;
    std::ifstream in(source);
    if (!in) throw std::invalid_argument("cannot open input file " + source);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::vector<std::pair<int, int>> valid_sign_pairs(const coaxial::LocusInput& in) {
    std::vector<std::pair<int, int>> out;
    for (int e0 : {+1, -1})
        for (int e1 : {+1, -1}) {
            coaxial::Rational k = in.thetaInf + in.theta0 * coaxial::Rational(e0) +
                                  in.theta1 * coaxial::Rational(e1);
            if (!k.is_integer()) continue;
            long kv = static_cast<long>(k.num().get_si());
            if (((in.theta - kv) % 2 + 2) % 2 != 0) continue;
            out.emplace_back(e0, e1);
        }
    return out;
}

int run_gate(const GlobalOpts& g) {
    coaxial::AngleConfig cfg = coaxial::angle_config_from_json(read_input(g.input));
    coaxial::FeasibilityReport rep = coaxial::check_eremenko(cfg);
    std::cout << (g.format == "csv" ? coaxial::feasibility_to_csv(rep)
                                    : coaxial::feasibility_to_json(rep));
    if (g.format != "csv") std::cout << "\n";
    return rep.feasible ? kExitOk : kExitInfeasible;
}

int run_locus(const GlobalOpts& g) {
    coaxial::LocusInput in = coaxial::locus_input_from_json(read_input(g.input));
    if (in.theta < 2) throw std::invalid_argument("locus requires an integer angle theta >= 2");
    std::vector<std::pair<int, int>> pairs;
    if (in.epsGiven)
        pairs.emplace_back(in.eps0, in.eps1);
    else
        pairs = valid_sign_pairs(in);
    if (pairs.empty()) {
        std::cout << "{\"v\":1,\"branches\":[]}\n";
        return kExitInfeasible;
    }
    coaxial::RootOptions ropt;
    ropt.residual_tol = g.tolRoot;
    std::vector<std::pair<coaxial::HeunConfig, coaxial::LocusResult>> results;
    for (auto [e0, e1] : pairs) {
        coaxial::HeunConfig cfg =
            coaxial::HeunConfig::make(in.theta0, in.theta1, in.thetaInf, e0, e1, in.theta);
        results.emplace_back(cfg, coaxial::locus(cfg, ropt));
    }
    std::cout << (g.format == "csv" ? coaxial::locus_to_csv(results)
                                    : coaxial::locus_to_json(results));
    if (g.format != "csv") std::cout << "\n";
    bool any = false;
    for (const auto& [cfg, res] : results) any = any || !res.roots.empty();
    return any ? kExitOk : kExitInfeasible;
}

int run_solve(const GlobalOpts& g) {
    coaxial::AngleConfig cfg = coaxial::angle_config_from_json(read_input(g.input));
    coaxial::FeasibilityReport gate = coaxial::check_eremenko(cfg);
    coaxial::SolveOptions opt;
    opt.seed = g.seed;
    opt.tol_root = g.tolRoot;
    opt.tol_sep = g.tolSep;
    opt.threads = g.threads;
    std::vector<coaxial::BranchLocus> loci = coaxial::enumerate_locus(cfg, opt);
    std::cout << (g.format == "csv" ? coaxial::solve_to_csv(gate, loci)
                                    : coaxial::solve_to_json(gate, loci));
    if (g.format != "csv") std::cout << "\n";
    return gate.feasible ? kExitOk : kExitInfeasible;
}

int run_verify(const GlobalOpts& g) {
    coaxial::VerifyInput in = coaxial::verify_input_from_json(read_input(g.input));
    coaxial::DevelopingMap dm = coaxial::DevelopingMap::make(in.config, in.branch, in.zero);
    coaxial::VerificationReport rep = coaxial::verify(dm, g.seed);
    std::cout << (g.format == "csv" ? coaxial::verification_to_csv(rep)
                                    : coaxial::verification_to_json(rep));
    if (g.format != "csv") std::cout << "\n";
    return rep.pass() ? kExitOk : kExitInfeasible;
}

int run_sweep(const GlobalOpts& g) {
    coaxial::LocusInput in = coaxial::locus_input_from_json(
        read_input(g.input));  // "theta" may be present; the sweep ignores it
    std::vector<coaxial::SweepRow> rows;
    coaxial::RootOptions ropt;
    ropt.residual_tol = g.tolRoot;
    for (long theta = 2; theta <= g.maxTheta; ++theta) {
        coaxial::LocusInput probe = in;
        probe.theta = theta;
        for (auto [e0, e1] : valid_sign_pairs(probe)) {
            coaxial::HeunConfig cfg =
                coaxial::HeunConfig::make(in.theta0, in.theta1, in.thetaInf, e0, e1, theta);
            coaxial::MatrixEntries entries = coaxial::build_entries(cfg);
            coaxial::CharPolySplit split = coaxial::split_charpoly(cfg, entries);
            coaxial::LocusResult res = coaxial::locus(cfg, ropt);
            coaxial::SweepRow row;
            row.theta = theta;
            row.k = cfg.k;
            row.eps0 = e0;
            row.eps1 = e1;
            row.degPb = split.Pb.is_constant() ? 0 : split.Pb.degree_in("lambda");
            row.degPc = split.Pc.is_constant() ? 0 : split.Pc.degree_in("lambda");
            row.count = res.cardinality;
            row.predicted = res.predicted;
            rows.push_back(row);
        }
    }
    std::cout << (g.format == "csv" ? coaxial::sweep_to_csv(rows) : coaxial::sweep_to_json(rows));
    if (g.format != "csv") std::cout << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"co-axial spherical metric loci: feasibility gate, eliminant locus, "
                 "polynomial-system solve, certification, degree sweep"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    GlobalOpts g;
    app.add_option("--input", g.input, "input file, '-' for stdin, or inline JSON")
        ->required(false);
    app.add_option("--seed", g.seed, "seed for all randomized choices (default 0)");
    app.add_option("--format", g.format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--tol-root", g.tolRoot, "root / endpoint residual tolerance");
    app.add_option("--tol-sep", g.tolSep, "admissibility separation tolerance");
    app.add_option("--threads", g.threads, "worker threads for path tracking");
    app.add_option("--max-theta", g.maxTheta, "largest integer angle for sweep");

    auto* gate = app.add_subcommand("gate", "decide whether any singular set admits the angles");
    auto* locus = app.add_subcommand("locus", "single movable point: eliminant roots and counts");
    auto* solve = app.add_subcommand("solve", "general branch systems by homotopy continuation");
    auto* verify = app.add_subcommand("verify", "certify a candidate solution independently");
    auto* sweep = app.add_subcommand("sweep", "degree/count table over a range of integer angles");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gate->parsed()) return run_gate(g);
        if (locus->parsed()) return run_locus(g);
        if (solve->parsed()) return run_solve(g);
        if (verify->parsed()) return run_verify(g);
        if (sweep->parsed()) return run_sweep(g);
        return kExitBadInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
}
