#include <benchmark/benchmark.h>

#include <random>

#include <coaxial/angle_gate.hpp>
#include <coaxial/frobenius.hpp>
#include <coaxial/heun.hpp>
#include <coaxial/homotopy.hpp>

using namespace coaxial;

namespace {

HeunConfig heun_fixture(long theta) {
    long k = theta % 2 == 0 ? 0 : 1;
    // thetaInf = k + 1/3 + 1/6 keeps everything positive and non-integer
    return HeunConfig::make(Rational(1, 3), Rational(1, 6), Rational(6 * k + 3, 6), -1, -1,
                            theta);
}

}  // namespace

static void CharPoly(benchmark::State& state) {
    HeunConfig cfg = heun_fixture(state.range(0));
    MatrixEntries e = build_entries(cfg);
    for (auto _ : state) {
        CharPolySplit s = split_charpoly(cfg, e);
        benchmark::DoNotOptimize(s.P.term_count());
    }
}
BENCHMARK(CharPoly)->Arg(4)->Arg(8)->Arg(12);

static void Eliminant(benchmark::State& state) {
    HeunConfig cfg = heun_fixture(state.range(0));
    MatrixEntries e = build_entries(cfg);
    CharPolySplit s = split_charpoly(cfg, e);
    for (auto _ : state) {
        MultiPoly r = resultant_in(s.Pb, s.Pc, "lambda");
        benchmark::DoNotOptimize(r.term_count());
    }
}
BENCHMARK(Eliminant)->Arg(4)->Arg(6)->Arg(8)->Arg(10);

static void AberthRoots(benchmark::State& state) {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<Complex> coeffs(static_cast<std::size_t>(state.range(0)) + 1);
    for (auto& c : coeffs) c = Complex(u(rng), u(rng));
    for (auto _ : state) {
        RootMultiset rm = find_roots(coeffs);
        benchmark::DoNotOptimize(rm.total());
    }
}
BENCHMARK(AberthRoots)->Arg(6)->Arg(12)->Arg(24);

static void OddLatticeDistance(benchmark::State& state) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(-36, 36);
    std::vector<Rational> v;
    for (long i = 0; i < state.range(0); ++i) v.push_back(Rational(num(rng), 12));
    for (auto _ : state) {
        Rational d = mp_distance(v);
        benchmark::DoNotOptimize(d.sign());
    }
}
BENCHMARK(OddLatticeDistance)->Arg(4)->Arg(7)->Arg(11);

static void HomotopySolve(benchmark::State& state) {
    AngleConfig cfg =
        AngleConfig::make(Rational(1, 3), Rational(1, 6), Rational(1, 2), {}, {state.range(0)});
    Branch br = enumerate_branches(cfg).front();
    BranchSystem sys = build_system(cfg, br);
    SlicedSystem sl = slice(sys, {Rational(1)});
    for (auto _ : state) {
        SolveResult res = solve_sliced(cfg, sys, sl, {});
        benchmark::DoNotOptimize(res.zeros.size());
    }
}
BENCHMARK(HomotopySolve)->Arg(3)->Arg(4)->Arg(5);

static void ApparencyPolynomial(benchmark::State& state) {
    AngleConfig cfg =
        AngleConfig::make(Rational(1, 3), Rational(1, 6), Rational(1, 2), {}, {state.range(0)});
    QTemplate tmpl = QTemplate::make(cfg);
    for (auto _ : state) {
        ApparencyPoly ap = apparency_polynomial(tmpl, "t1");
        benchmark::DoNotOptimize(ap.poly.term_count());
    }
}
BENCHMARK(ApparencyPolynomial)->Arg(3)->Arg(5);

BENCHMARK_MAIN();
