#include <benchmark/benchmark.h>

#include "qg/cochain.hpp"
#include "qg/fuzzy.hpp"
#include "qg/moduli.hpp"
#include "qg/quasialg.hpp"

using namespace qg;

static void BM_OctonionTable(benchmark::State& state) {
    TwistedAlgebra alg = TwistedAlgebra::octonions();
    for (auto _ : state) {
        for (std::uint32_t a = 0; a < 8; ++a)
            for (std::uint32_t b = 0; b < 8; ++b) {
                auto r = bullet(AlgebraElement::basis(GroupVector(a, 3)),
                                AlgebraElement::basis(GroupVector(b, 3)), alg);
                benchmark::DoNotOptimize(r);
            }
    }
}
BENCHMARK(BM_OctonionTable);

static void BM_StarExpandOctonion(benchmark::State& state) {
    Cochain f = octonion_cochain();
    for (auto _ : state) {
        auto op = star_expand(fourier_cochain(f));
        benchmark::DoNotOptimize(op);
    }
}
BENCHMARK(BM_StarExpandOctonion);

static void BM_CocycleCheck(benchmark::State& state) {
    Associator phi = coboundary(octonion_cochain());
    for (auto _ : state) {
        bool ok = is_cocycle(phi);
        benchmark::DoNotOptimize(ok);
    }
}
BENCHMARK(BM_CocycleCheck);

static void BM_FuzzyAssociator(benchmark::State& state) {
    const int n = 2, K = int(state.range(0));
    DiffCochain f = DiffCochain::negative_power(2, Rational(1, 3), Metric::euclidean(n));
    Jet a = Jet::coordinate(n, K, 1) + Jet::monomial(n, K, {1, 1}, Scalar(Rational(1, 2)));
    Jet b = Jet::coordinate(n, K, 2) + Jet::monomial(n, K, {2, 0}, Scalar(Rational(-1, 3)));
    Jet c = Jet::unit(n, K) + Jet::monomial(n, K, {0, 2}, Scalar(2));
    for (auto _ : state) {
        Jet defect = associator_jet(a, b, c, f);
        benchmark::DoNotOptimize(defect);
    }
}
BENCHMARK(BM_FuzzyAssociator)->Arg(2)->Arg(3)->Arg(4);

static void BM_ModuliSearchN2(benchmark::State& state) {
    const std::vector<double> amps = {0.0, 1.0};
    const std::vector<double> phases = {0.0, 3.14159265358979312};
    for (auto _ : state) {
        auto results = search_flat(2, amps, phases);
        benchmark::DoNotOptimize(results);
    }
}
BENCHMARK(BM_ModuliSearchN2);

BENCHMARK_MAIN();
