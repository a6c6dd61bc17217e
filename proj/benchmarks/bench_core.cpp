#include <random>

#include <benchmark/benchmark.h>

#include "locclab/densela.hpp"
#include "locclab/families.hpp"
#include "locclab/locc.hpp"
#include "locclab/opm.hpp"

namespace {

locclab::RealLinearSystem random_system(std::size_t width, std::size_t rows) {
    std::mt19937 rng(width * 1000 + rows);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    locclab::RealLinearSystem sys(width);
    for (std::size_t r = 0; r < rows; ++r) {
        std::vector<double> row(width);
        for (double& x : row) x = coef(rng);
        sys.add_row(std::move(row));
    }
    return sys;
}

void BM_nullspace(benchmark::State& state) {
    const std::size_t width = state.range(0);
    const auto sys = random_system(width, width / 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(locclab::nullspace(sys, 1e-9));
    }
}
BENCHMARK(BM_nullspace)->Arg(9)->Arg(16)->Arg(36);

void BM_gen_main_family(benchmark::State& state) {
    const std::size_t n = state.range(0), d = state.range(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(locclab::gen_main_family(n, d));
    }
}
BENCHMARK(BM_gen_main_family)->Args({3, 3})->Args({6, 6});

void BM_certify_main(benchmark::State& state) {
    const std::size_t n = state.range(0), d = state.range(1);
    const locclab::StateFamily f = locclab::gen_main_family(n, d);
    for (auto _ : state) {
        benchmark::DoNotOptimize(locclab::certify(f));
    }
}
BENCHMARK(BM_certify_main)->Args({3, 3})->Args({4, 4})->Args({6, 6});

void BM_protocol(benchmark::State& state) {
    const std::size_t n = state.range(0), d = state.range(1);
    const locclab::StateFamily attached =
        locclab::attach_resource(locclab::gen_main_family(n, d), n - 1, n);
    const locclab::ProtocolTree tree = locclab::build_discrimination_protocol(n, d);
    for (auto _ : state) {
        benchmark::DoNotOptimize(locclab::run_protocol(tree, attached, 1e-9));
    }
}
BENCHMARK(BM_protocol)->Args({3, 3})->Args({5, 4})->Args({6, 6});

void BM_basis2_split(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(locclab::build_basis2_split());
    }
}
BENCHMARK(BM_basis2_split);

}  // namespace

BENCHMARK_MAIN();
