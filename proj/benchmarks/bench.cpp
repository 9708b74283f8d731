#include <benchmark/benchmark.h>

#include <random>

#include "wittlift/expr.hpp"
#include "wittlift/lifting.hpp"

using namespace wittlift;

namespace {

std::vector<RingElem> random_elems(const RingPtr& ring, std::size_t count) {
    std::mt19937 rng(1);
    std::vector<RingElem> out;
    for (std::size_t k = 0; k < count; ++k) {
        std::vector<std::uint64_t> coords(ring->dim());
        for (std::size_t i = 0; i < ring->dim(); ++i)
            coords[i] = rng() % ring->coord_modulus(i);
        out.push_back(ring->from_coords(std::move(coords)));
    }
    return out;
}

void BM_RingMul(benchmark::State& state) {
    RingPtr ring = make_ring(RingDescriptor::pd(RingParams(3), 5, 6));
    auto elems = random_elems(ring, 64);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(elems[i % 64] * elems[(i + 17) % 64]);
        ++i;
    }
}
BENCHMARK(BM_RingMul);

void BM_Gamma(benchmark::State& state) {
    RingPtr ring = make_ring(RingDescriptor::pd(RingParams(3), 4, 5));
    auto elems = random_elems(ring, 64);
    for (auto& e : elems) {
        auto coords = e.coords();
        coords[0] -= coords[0] % 3;
        e = ring->from_coords(coords);
    }
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gamma(elems[i % 64], 4));
        ++i;
    }
}
BENCHMARK(BM_Gamma);

void BM_SolveLinear(benchmark::State& state) {
    std::mt19937 rng(2);
    std::uint64_t pm = prime_power(3, 5);
    std::vector<std::vector<std::uint64_t>> A(6, std::vector<std::uint64_t>(6));
    std::vector<std::uint64_t> b(6);
    for (auto& row : A)
        for (auto& x : row)
            x = rng() % pm;
    for (auto& x : b)
        x = rng() % pm;
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_linear_raw(3, 5, A, b));
}
BENCHMARK(BM_SolveLinear);

void BM_LiftCell(benchmark::State& state) {
    SeriesContext ctx(RingParams(3), 4, 8, {"x", "y"});
    Presentation node(ctx, {parse_series_expr("x*y", ctx)});
    for (auto _ : state)
        benchmark::DoNotOptimize(condition_pd_lift(node, 2, 3, 100000));
}
BENCHMARK(BM_LiftCell);

void BM_ProbeNode(benchmark::State& state) {
    SeriesContext ctx(RingParams(3), 5, 8, {"x", "y"});
    Presentation node(ctx, {parse_series_expr("x*y", ctx)});
    for (auto _ : state)
        benchmark::DoNotOptimize(probe_smoothness(node, ProbeBounds{}));
}
BENCHMARK(BM_ProbeNode);

} // namespace

BENCHMARK_MAIN();
