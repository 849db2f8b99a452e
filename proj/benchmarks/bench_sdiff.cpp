#include "superdiff/random.hpp"
#include "superdiff/sdiff.hpp"
#include "superdiff/sections.hpp"

#include <benchmark/benchmark.h>

using namespace superdiff;

namespace {

Dims dims_for(benchmark::State const &state) { return {2, 2, unsigned(state.range(0))}; }

void BM_Compose(benchmark::State &state)
{
	RandomSource r(1);
	auto a = random_point(r, dims_for(state)), b = random_point(r, dims_for(state));
	for (auto _ : state)
		benchmark::DoNotOptimize(compose(a, b));
}
BENCHMARK(BM_Compose)->DenseRange(0, 3);

void BM_ComposeViaFactored(benchmark::State &state)
{
	RandomSource r(2);
	auto a = random_point(r, dims_for(state)), b = random_point(r, dims_for(state));
	for (auto _ : state)
		benchmark::DoNotOptimize(compose_via_factored(a, b));
}
BENCHMARK(BM_ComposeViaFactored)->DenseRange(0, 3);

void BM_Factorize(benchmark::State &state)
{
	RandomSource r(3);
	auto phi = random_point(r, dims_for(state));
	// no cached factored form
	SuperMorphism bare(phi.dims(), phi.images_x(), phi.images_th());
	for (auto _ : state)
		benchmark::DoNotOptimize(factorize(bare));
}
BENCHMARK(BM_Factorize)->DenseRange(0, 3);

void BM_Invert(benchmark::State &state)
{
	RandomSource r(4);
	auto phi = random_point(r, dims_for(state), true);
	for (auto _ : state)
		benchmark::DoNotOptimize(invert(phi));
}
BENCHMARK(BM_Invert)->DenseRange(0, 3);

void BM_SectionBasis(benchmark::State &state)
{
	for (auto _ : state)
		benchmark::DoNotOptimize(section_basis(2, 2, unsigned(state.range(0)), 2));
}
BENCHMARK(BM_SectionBasis)->DenseRange(0, 3);

} // namespace

BENCHMARK_MAIN();
