#include <benchmark/benchmark.h>

#include <random>

#include "eqh/catalog.hpp"
#include "eqh/limits.hpp"
#include "eqh/solver.hpp"
#include "eqh/zhao.hpp"

using namespace eqh;

namespace {

RingElem random_elem(std::mt19937_64& rng, const RingConfig& cfg, int terms) {
    std::uniform_int_distribution<int> coeff(-9, 9), qexp(-3, 3), uexp(0, 5);
    std::vector<std::tuple<Rat, int, int>> parts;
    for (int i = 0; i < terms; ++i) {
        int c = coeff(rng);
        parts.push_back({c == 0 ? 1 : c, cfg.has_q ? qexp(rng) : 0, uexp(rng)});
    }
    RingElem e = RingElem::make(cfg, parts);
    return e.is_zero() ? RingElem::one(cfg) : e;
}

void bm_ring_mul(benchmark::State& state) {
    const RingConfig cfg = ring_config_zq(4);
    std::mt19937_64 rng(7);
    const RingElem x = random_elem(rng, cfg, 8);
    const RingElem y = random_elem(rng, cfg, 8);
    for (auto _ : state) benchmark::DoNotOptimize(x * y);
}
BENCHMARK(bm_ring_mul);

void bm_exact_div(benchmark::State& state) {
    const RingConfig cfg = ring_config_zq(4);
    std::mt19937_64 rng(7);
    const RingElem x = random_elem(rng, cfg, 6);
    const RingElem y = random_elem(rng, cfg, 4);
    const RingElem product = x * y;
    for (auto _ : state) benchmark::DoNotOptimize(product.exact_div(y));
}
BENCHMARK(bm_exact_div);

void bm_product_expand(benchmark::State& state) {
    const SpaceSpec spec = builtin_space("projective_space(4)");
    const GeneratorProduct g = spec.product_at(3);
    for (auto _ : state) benchmark::DoNotOptimize(product_expand(g));
}
BENCHMARK(bm_product_expand);

void bm_intertwining_residual(benchmark::State& state) {
    const SpaceSpec spec = builtin_space("taut_line_bundle(3)");
    const ProductTable pr = spec.table_at(2);
    const ProductTable pr1 = spec.table_at(3);
    const ModuleElem x = ModuleElem::unit(spec.basis, spec.ring, 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(intertwining_residual(
            spec.seidel_family(), pr, pr1, "e1", "e1", WeightRule{1, 0}, x, 2));
}
BENCHMARK(bm_intertwining_residual);

void bm_solver_ladder(benchmark::State& state) {
    const SpaceSpec spec = builtin_space(
        "projective_space(" + std::to_string(state.range(0)) + ")");
    const AnsatzBundle ansatz = make_ansatz(spec);
    for (auto _ : state) benchmark::DoNotOptimize(induct_over_r(ansatz, 2));
}
BENCHMARK(bm_solver_ladder)->Arg(2)->Arg(3)->Arg(4);

void bm_det_bareiss(benchmark::State& state) {
    const SpaceSpec spec = builtin_space("taut_line_bundle(3)");
    const RingMatrix m = seidel_instantiate(spec.seidel_family(), 4).matrix();
    for (auto _ : state) benchmark::DoNotOptimize(det_bareiss(m, spec.ring));
}
BENCHMARK(bm_det_bareiss);

void bm_det_berkowitz(benchmark::State& state) {
    const SpaceSpec spec = builtin_space("taut_line_bundle(3)");
    const RingMatrix m = seidel_instantiate(spec.seidel_family(), 4).matrix();
    for (auto _ : state) benchmark::DoNotOptimize(det_berkowitz(m, spec.ring));
}
BENCHMARK(bm_det_berkowitz);

void bm_generator_sequence(benchmark::State& state) {
    const SpaceSpec spec = builtin_space("taut_line_bundle(2)");
    for (auto _ : state)
        benchmark::DoNotOptimize(generator_sequence(
            spec.seidel_family(), spec.limit_basis, spec.limit_labels,
            static_cast<int>(state.range(0))));
}
BENCHMARK(bm_generator_sequence)->Arg(3)->Arg(5);

void bm_zhao_cohomology(benchmark::State& state) {
    const ZhaoComplex complex = build_complex(4, 10);
    for (auto _ : state)
        benchmark::DoNotOptimize(cohomology(complex, -8, 2));
}
BENCHMARK(bm_zhao_cohomology);

void bm_parse_space(benchmark::State& state) {
    const std::string text = render_space(builtin_space("projective_space(3)"));
    for (auto _ : state) benchmark::DoNotOptimize(parse_space(text));
}
BENCHMARK(bm_parse_space);

} // namespace

BENCHMARK_MAIN();
