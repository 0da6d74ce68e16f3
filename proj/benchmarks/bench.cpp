#include <benchmark/benchmark.h>

#include <random>

#include "zca/apps.hpp"
#include "zca/kernel.hpp"

using namespace zca;

namespace {

FieldPtr f2u() { return Field::make({2, 1, {}, {"u"}}); }

std::pair<TPoly, TPoly> lech(const FieldPtr& K) {
    auto u = FieldElement::var(K, 0);
    auto one = FieldElement::one(K);
    TPoly f1 = TPoly::one_minus(K, 1, 0, one + u);
    TPoly f2 = TPoly::one_minus(K, 1, 0, u);
    TPoly f3 = TPoly::one_minus(K, 1, 0, one);
    TPoly A = tp_sub(tp_mul(f2, f3), tp_add(tp_mul(f1, f3), tp_mul(f1, f2)));
    TPoly B = tp_mul(f1, tp_mul(f2, f3));
    return {A, B};
}

void BM_FieldMul(benchmark::State& state) {
    auto K = f2u();
    std::mt19937 rng(1);
    auto u = FieldElement::var(K, 0);
    auto x = (u * u + u + FieldElement::one(K)) / (u + FieldElement::one(K));
    auto y = u.pow(7) + u.pow(3);
    for (auto _ : state) benchmark::DoNotOptimize(x * y);
}
BENCHMARK(BM_FieldMul);

void BM_PiProject(benchmark::State& state) {
    auto K = f2u();
    auto u = FieldElement::var(K, 0);
    auto x = (u.pow(9) + u.pow(4) + FieldElement::one(K)) / (u.pow(2) + u);
    for (auto _ : state) benchmark::DoNotOptimize(x.pi_all());
}
BENCHMARK(BM_PiProject);

void BM_CartierSplit(benchmark::State& state) {
    auto K = f2u();
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> dc(0, 1);
    TPoly g = TPoly::zero(K, 2);
    for (auto& e : exponents_up_to(2, 10))
        if (dc(rng)) g = tp_add(g, TPoly::monomial(K, 2, e, FieldElement::var(K, 0).pow(dc(rng))));
    for (auto _ : state) benchmark::DoNotOptimize(cartier_split(g));
}
BENCHMARK(BM_CartierSplit);

void BM_LechExpand(benchmark::State& state) {
    auto K = f2u();
    auto [A, B] = lech(K);
    auto in = AlgebraicInput::rational(A, B);
    for (auto _ : state) benchmark::DoNotOptimize(expand_series(in, (uint32_t)state.range(0)));
}
BENCHMARK(BM_LechExpand)->Arg(64)->Arg(256);

void BM_LechKernel(benchmark::State& state) {
    auto K = f2u();
    auto [A, B] = lech(K);
    for (auto _ : state) benchmark::DoNotOptimize(build_zero_automaton_rational(A, B));
}
BENCHMARK(BM_LechKernel);

void BM_SUnitXY(benchmark::State& state) {
    auto K = f2u();
    auto u = FieldElement::var(K, 0);
    auto one = FieldElement::one(K);
    SUnitProblem prob;
    prob.K = K;
    prob.coeffs = {one, one};
    prob.generators = {u, one - u};
    for (auto _ : state) benchmark::DoNotOptimize(sunit_solutions(prob));
}
BENCHMARK(BM_SUnitXY);

void BM_Minimize(benchmark::State& state) {
    std::mt19937 rng(99);
    std::uniform_int_distribution<uint32_t> ds(0, 199);
    Dfa a;
    a.p = 2;
    a.d = 1;
    a.dir = Direction::LSB;
    a.start = 0;
    a.out.resize(200);
    a.delta.assign(200, {0, 0});
    for (uint32_t s = 0; s < 200; ++s) {
        a.delta[s] = {ds(rng), ds(rng)};
    }
    for (uint32_t s = 0; s < 200; ++s) {
        uint32_t cur = s;
        for (int i = 0; i <= 200; ++i) cur = a.delta[cur][0];
        uint32_t mn = cur, c2 = a.delta[cur][0];
        while (c2 != cur) {
            mn = std::min(mn, c2);
            c2 = a.delta[c2][0];
        }
        a.out[s] = (uint8_t)(mn & 1);
    }
    for (auto _ : state) benchmark::DoNotOptimize(dfa_minimize(a));
}
BENCHMARK(BM_Minimize);

}  // namespace

BENCHMARK_MAIN();
