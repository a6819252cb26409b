#include <benchmark/benchmark.h>

#include "gradekit/classify.hpp"

using namespace gradekit;

namespace {

IntMatrix sample_matrix(std::size_t n) {
    IntMatrix M(n, std::vector<BigInt>(n));
    std::int64_t v = 7;
    for (auto& row : M)
        for (auto& x : row) {
            v = (v * 1103515245 + 12345) % 2147483648;
            x = v % 41 - 20;
        }
    return M;
}

void BM_SmithNormalForm(benchmark::State& st) {
    IntMatrix M = sample_matrix(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(smith_normal_form(M));
}
BENCHMARK(BM_SmithNormalForm)->Arg(4)->Arg(8)->Arg(16);

void BM_StandardRealization(benchmark::State& st) {
    Bicharacter b = beta_ell(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(build_standard_realization(b));
}
BENCHMARK(BM_StandardRealization)->DenseRange(1, 3);

void BM_BuildAndVerifyEven(benchmark::State& st) {
    auto d = enumerate_even_fine(static_cast<std::size_t>(st.range(0)), static_cast<std::size_t>(st.range(0)));
    EvenAssoc spec = *d.back().even;
    for (auto _ : st) benchmark::DoNotOptimize(verify_grading(build_matrix_model(spec)));
}
BENCHMARK(BM_BuildAndVerifyEven)->Arg(2)->Arg(4);

void BM_BuildAndVerifyOdd(benchmark::State& st) {
    OddAssocT spec = *enumerate_odd_fine(static_cast<std::size_t>(st.range(0))).back().odd;
    for (auto _ : st) benchmark::DoNotOptimize(verify_grading(build_matrix_model(spec)));
}
BENCHMARK(BM_BuildAndVerifyOdd)->Arg(1)->Arg(2);

void BM_PModel(benchmark::State& st) {
    PSpec spec = *enumerate_P_fine(static_cast<std::size_t>(st.range(0))).front().p;
    for (auto _ : st) benchmark::DoNotOptimize(verify_P_graded(build_P_model(spec)));
}
BENCHMARK(BM_PModel)->Arg(2)->Arg(3)->Arg(7);

void BM_IsoEven(benchmark::State& st) {
    FinGenAbGroup Z = FinGenAbGroup::integers();
    std::vector<GroupElement> g0, g1, h0, h1;
    for (std::int64_t i = 0; i < st.range(0); ++i) {
        g0.push_back({i * i % 7});
        g1.push_back({i % 3});
        h0.push_back({i * i % 7 + 5});
        h1.push_back({i % 3 + 5});
    }
    EvenAssoc a = make_even_spec(Z, {}, {}, g0, g1), b = make_even_spec(Z, {}, {}, h0, h1);
    for (auto _ : st) benchmark::DoNotOptimize(iso_even_assoc(a, b));
}
BENCHMARK(BM_IsoEven)->Arg(8)->Arg(64);

void BM_IsoP(benchmark::State& st) {
    PSpec a = *enumerate_P_fine(7).back().p;
    for (auto _ : st) benchmark::DoNotOptimize(iso_P(a, a));
}
BENCHMARK(BM_IsoP);

void BM_OrbitSearch(benchmark::State& st) {
    Bicharacter b = beta_ell(2);
    GroupElement t0{1, 0, 0, 0}, t1{0, 0, 1, 1};
    for (auto _ : st) benchmark::DoNotOptimize(beta_automorphism_exists(b, t0, t1));
}
BENCHMARK(BM_OrbitSearch);

void BM_EnumerateFine(benchmark::State& st) {
    for (auto _ : st) {
        benchmark::DoNotOptimize(enumerate_P_fine(7));
        benchmark::DoNotOptimize(enumerate_odd_fine(2));
    }
}
BENCHMARK(BM_EnumerateFine)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
