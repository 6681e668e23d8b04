#include <benchmark/benchmark.h>

#include <random>

#include "twistk/catalog.hpp"

using namespace twistk;

namespace {

ExactMatrix random_matrix(std::mt19937_64& rng, const FieldSpec& f, int rows, int cols) {
    ExactMatrix m(rows, cols, f);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            m.at(i, j) = Scalar::from_int(f, static_cast<long long>(rng() % 19) - 9);
    return m;
}

void BM_rank_and_kernel_Q(benchmark::State& state) {
    std::mt19937_64 rng(1);
    const int n = static_cast<int>(state.range(0));
    ExactMatrix m = random_matrix(rng, FieldSpec::Q(), n, n + n / 2);
    for (auto _ : state) {
        auto rk = rank_and_kernel(m);
        benchmark::DoNotOptimize(rk.rank);
    }
}
BENCHMARK(BM_rank_and_kernel_Q)->Arg(16)->Arg(32)->Arg(64);

void BM_rank_and_kernel_Fp(benchmark::State& state) {
    std::mt19937_64 rng(2);
    const int n = static_cast<int>(state.range(0));
    ExactMatrix m = random_matrix(rng, FieldSpec::Fp(101), n, n + n / 2);
    for (auto _ : state) {
        auto rk = rank_and_kernel(m);
        benchmark::DoNotOptimize(rk.rank);
    }
}
BENCHMARK(BM_rank_and_kernel_Fp)->Arg(32)->Arg(64)->Arg(128);

void BM_truncate_parity_product(benchmark::State& state) {
    auto f = FieldSpec::Q();
    Presentation p = free_presentation({"x", "y"}, f);
    p.relations.push_back(NcPoly::from_terms(2, {{Word{0, 0}, Scalar::one(f)}}));
    p.relations.push_back(NcPoly::from_terms(
        3, {{Word{1, 1, 0}, Scalar::one(f)}, {Word{0, 1, 1}, -Scalar::one(f)}}));
    const int N = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto alg = TruncatedAlgebra::truncate(p, N);
        benchmark::DoNotOptimize(alg->dim(N));
    }
}
BENCHMARK(BM_truncate_parity_product)->Arg(6)->Arg(8)->Arg(10);

void BM_verify_parity(benchmark::State& state) {
    auto fx = make_fixture("ex5_3", FieldSpec::Q(), static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto v = verify_twisting_to_degree(fx.table, fx.table.bound());
        benchmark::DoNotOptimize(v.ok);
    }
}
BENCHMARK(BM_verify_parity)->Arg(6)->Arg(8);

void BM_extend_ex7_4(benchmark::State& state) {
    const int N = static_cast<int>(state.range(0));
    auto f = FieldSpec::Q();
    auto A = TruncatedAlgebra::truncate(free_presentation({"x"}, f), N);
    auto B = TruncatedAlgebra::truncate(free_presentation({"d", "u"}, f), N);
    KunnethBasis kb(*A, *B, 2);
    int dd = B->basis_index(2, Word{0, 0});
    std::vector<SparseVec> t1(2, SparseVec(kb.dim()));
    t1[0].add_term(kb.index(1, 0, 0), Scalar::one(f));
    t1[0].add_term(kb.index(0, 0, dd), Scalar::one(f));
    t1[1].add_term(kb.index(2, 0, 0), Scalar::one(f));
    t1[1].add_term(kb.index(1, 0, 1), Scalar::one(f));
    for (auto _ : state) {
        auto tw = separable_seed_extend(A, B, t1, SeparableSplit{{1}}, N);
        benchmark::DoNotOptimize(tw.bound());
    }
}
BENCHMARK(BM_extend_ex7_4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_minimal_tor_poly2(benchmark::State& state) {
    auto f = FieldSpec::Q();
    Presentation p = free_presentation({"x", "y"}, f);
    p.relations.push_back(
        NcPoly::from_terms(2, {{Word{0, 1}, Scalar::one(f)}, {Word{1, 0}, -Scalar::one(f)}}));
    const int N = static_cast<int>(state.range(0));
    auto alg = TruncatedAlgebra::truncate(p, N);
    for (auto _ : state) {
        auto t = minimal_tor_table(alg, N, N);
        benchmark::DoNotOptimize(t.entries.size());
    }
}
BENCHMARK(BM_minimal_tor_poly2)->Arg(6)->Arg(8);

void BM_bar_tor_poly2(benchmark::State& state) {
    auto f = FieldSpec::Q();
    Presentation p = free_presentation({"x", "y"}, f);
    p.relations.push_back(
        NcPoly::from_terms(2, {{Word{0, 1}, Scalar::one(f)}, {Word{1, 0}, -Scalar::one(f)}}));
    const int N = static_cast<int>(state.range(0));
    auto alg = TruncatedAlgebra::truncate(p, N);
    for (auto _ : state) {
        auto t = bar_tor_table(alg, N, N);
        benchmark::DoNotOptimize(t.entries.size());
    }
}
BENCHMARK(BM_bar_tor_poly2)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
