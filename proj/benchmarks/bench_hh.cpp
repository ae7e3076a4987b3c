#include "hhm/mackey.hpp"

#include <benchmark/benchmark.h>

namespace {

hhm::GroupPtr s3() { return hhm::make_group(hhm::FiniteGroup::symmetric(3)); }

void BM_RowReduce(benchmark::State& state) {
    const hhm::PrimeField f(static_cast<std::uint32_t>(state.range(1)));
    const auto n = static_cast<std::size_t>(state.range(0));
    hhm::Matrix m(f, n, n);
    std::uint64_t x = 88172645463325252ull;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            x ^= x << 13, x ^= x >> 7, x ^= x << 17;
            m(i, j) = static_cast<hhm::Elem>(x % f.p());
        }
    for (auto _ : state) benchmark::DoNotOptimize(hhm::rank(m));
}
BENCHMARK(BM_RowReduce)->Args({256, 2})->Args({256, 7})->Args({1024, 2})->Args({1024, 7});

void BM_Cohomology(benchmark::State& state) {
    const auto a = std::make_shared<const hhm::GradedAlgebra>(
        hhm::group_algebra(s3(), hhm::PrimeField(static_cast<std::uint32_t>(state.range(1)))));
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(hhm::cohomology(a->algebra_ptr(), n).dim());
}
BENCHMARK(BM_Cohomology)->Args({1, 2})->Args({2, 2})->Args({3, 2})->Args({2, 3})->Unit(benchmark::kMillisecond);

void BM_RegularTransfer(benchmark::State& state) {
    const auto a = std::make_shared<const hhm::GradedAlgebra>(hhm::group_algebra(s3(), hhm::PrimeField(2)));
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto m = std::make_shared<const hhm::Bimodule>(hhm::regular(a->algebra_ptr()));
    const hhm::Vec s = *a->canonical_form();
    for (auto _ : state) {
        hhm::TransferData data(m, s, s, n);
        benchmark::DoNotOptimize(data.lift(n, 0).data());
    }
}
BENCHMARK(BM_RegularTransfer)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_VerifyS3(benchmark::State& state) {
    const auto a = std::make_shared<const hhm::GradedAlgebra>(hhm::group_algebra(s3(), hhm::PrimeField(2)));
    for (auto _ : state) {
        hhm::MackeySystem sys(a, static_cast<std::size_t>(state.range(0)));
        benchmark::DoNotOptimize(hhm::verify_all(sys, hhm::all_axioms()).failed);
    }
}
BENCHMARK(BM_VerifyS3)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond)->Iterations(1);

} // namespace

BENCHMARK_MAIN();
