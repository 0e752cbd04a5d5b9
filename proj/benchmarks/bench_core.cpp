#include <qcovert/channels.hpp>
#include <qcovert/covert.hpp>
#include <qcovert/detection.hpp>
#include <qcovert/linalg.hpp>

#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>

namespace {

using namespace qcovert;

// Deterministic dense Hermitian test matrix.
Matrix test_hermitian(Eigen::Index dim) {
    Matrix m(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index i = 0; i <= j; ++i) {
            const double x = static_cast<double>(i * 31 + j * 17);
            const Complex v = i == j ? Complex(std::cos(x), 0.0) : Complex(std::sin(x), std::cos(0.5 * x)) / 4.0;
            m(i, j) = v;
            m(j, i) = std::conj(v);
        }
    }
    return m;
}

void BM_EigHermitian(benchmark::State& state) {
    const HermitianOperator h(test_hermitian(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(eig_hermitian(h));
}
BENCHMARK(BM_EigHermitian)->RangeMultiplier(4)->Range(4, 256)->Unit(benchmark::kMillisecond);

void BM_DvqExact(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(dvq_exact(1e-4, 0.5));
}
BENCHMARK(BM_DvqExact);

void BM_ArrowSpectral(benchmark::State& state) {
    const auto p = ArrowMatrixParams::joint_output(1e-4, 0.5);
    for (auto _ : state) benchmark::DoNotOptimize(arrow_spectral(p));
}
BENCHMARK(BM_ArrowSpectral);

void BM_WardenError(benchmark::State& state) {
    const ChannelSpec spec(0.5, Scenario::E1Only);
    const auto n = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(warden_error(n, 0.05, spec));
}
BENCHMARK(BM_WardenError)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

void BM_RateReport(benchmark::State& state) {
    const ScheduleParams s(1'000'000, 0.05);
    for (auto _ : state) benchmark::DoNotOptimize(rate_report(s, 0.5, 0.05));
}
BENCHMARK(BM_RateReport);

}  // namespace

BENCHMARK_MAIN();
