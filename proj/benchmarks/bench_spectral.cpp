#include <benchmark/benchmark.h>

#include <etop/rng.hpp>
#include <etop/spectral.hpp>

namespace {

using namespace etop;

Eigen::MatrixXd metastable_markov(int n, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXd block = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const int b = i % 4;
    for (int j = b; j < n; j += 4) block(i, j) = 4.0 / n;
    for (int j = 0; j < n; ++j) block(i, j) += 0.02 * rng.next_double();
    block.row(i) /= block.row(i).sum();
  }
  return block;
}

void BM_DenseEigendecompose(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Eigen::MatrixXd m = metastable_markov(n, 5);
  EigenOptions opts;
  opts.method = EigenOptions::Method::Dense;
  for (auto _ : state) {
    auto report = eigendecompose(m, 8, 1e-8, opts);
    benchmark::DoNotOptimize(report.eigenvalues[0]);
  }
}
BENCHMARK(BM_DenseEigendecompose)->Arg(200)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_ArnoldiTopK(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Eigen::MatrixXd m = metastable_markov(n, 5);
  EigenOptions opts;
  opts.method = EigenOptions::Method::Arnoldi;
  for (auto _ : state) {
    auto report = eigendecompose(m, 8, 1e-8, opts);
    benchmark::DoNotOptimize(report.eigenvalues[0]);
  }
}
BENCHMARK(BM_ArnoldiTopK)->Arg(500)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);

}  // namespace
