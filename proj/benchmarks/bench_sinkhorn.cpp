#include <benchmark/benchmark.h>

#include <etop/sinkhorn.hpp>
#include <etop/systems.hpp>
#include <etop/transfer.hpp>

namespace {

using namespace etop;

void BM_SinkhornRandomCloud(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto cloud = uniform_random_cloud(n, 2, 11);
  const CostMatrix cost = pairwise_cost(cloud.points, cloud.points, Metric::euclidean());
  SinkhornConfig config;
  config.epsilon = 0.05;
  for (auto _ : state) {
    auto solution = sinkhorn(cost, cloud.weights, cloud.weights, config);
    benchmark::DoNotOptimize(solution.marginal_error);
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_SinkhornRandomCloud)->Arg(100)->Arg(300)->Arg(1000)->Unit(benchmark::kMillisecond)->Complexity();

void BM_SinkhornEpsilonScaling(benchmark::State& state) {
  // Near-permutation regime on the torus lattice: the schedule walks epsilon
  // down from the cost scale.
  ShiftMapSpec spec;
  spec.dim = 1;
  spec.theta = Eigen::VectorXd::Constant(1, 1.0 / 3.0);
  spec.lattice_n = static_cast<int>(state.range(0));
  const auto cloud = lattice_cloud(spec);
  const auto images = shift_map(spec, cloud.points);
  const CostMatrix cost = pairwise_cost(images, cloud.points, Metric::torus());
  SinkhornConfig config;
  config.epsilon = 1e-5;
  for (auto _ : state) {
    auto solution = sinkhorn(cost, cloud.weights, cloud.weights, config);
    benchmark::DoNotOptimize(solution.iterations_used);
  }
}
BENCHMARK(BM_SinkhornEpsilonScaling)->Arg(200)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_BuildEntropicTransfer(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto cloud = uniform_random_cloud(n, 3, 21);
  Eigen::MatrixXd images(n, 3);
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < 3; ++c)
      images(i, c) = 0.5 + 0.4 * std::sin(6.2831853 * cloud.points(i, c));
  for (auto _ : state) {
    auto t = build_entropic_transfer(cloud, images, 0.05, Metric::euclidean());
    benchmark::DoNotOptimize(t.gamma(0, 0));
  }
}
BENCHMARK(BM_BuildEntropicTransfer)->Arg(200)->Arg(500)->Unit(benchmark::kMillisecond);

}  // namespace
