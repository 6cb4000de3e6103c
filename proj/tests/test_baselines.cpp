#include <doctest.h>

#include <cmath>

#include <Eigen/LU>

#include <etop/baselines.hpp>
#include <etop/rng.hpp>
#include <etop/spectral.hpp>
#include <etop/systems.hpp>

using namespace etop;

TEST_CASE("normalized gaussian kernel basics") {
  const auto one = WeightedPointCloud::uniform(Eigen::MatrixXd::Zero(1, 1));
  CHECK(normalized_gaussian_transfer(one, one.points, 0.5, Metric::euclidean())(0, 0) == 1.0);

  const auto cloud = uniform_random_cloud(25, 2, 5);
  Eigen::MatrixXd images(25, 2);
  for (int i = 0; i < 25; ++i) {
    images(i, 0) = std::fmod(cloud.points(i, 0) + 0.37, 1.0);
    images(i, 1) = std::fmod(cloud.points(i, 1) * 0.8 + 0.1, 1.0);
  }
  const auto p = normalized_gaussian_transfer(cloud, images, 0.05, Metric::euclidean());
  // Rows normalize exactly; the weight vector is generally not stationary.
  CHECK((p.rowwise().sum().array() - 1.0).abs().maxCoeff() < 1e-12);
  const Eigen::VectorXd left = p.transpose() * cloud.weights;
  CHECK((left - cloud.weights).cwiseAbs().sum() > 1e-6);
}

TEST_CASE("diffusion map operator") {
  const auto one = WeightedPointCloud::uniform(Eigen::MatrixXd::Zero(1, 1));
  CHECK(diffusion_map_operator(one, 1.0, Metric::euclidean())(0, 0) == 1.0);

  // Two equidistant points: doubly stochastic with off-diagonal
  // q = e^{-c/eps} / (1 + e^{-c/eps}).
  Eigen::MatrixXd pts(2, 1);
  pts << 0.0, 1.0;
  const auto cloud = WeightedPointCloud::uniform(pts);
  const double eps = 0.7;
  const auto p = diffusion_map_operator(cloud, eps, Metric::euclidean());
  const double q = std::exp(-1.0 / eps) / (1.0 + std::exp(-1.0 / eps));
  CHECK(p(0, 1) == doctest::Approx(q).epsilon(1e-12));
  CHECK(p(1, 0) == doctest::Approx(q).epsilon(1e-12));
  CHECK(p(0, 0) == doctest::Approx(1.0 - q).epsilon(1e-12));

  const auto cloud2 = uniform_random_cloud(30, 3, 11);
  const auto p2 = diffusion_map_operator(cloud2, 0.1, Metric::euclidean());
  CHECK((p2.rowwise().sum().array() - 1.0).abs().maxCoeff() < 1e-12);
}

TEST_CASE("edmd identity map reproduces the identity operator") {
  const auto cloud = uniform_random_cloud(50, 2, 17);
  const auto result = edmd_matrices(cloud, cloud.points, 0.05, 0.0);
  CHECK((result.koopman - Eigen::MatrixXd::Identity(50, 50)).cwiseAbs().maxCoeff() < 1e-8);
  // With invertible A and sigma = 0, A K = B holds tightly.
  const Eigen::MatrixXd a =
      (-pairwise_cost(cloud.points, cloud.points, Metric::euclidean()) / 0.05).array().exp();
  CHECK((a * result.koopman - a).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("edmd matches a normal-equations oracle") {
  const auto cloud = uniform_random_cloud(5, 1, 23);
  Eigen::MatrixXd images(5, 1);
  for (int i = 0; i < 5; ++i) images(i, 0) = std::fmod(cloud.points(i, 0) + 0.3, 1.0);
  const double eps = 0.4, sigma = 0.1;
  const auto result = edmd_matrices(cloud, images, eps, sigma);

  Eigen::MatrixXd a =
      (-pairwise_cost(cloud.points, cloud.points, Metric::euclidean()) / eps).array().exp();
  a.diagonal().array() += sigma;
  const Eigen::MatrixXd b =
      (-pairwise_cost(images, cloud.points, Metric::euclidean()) / eps).array().exp();
  // Independent route: explicit normal equations via LU.
  const Eigen::MatrixXd k_oracle = (a.transpose() * a).lu().solve(a.transpose() * b);
  const Eigen::MatrixXd t_oracle = (a.transpose() * a).lu().solve(a.transpose() * b.transpose());
  CHECK((result.koopman - k_oracle).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((result.transfer - t_oracle).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("edmd rejects a singular dictionary at sigma = 0") {
  Eigen::MatrixXd pts(3, 1);
  pts << 0.5, 0.5, 0.9;  // duplicated center => singular A
  const auto cloud = WeightedPointCloud::uniform(pts);
  CHECK_THROWS_AS(edmd_matrices(cloud, pts, 0.3, 0.0), NumericsError);
  CHECK_NOTHROW(edmd_matrices(cloud, pts, 0.3, 0.1));
}

TEST_CASE("three-state transfer recovers the chain as epsilon -> 0") {
  const ThreeStateModel model;  // p1=0.01, p2=0.05, d1=1, d2=10
  const auto gamma = three_state_transfer(model, 1e-3);
  CHECK((gamma - model.transition_matrix()).cwiseAbs().maxCoeff() < 1e-8);
  // Analytic eigenvalues of the symmetric chain: {1, 1-2p1-p2, 1-3p2}.
  const auto report = eigendecompose(gamma, 3, 1e-9);
  CHECK(report.eigenvalues[0].real() == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(report.eigenvalues[1].real() == doctest::Approx(0.93).epsilon(1e-6));
  CHECK(report.eigenvalues[2].real() == doctest::Approx(0.85).epsilon(1e-6));
}

TEST_CASE("three-state transfer flattens for huge epsilon") {
  const ThreeStateModel model;
  const auto gamma = three_state_transfer(model, 1e6 * model.d2 * model.d2);
  const auto report = eigendecompose(gamma, 3, 1e-9);
  CHECK(std::abs(report.eigenvalues[0] - std::complex<double>(1.0, 0.0)) < 1e-9);
  CHECK(std::abs(report.eigenvalues[1]) < 1e-4);
  CHECK(std::abs(report.eigenvalues[2]) < 1e-4);
}

TEST_CASE("three-state eigenvalue curves move continuously in epsilon") {
  const ThreeStateModel model;
  std::vector<double> grid;
  for (int i = 0; i < 40; ++i) grid.push_back(std::pow(10.0, -3.0 + 6.0 * i / 39.0));
  const auto rows = epsilon_sweep(
      [&](double eps) -> Eigen::MatrixXd { return three_state_transfer(model, eps); }, grid, 3,
      1e-9);
  REQUIRE(rows.size() == 40);
  for (const auto& row : rows) REQUIRE(row.ok);
  // The steepest true curve (the fine-scale eigenvalue collapsing between
  // the two squared separation scales) moves by up to ~0.15 between adjacent
  // points of this grid, so that is the continuity budget.
  for (std::size_t i = 1; i < rows.size(); ++i) {
    for (int r = 0; r < 3; ++r) {
      const double prev = r < static_cast<int>(rows[i - 1].real_eigs.size())
                              ? rows[i - 1].real_eigs[r] : 0.0;
      const double cur = r < static_cast<int>(rows[i].real_eigs.size())
                             ? rows[i].real_eigs[r] : 0.0;
      CHECK(std::abs(cur - prev) <= 0.16);
    }
  }
  CHECK(rows.front().real_eigs[1] == doctest::Approx(0.93).epsilon(1e-4));
  CHECK(rows.back().real_eigs[1] < 0.05);
}

TEST_CASE("three-state model validation") {
  ThreeStateModel bad;
  bad.p2 = 0.6;  // 1 - 2 p2 < 0
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = ThreeStateModel{};
  bad.d1 = 0.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}
