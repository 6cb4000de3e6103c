#include "etop/analysis.hpp"

#include <cmath>
#include <limits>

#include "etop/rng.hpp"

namespace etop {

std::vector<int> cluster_indices(const Partition& partition, int cluster) {
  std::vector<int> idx;
  for (Eigen::Index i = 0; i < partition.labels.size(); ++i)
    if (partition.labels[i] == cluster) idx.push_back(static_cast<int>(i));
  return idx;
}

Partition sign_split(const Eigen::VectorXd& eigenvector, double zero_tol) {
  if (eigenvector.size() < 2) throw ConfigError("sign_split: vector too short");
  const double tol =
      zero_tol >= 0.0 ? zero_tol : 1e-12 * eigenvector.cwiseAbs().maxCoeff();

  double pos_sum = 0.0, neg_sum = 0.0;
  int pos_count = 0, neg_count = 0;
  for (Eigen::Index i = 0; i < eigenvector.size(); ++i) {
    if (eigenvector[i] > tol) {
      pos_sum += eigenvector[i];
      ++pos_count;
    } else if (eigenvector[i] < -tol) {
      neg_sum += eigenvector[i];
      ++neg_count;
    }
  }
  if (pos_count == 0 || neg_count == 0)
    throw NumericsError("sign_split: eigenvector is one-signed, no two-set split exists");
  const double pos_mean = pos_sum / pos_count;
  const double neg_mean = neg_sum / neg_count;

  Partition partition;
  partition.k = 2;
  partition.labels.resize(eigenvector.size());
  for (Eigen::Index i = 0; i < eigenvector.size(); ++i) {
    const double v = eigenvector[i];
    if (v > tol)
      partition.labels[i] = 0;
    else if (v < -tol)
      partition.labels[i] = 1;
    else
      partition.labels[i] = std::abs(v - pos_mean) <= std::abs(v - neg_mean) ? 0 : 1;
  }
  return partition;
}

double internal_transition_probability(const TransferMatrix& t, const std::vector<int>& subset) {
  if (subset.empty()) throw ConfigError("internal_transition_probability: empty subset");
  const Eigen::Index n = t.gamma.rows();
  double subset_weight = 0.0;
  for (int m : subset) {
    if (m < 0 || m >= n) throw ConfigError("internal_transition_probability: index out of range");
    subset_weight += t.weights[m];
  }
  if (subset_weight <= 0.0)
    throw ConfigError("internal_transition_probability: subset carries no weight");

  double internal_mass = 0.0;
  for (int m : subset)
    for (int l : subset) internal_mass += t.weights[l] * t.gamma(l, m);
  return internal_mass / subset_weight;
}

namespace {

double squared_distance_to(const Eigen::MatrixXd& coords, Eigen::Index point,
                           const Eigen::RowVectorXd& center) {
  return (coords.row(point) - center).squaredNorm();
}

}  // namespace

KMeansResult kmeans(const Eigen::MatrixXd& coordinates, int k, std::uint64_t seed, int max_iter) {
  const Eigen::Index n = coordinates.rows();
  if (k < 1 || k > n) throw ConfigError("kmeans: need 1 <= k <= N");
  if (!coordinates.allFinite()) throw ConfigError("kmeans: non-finite coordinates");
  Rng rng(seed);

  // k-means++ seeding.
  Eigen::MatrixXd centers(k, coordinates.cols());
  centers.row(0) = coordinates.row(static_cast<Eigen::Index>(rng.next_index(n)));
  Eigen::VectorXd best_sq(n);
  for (Eigen::Index i = 0; i < n; ++i) best_sq[i] = squared_distance_to(coordinates, i, centers.row(0));
  for (int c = 1; c < k; ++c) {
    const double total = best_sq.sum();
    Eigen::Index pick = 0;
    if (total > 0.0) {
      const double target = rng.next_double() * total;
      double running = 0.0;
      pick = n - 1;
      for (Eigen::Index i = 0; i < n; ++i) {
        running += best_sq[i];
        if (running >= target) {
          pick = i;
          break;
        }
      }
    } else {
      pick = static_cast<Eigen::Index>(rng.next_index(n));  // all points coincide
    }
    centers.row(c) = coordinates.row(pick);
    for (Eigen::Index i = 0; i < n; ++i)
      best_sq[i] = std::min(best_sq[i], squared_distance_to(coordinates, i, centers.row(c)));
  }

  Eigen::VectorXi labels = Eigen::VectorXi::Constant(n, -1);
  KMeansResult result;
  for (int iter = 0; iter < max_iter; ++iter) {
    // Assignment.
    bool changed = false;
    double objective = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      int best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (int c = 0; c < k; ++c) {
        const double d = squared_distance_to(coordinates, i, centers.row(c));
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      objective += best_d;
      if (labels[i] != best) {
        labels[i] = best;
        changed = true;
      }
    }

    // Refill emptied clusters with the worst-served point.
    for (int c = 0; c < k; ++c) {
      if ((labels.array() == c).any()) continue;
      Eigen::Index worst = 0;
      double worst_d = -1.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        const double d = squared_distance_to(coordinates, i, centers.row(labels[i]));
        if (d > worst_d) {
          worst_d = d;
          worst = i;
        }
      }
      objective -= worst_d;
      labels[worst] = c;
      centers.row(c) = coordinates.row(worst);
      changed = true;
    }
    result.objective_history.push_back(objective);
    if (!changed) break;

    // Update step.
    centers.setZero();
    Eigen::VectorXi counts = Eigen::VectorXi::Zero(k);
    for (Eigen::Index i = 0; i < n; ++i) {
      centers.row(labels[i]) += coordinates.row(i);
      ++counts[labels[i]];
    }
    for (int c = 0; c < k; ++c) centers.row(c) /= counts[c];
  }

  result.partition.labels = std::move(labels);
  result.partition.k = k;
  result.centroids = std::move(centers);
  return result;
}

}  // namespace etop
