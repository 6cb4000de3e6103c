#pragma once

#include <cstdint>
#include <vector>

#include "etop/transfer.hpp"

namespace etop {

/// Cluster labels in [0, k), every cluster nonempty.
struct Partition {
  Eigen::VectorXi labels;
  int k = 0;
};

std::vector<int> cluster_indices(const Partition& partition, int cluster);

/// Two-set split of an eigenvector by sign: cluster 0 holds entries above
/// zero_tol, cluster 1 entries below -zero_tol, and borderline entries go to
/// the cluster whose mean value is nearer. zero_tol < 0 selects the default
/// 1e-12 * max|entry|. Throws NumericsError when the vector is one-signed.
Partition sign_split(const Eigen::VectorXd& eigenvector, double zero_tol = -1.0);

/// Probability that one step of the chain keeps mass inside `subset`, when
/// started from the stationary weights restricted to the subset:
///   p(A) = sum_{m,l in A} weights(l) gamma(l,m) / sum_{m in A} weights(m).
/// The kernel orientation is fixed by two checks: p(full set) = 1 and flow
/// balance of complementary sets. Throws on an empty or zero-weight subset.
double internal_transition_probability(const TransferMatrix& t, const std::vector<int>& subset);

struct KMeansResult {
  Partition partition;
  Eigen::MatrixXd centroids;                  // k x m
  std::vector<double> objective_history;     // within-cluster squared distance
};

/// Lloyd's algorithm with seeded k-means++ initialization on the portable
/// generator; deterministic for a fixed seed. Ties in assignment go to the
/// lowest center id; an emptied cluster is reseeded with the point farthest
/// from its center.
KMeansResult kmeans(const Eigen::MatrixXd& coordinates, int k, std::uint64_t seed,
                    int max_iter = 100);

}  // namespace etop
