#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hetnet/centrality.hpp"
#include "hetnet/eigensolver.hpp"
#include "hetnet/graph_model.hpp"
#include "hetnet/partition.hpp"

namespace hetnet {

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

/// Centrality rounded entrywise to the nearest integer, halves away from zero.
struct RoundedCentrality {
  IntMatrix values;
};

/// Random multigraph with the same total path count and per-node in/out path
/// marginals as the rounded centrality: expected(i,j) = out_i * in_j / total.
struct NullModel {
  std::int64_t total = 0;
  IntVector out_paths;
  IntVector in_paths;
  Eigen::MatrixXd expected;
};

struct Bisection {
  std::vector<int> signs;  // +1 / -1 per node of the subgroup
  double eigenvalue = 0.0;
  bool divisible = false;
  std::size_t iterations = 0;
};

struct SplitRecord {
  std::size_t group_size = 0;
  double eigenvalue = 0.0;
  double delta_q_raw = 0.0;
  double delta_q = 0.0;  // normalised by the total path count
};

struct CommunityOptions {
  MethodSpec method;
  CentralityOptions centrality;
  EigenOptions eigen;
  double indivisible_eigenvalue = 1e-12;
  double zero_entry = 1e-12;
  // Splits must raise Q/W by more than this.
  double min_delta_q = 1e-10;
};

struct CommunityResult {
  Partition partition;
  double q_raw = 0.0;
  double q = 0.0;  // q_raw / total paths
  std::int64_t total_paths = 0;
  std::vector<SplitRecord> splits;
  double alpha = 0.0;
  double beta = 1.0;
};

RoundedCentrality round_centrality(const Eigen::MatrixXd& values);
inline RoundedCentrality round_centrality(const CentralityMatrix& centrality) {
  return round_centrality(centrality.values);
}

/// Throws DegenerateNullModelError when the rounded matrix sums to zero.
NullModel build_null_model(const RoundedCentrality& rounded);

/// Unnormalised Q = sum_ij (R_ij - expected_ij) [s_i == s_j].
double modularity(const RoundedCentrality& rounded, const NullModel& null_model,
                  std::span<const std::size_t> assignment);

/// The same quantity on real-valued path counts with real marginals. Scales
/// linearly with beta, so its argmax over partitions does not depend on beta.
double modularity(const Eigen::MatrixXd& paths, std::span<const std::size_t> assignment);

/// B = R - expected, symmetrised as (B + B^T) / 2.
Eigen::MatrixXd modularity_matrix(const RoundedCentrality& rounded, const NullModel& null_model);

/// B restricted to `members`, with each row sum subtracted from its diagonal.
Eigen::MatrixXd subgroup_modularity_matrix(const Eigen::MatrixXd& modularity,
                                           std::span<const std::size_t> members);

/// Sign split from the leading eigenvector. Entries within `zero_entry` of
/// zero join the positive group.
Bisection spectral_bisect(const Eigen::MatrixXd& b_sub, const EigenOptions& options = {},
                          double indivisible_eigenvalue = 1e-12, double zero_entry = 1e-12);

/// centrality -> rounding -> null model -> recursive spectral bisection.
CommunityResult detect_communities(const NModeMatrix& matrix, double alpha, double beta = 1.0,
                                   const CommunityOptions& options = {});
CommunityResult detect_communities(const NModeMatrix& matrix, double alpha, double beta,
                                   const SpectralInfo& spectrum,
                                   const CommunityOptions& options = {});

}  // namespace hetnet
