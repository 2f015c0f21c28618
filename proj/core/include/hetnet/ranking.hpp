#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "hetnet/centrality.hpp"
#include "hetnet/graph_model.hpp"
#include "hetnet/partition.hpp"

namespace hetnet {

/// Which columns of C contribute to a node's score.
///   total:     every node (plain row sums).
///   community: only nodes of the scored node's own community.
enum class ScoreScope { total, community };

struct ScoreTable {
  std::vector<double> grid;
  Eigen::MatrixXd scores;  // node x alpha
  double beta = 1.0;
  ScoreScope scope = ScoreScope::total;
  std::vector<std::string> labels;
};

struct RankTable {
  std::vector<double> grid;
  Eigen::MatrixXd ranks;   // node x alpha, 1 = highest score in the community
  Eigen::MatrixXd scores;  // the scores the ranks were taken from
  Partition partition;     // aligned with `labels`
  std::vector<std::string> labels;
};

enum class Role { leader, bridge, stable };

std::string_view to_string(Role role);

struct RoleLabel {
  std::string label;
  std::size_t community = 0;
  Role role = Role::stable;
  double delta_rank = 0.0;  // rank at the smallest alpha minus rank at the largest
};

/// Grid must be strictly increasing and every value admissible.
void validate_grid(std::span<const double> grid, const SpectralInfo& spectrum,
                   double margin = 1e-9);

/// Column k holds node_scores(bonacich_exact(A, grid[k], beta)).
ScoreTable alpha_sweep(const NModeMatrix& matrix, std::span<const double> grid, double beta = 1.0,
                       const CentralityOptions& options = {});

/// Like alpha_sweep, but each node only sums paths into its own community.
ScoreTable alpha_sweep_within(const NModeMatrix& matrix, std::span<const double> grid,
                              double beta, const Partition& partition,
                              const CentralityOptions& options = {});

/// Row sums of C restricted to columns in the row node's community.
Eigen::VectorXd community_scores(const CentralityMatrix& centrality,
                                 std::span<const std::size_t> assignment);

/// Descending fractional ranks; scores within tol * max(1, |score|) of the
/// first score of a run share the run's average rank.
std::vector<double> fractional_ranks(std::span<const double> scores, double tie_tolerance = 1e-9);

/// Keeps only the listed nodes, in the given order. Scores are unchanged, so a
/// node still counts paths into nodes that were dropped.
ScoreTable select_rows(const ScoreTable& table, const std::vector<std::string>& labels);

/// `partition` must cover every node of the table and may cover more.
RankTable rank_within_groups(const ScoreTable& table, const Partition& partition,
                             double tie_tolerance = 1e-9);

/// Leader: rank exactly 1 at the largest alpha. Bridge: rank improved by at
/// least `bridge_threshold` from the smallest to the largest alpha.
std::vector<RoleLabel> classify_roles(const RankTable& table, double bridge_threshold = 1.0);

}  // namespace hetnet
