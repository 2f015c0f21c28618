#include "hetnet/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "hetnet/errors.hpp"

namespace hetnet {

std::string_view to_string(Role role) {
  switch (role) {
    case Role::leader: return "leader";
    case Role::bridge: return "bridge";
    case Role::stable: return "stable";
  }
  return "stable";
}

void validate_grid(std::span<const double> grid, const SpectralInfo& spectrum, double margin) {
  if (grid.empty()) throw DataError("alpha grid is empty");
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (k > 0 && !(grid[k] > grid[k - 1])) {
      std::ostringstream msg;
      msg << "alpha grid must be strictly increasing (" << grid[k - 1] << " then " << grid[k] << ")";
      throw DataError(msg.str());
    }
    require_admissible(grid[k], spectrum, margin);
  }
}

namespace {

template <typename Score>
ScoreTable sweep(const NModeMatrix& matrix, std::span<const double> grid, double beta,
                 const CentralityOptions& options, ScoreScope scope, Score score) {
  const SpectralInfo spectrum = spectral_radius(matrix, options.eigen);
  validate_grid(grid, spectrum, options.margin);

  ScoreTable table;
  table.grid.assign(grid.begin(), grid.end());
  table.beta = beta;
  table.scope = scope;
  table.labels = matrix.labels();
  table.scores.resize(static_cast<Eigen::Index>(matrix.dimension()),
                      static_cast<Eigen::Index>(grid.size()));
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const CentralityMatrix c = bonacich_exact(matrix, {grid[k], beta}, spectrum, options);
    table.scores.col(static_cast<Eigen::Index>(k)) = score(c);
  }
  return table;
}

}  // namespace

ScoreTable alpha_sweep(const NModeMatrix& matrix, std::span<const double> grid, double beta,
                       const CentralityOptions& options) {
  return sweep(matrix, grid, beta, options, ScoreScope::total,
               [](const CentralityMatrix& c) { return node_scores(c); });
}

ScoreTable alpha_sweep_within(const NModeMatrix& matrix, std::span<const double> grid,
                              double beta, const Partition& partition,
                              const CentralityOptions& options) {
  const Partition aligned = partition.reordered(matrix.labels());
  return sweep(matrix, grid, beta, options, ScoreScope::community,
               [&aligned](const CentralityMatrix& c) {
                 return community_scores(c, aligned.assignment());
               });
}

Eigen::VectorXd community_scores(const CentralityMatrix& centrality,
                                 std::span<const std::size_t> assignment) {
  const Eigen::MatrixXd& c = centrality.values;
  if (assignment.size() != static_cast<std::size_t>(c.rows())) {
    throw PartitionMismatchError("assignment length differs from centrality matrix");
  }
  Eigen::VectorXd scores = Eigen::VectorXd::Zero(c.rows());
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    for (Eigen::Index j = 0; j < c.cols(); ++j) {
      if (assignment[static_cast<std::size_t>(i)] == assignment[static_cast<std::size_t>(j)]) {
        scores[i] += c(i, j);
      }
    }
  }
  return scores;
}

std::vector<double> fractional_ranks(std::span<const double> scores, double tie_tolerance) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  std::vector<double> ranks(scores.size(), 0.0);
  std::size_t start = 0;
  while (start < order.size()) {
    const double head = scores[order[start]];
    const double tol = tie_tolerance * std::max(1.0, std::abs(head));
    std::size_t end = start + 1;
    while (end < order.size() && std::abs(head - scores[order[end]]) <= tol) ++end;
    // Positions start+1 .. end share their mean.
    const double rank = 0.5 * static_cast<double>(start + 1 + end);
    for (std::size_t k = start; k < end; ++k) ranks[order[k]] = rank;
    start = end;
  }
  return ranks;
}

ScoreTable select_rows(const ScoreTable& table, const std::vector<std::string>& labels) {
  ScoreTable out;
  out.grid = table.grid;
  out.beta = table.beta;
  out.scope = table.scope;
  out.labels = labels;
  out.scores.resize(static_cast<Eigen::Index>(labels.size()), table.scores.cols());
  std::unordered_map<std::string_view, Eigen::Index> row_of;
  for (std::size_t i = 0; i < table.labels.size(); ++i) row_of.emplace(table.labels[i], static_cast<Eigen::Index>(i));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto it = row_of.find(labels[i]);
    if (it == row_of.end()) throw DataError("label '" + labels[i] + "' is not in the score table");
    out.scores.row(static_cast<Eigen::Index>(i)) = table.scores.row(it->second);
  }
  return out;
}

RankTable rank_within_groups(const ScoreTable& table, const Partition& partition,
                             double tie_tolerance) {
  RankTable out;
  out.grid = table.grid;
  out.labels = table.labels;
  out.scores = table.scores;
  out.partition = partition.restricted(table.labels);
  out.ranks.resize(table.scores.rows(), table.scores.cols());

  const auto groups = out.partition.members();
  std::vector<double> group_scores;
  for (Eigen::Index k = 0; k < table.scores.cols(); ++k) {
    for (const auto& group : groups) {
      group_scores.clear();
      for (std::size_t node : group) {
        group_scores.push_back(table.scores(static_cast<Eigen::Index>(node), k));
      }
      const auto ranks = fractional_ranks(group_scores, tie_tolerance);
      for (std::size_t m = 0; m < group.size(); ++m) {
        out.ranks(static_cast<Eigen::Index>(group[m]), k) = ranks[m];
      }
    }
  }
  return out;
}

std::vector<RoleLabel> classify_roles(const RankTable& table, double bridge_threshold) {
  if (table.grid.size() < 2) throw DataError("role classification needs at least two alpha values");
  const Eigen::Index first = 0;
  const Eigen::Index last = static_cast<Eigen::Index>(table.grid.size()) - 1;

  std::vector<RoleLabel> roles;
  roles.reserve(table.labels.size());
  for (std::size_t i = 0; i < table.labels.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    RoleLabel label{table.labels[i], table.partition.community_of(i), Role::stable,
                    table.ranks(row, first) - table.ranks(row, last)};
    if (table.ranks(row, last) == 1.0) {
      label.role = Role::leader;
    } else if (label.delta_rank >= bridge_threshold) {
      label.role = Role::bridge;
    }
    roles.push_back(std::move(label));
  }
  return roles;
}

}  // namespace hetnet
