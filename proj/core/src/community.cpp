#include "hetnet/community.hpp"

#include <cmath>
#include <deque>
#include <numeric>

#include "hetnet/errors.hpp"

namespace hetnet {

RoundedCentrality round_centrality(const Eigen::MatrixXd& values) {
  constexpr double limit = 4.0e18;
  RoundedCentrality rounded{IntMatrix(values.rows(), values.cols())};
  for (Eigen::Index j = 0; j < values.cols(); ++j) {
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
      const double v = values(i, j);
      if (!std::isfinite(v) || std::abs(v) > limit) {
        throw NumericalError("centrality entry too large to round");
      }
      rounded.values(i, j) = std::llround(v);
    }
  }
  return rounded;
}

NullModel build_null_model(const RoundedCentrality& rounded) {
  const IntMatrix& r = rounded.values;
  NullModel model;
  model.out_paths = r.rowwise().sum();
  model.in_paths = r.colwise().sum().transpose();
  model.total = model.out_paths.sum();
  if (model.total <= 0) {
    throw DegenerateNullModelError(
        "rounded centrality sums to zero: graph too sparse or alpha/beta too small");
  }
  const double total = static_cast<double>(model.total);
  model.expected = model.out_paths.cast<double>() * model.in_paths.cast<double>().transpose() / total;
  return model;
}

double modularity(const RoundedCentrality& rounded, const NullModel& null_model,
                  std::span<const std::size_t> assignment) {
  const IntMatrix& r = rounded.values;
  const auto n = static_cast<std::size_t>(r.rows());
  if (assignment.size() != n) throw PartitionMismatchError("assignment length differs from matrix");
  const std::size_t k = assignment.empty() ? 0 : *std::max_element(assignment.begin(), assignment.end()) + 1;

  std::vector<std::int64_t> inside(k, 0), out(k, 0), in(k, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t ci = assignment[i];
    out[ci] += null_model.out_paths[i];
    in[ci] += null_model.in_paths[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (assignment[j] == ci) inside[ci] += r(i, j);
    }
  }
  const double total = static_cast<double>(null_model.total);
  double q = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    q += static_cast<double>(inside[c]) -
         static_cast<double>(out[c]) * (static_cast<double>(in[c]) / total);
  }
  return q;
}

double modularity(const Eigen::MatrixXd& paths, std::span<const std::size_t> assignment) {
  const auto n = static_cast<std::size_t>(paths.rows());
  if (assignment.size() != n) throw PartitionMismatchError("assignment length differs from matrix");
  const double total = paths.sum();
  if (total <= 0.0) throw DegenerateNullModelError("path matrix sums to zero");
  const Eigen::VectorXd out = paths.rowwise().sum();
  const Eigen::VectorXd in = paths.colwise().sum().transpose();
  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (assignment[i] == assignment[j]) q += paths(i, j) - out[i] * in[j] / total;
    }
  }
  return q;
}

Eigen::MatrixXd modularity_matrix(const RoundedCentrality& rounded, const NullModel& null_model) {
  const Eigen::MatrixXd b = rounded.values.cast<double>() - null_model.expected;
  return 0.5 * (b + b.transpose());
}

Eigen::MatrixXd subgroup_modularity_matrix(const Eigen::MatrixXd& modularity,
                                           std::span<const std::size_t> members) {
  const auto m = static_cast<Eigen::Index>(members.size());
  Eigen::MatrixXd sub(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) {
      sub(a, b) = modularity(static_cast<Eigen::Index>(members[a]),
                             static_cast<Eigen::Index>(members[b]));
    }
  }
  const Eigen::VectorXd row_sums = sub.rowwise().sum();
  sub.diagonal() -= row_sums;
  return sub;
}

Bisection spectral_bisect(const Eigen::MatrixXd& b_sub, const EigenOptions& options,
                          double indivisible_eigenvalue, double zero_entry) {
  const Eigen::Index n = b_sub.rows();
  if (n != b_sub.cols()) throw NumericalError("bisection needs a square matrix");
  Bisection result;
  result.signs.assign(static_cast<std::size_t>(n), 1);
  if (n < 2) return result;

  const double scale = std::max(1.0, b_sub.cwiseAbs().maxCoeff());
  if ((b_sub - b_sub.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale) {
    throw NumericalError("bisection needs a symmetric matrix");
  }

  const Eigenpair pair = largest_eigenpair_symmetric(b_sub, options);
  result.eigenvalue = pair.value;
  result.iterations = pair.iterations;
  if (pair.value <= indivisible_eigenvalue) return result;

  bool mixed = false;
  for (Eigen::Index i = 0; i < n; ++i) {
    result.signs[static_cast<std::size_t>(i)] = pair.vector[i] < -zero_entry ? -1 : 1;
    mixed = mixed || result.signs[static_cast<std::size_t>(i)] != result.signs[0];
  }
  result.divisible = mixed;
  return result;
}

CommunityResult detect_communities(const NModeMatrix& matrix, double alpha, double beta,
                                   const SpectralInfo& spectrum, const CommunityOptions& options) {
  require_admissible(alpha, spectrum, options.centrality.margin);
  const CentralityMatrix centrality =
      compute_centrality(matrix, {alpha, beta}, options.method, spectrum, options.centrality);
  const RoundedCentrality rounded = round_centrality(centrality);
  const NullModel null_model = build_null_model(rounded);
  const Eigen::MatrixXd b = modularity_matrix(rounded, null_model);
  const double total = static_cast<double>(null_model.total);

  CommunityResult result;
  result.alpha = alpha;
  result.beta = beta;
  result.total_paths = null_model.total;

  std::vector<std::size_t> all(matrix.dimension());
  std::iota(all.begin(), all.end(), 0);
  std::deque<std::vector<std::size_t>> pending{std::move(all)};
  std::vector<std::vector<std::size_t>> done;

  while (!pending.empty()) {
    std::vector<std::size_t> group = std::move(pending.front());
    pending.pop_front();
    const Eigen::MatrixXd sub = subgroup_modularity_matrix(b, group);
    const Bisection split = spectral_bisect(sub, options.eigen, options.indivisible_eigenvalue,
                                            options.zero_entry);
    if (!split.divisible) {
      done.push_back(std::move(group));
      continue;
    }
    Eigen::VectorXd s(static_cast<Eigen::Index>(group.size()));
    for (std::size_t i = 0; i < group.size(); ++i) s[static_cast<Eigen::Index>(i)] = split.signs[i];
    const double delta_raw = 0.5 * s.dot(sub * s);
    if (!(delta_raw > options.min_delta_q * total)) {
      done.push_back(std::move(group));
      continue;
    }
    result.splits.push_back(SplitRecord{group.size(), split.eigenvalue, delta_raw, delta_raw / total});
    std::vector<std::size_t> positive, negative;
    for (std::size_t i = 0; i < group.size(); ++i) {
      (split.signs[i] > 0 ? positive : negative).push_back(group[i]);
    }
    pending.push_back(std::move(positive));
    pending.push_back(std::move(negative));
  }

  std::vector<std::size_t> assignment(matrix.dimension(), 0);
  for (std::size_t c = 0; c < done.size(); ++c) {
    for (std::size_t node : done[c]) assignment[node] = c;
  }
  result.partition = Partition(matrix.labels(), assignment);
  result.q_raw = modularity(rounded, null_model, result.partition.assignment());
  result.q = result.q_raw / total;
  return result;
}

CommunityResult detect_communities(const NModeMatrix& matrix, double alpha, double beta,
                                   const CommunityOptions& options) {
  return detect_communities(matrix, alpha, beta, spectral_radius(matrix, options.eigen), options);
}

}  // namespace hetnet
