#include "hetnet/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "hetnet/errors.hpp"

namespace hetnet {

ConfusionCounts confusion(const Partition& found, const Partition& truth) {
  if (found.size() != truth.size()) {
    throw PartitionMismatchError("partitions cover different node sets (" +
                                 std::to_string(found.size()) + " vs " +
                                 std::to_string(truth.size()) + " nodes)");
  }
  ConfusionCounts out;
  out.counts.setZero(static_cast<Eigen::Index>(found.community_count()),
                     static_cast<Eigen::Index>(truth.community_count()));
  for (std::size_t i = 0; i < found.size(); ++i) {
    const auto j = truth.index_of(found.labels()[i]);
    if (!j) {
      throw PartitionMismatchError("label '" + found.labels()[i] +
                                   "' missing from the second partition");
    }
    ++out.counts(static_cast<Eigen::Index>(found.community_of(i)),
                 static_cast<Eigen::Index>(truth.community_of(*j)));
  }
  out.n = static_cast<std::int64_t>(found.size());
  return out;
}

namespace {

double entropy_of(const Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>& marginal, double n) {
  double h = 0.0;
  for (Eigen::Index k = 0; k < marginal.size(); ++k) {
    if (marginal[k] == 0) continue;
    const double p = static_cast<double>(marginal[k]) / n;
    h -= p * std::log(p);
  }
  return h;
}

}  // namespace

double row_entropy(const ConfusionCounts& counts) {
  if (counts.n == 0) return 0.0;
  return entropy_of(counts.counts.rowwise().sum(), static_cast<double>(counts.n));
}

double column_entropy(const ConfusionCounts& counts) {
  if (counts.n == 0) return 0.0;
  return entropy_of(counts.counts.colwise().sum().transpose(), static_cast<double>(counts.n));
}

double mutual_information(const ConfusionCounts& counts) {
  if (counts.n == 0) return 0.0;
  const double n = static_cast<double>(counts.n);
  const auto rows = counts.counts.rowwise().sum().eval();
  const auto cols = counts.counts.colwise().sum().eval();
  std::vector<double> terms;
  for (Eigen::Index x = 0; x < counts.counts.rows(); ++x) {
    for (Eigen::Index y = 0; y < counts.counts.cols(); ++y) {
      const auto nxy = counts.counts(x, y);
      if (nxy == 0) continue;
      // log(P(x,y) / (P(x) P(y))) = log(n_xy n / (n_x n_y))
      terms.push_back((static_cast<double>(nxy) / n) *
                      std::log(static_cast<double>(nxy) * n /
                               (static_cast<double>(rows[x]) * static_cast<double>(cols[y]))));
    }
  }
  // Summing in sorted order makes I(X,Y) bitwise equal to I(Y,X).
  std::sort(terms.begin(), terms.end());
  double mi = 0.0;
  for (double t : terms) mi += t;
  return std::max(0.0, mi);
}

namespace {

// One nonzero per row and per column: the partitions group nodes identically.
bool is_matching(const ConfusionCounts& counts) {
  const auto& c = counts.counts;
  if (c.rows() != c.cols()) return false;
  for (Eigen::Index x = 0; x < c.rows(); ++x) {
    if ((c.row(x).array() != 0).count() != 1 || (c.col(x).array() != 0).count() != 1) return false;
  }
  return true;
}

}  // namespace

double nmi(const Partition& found, const Partition& truth) {
  const ConfusionCounts counts = confusion(found, truth);
  if (is_matching(counts)) return 1.0;
  const double denominator = row_entropy(counts) + column_entropy(counts);
  if (denominator <= 0.0) return 1.0;
  return std::clamp(2.0 * mutual_information(counts) / denominator, 0.0, 1.0);
}

}  // namespace hetnet
