#pragma once

#include <cstddef>
#include <cstdint>

#include <Eigen/Dense>

#include "hetnet/partition.hpp"

namespace hetnet {

/// counts(x, y): nodes placed in community x of the first partition and in
/// community y of the second.
struct ConfusionCounts {
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> counts;
  std::int64_t n = 0;
};

/// Nodes are matched by label. Throws PartitionMismatchError if the label sets differ.
ConfusionCounts confusion(const Partition& found, const Partition& truth);

/// Shannon entropy (natural log) of the row or column marginal.
double row_entropy(const ConfusionCounts& counts);
double column_entropy(const ConfusionCounts& counts);
double mutual_information(const ConfusionCounts& counts);

/// 2 I(X,Y) / (H(X) + H(Y)). When both entropies vanish (one group each) the
/// partitions are identical and the result is 1.
double nmi(const Partition& found, const Partition& truth);

}  // namespace hetnet
