#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace hetnet {

/// Community assignment over labelled nodes. Community indices are dense and
/// canonical: community 0 holds the lexicographically smallest label, and so
/// on in order of each community's smallest label. Two partitions of the same
/// node set therefore compare equal iff they group nodes identically,
/// provided the nodes are listed in the same order.
class Partition {
 public:
  Partition() = default;
  /// `assignment` may use any integer ids; they are renumbered canonically.
  Partition(std::vector<std::string> labels, std::span<const std::size_t> assignment);

  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t community_count() const noexcept { return count_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::span<const std::size_t> assignment() const noexcept { return assignment_; }
  std::size_t community_of(std::size_t node) const { return assignment_.at(node); }
  std::optional<std::size_t> index_of(std::string_view label) const;

  /// Node indices per community, ascending.
  std::vector<std::vector<std::size_t>> members() const;
  std::vector<std::size_t> community_sizes() const;

  /// Same nodes, listed in the order of `labels`.
  Partition reordered(const std::vector<std::string>& labels) const;
  /// Restriction to the given labels (order preserved from the argument).
  Partition restricted(const std::vector<std::string>& labels) const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<std::string> labels_;
  std::vector<std::size_t> assignment_;
  std::size_t count_ = 0;
  std::unordered_map<std::string, std::size_t> index_;
};

/// True when both partitions cover the same labels and group them identically,
/// regardless of node order.
bool same_grouping(const Partition& a, const Partition& b);

}  // namespace hetnet
