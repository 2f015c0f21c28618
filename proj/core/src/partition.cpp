#include "hetnet/partition.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "hetnet/errors.hpp"

namespace hetnet {

Partition::Partition(std::vector<std::string> labels, std::span<const std::size_t> assignment)
    : labels_(std::move(labels)) {
  if (labels_.size() != assignment.size()) {
    throw PartitionMismatchError("partition has " + std::to_string(labels_.size()) +
                                 " labels but " + std::to_string(assignment.size()) +
                                 " assignments");
  }
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (!index_.emplace(labels_[i], i).second) {
      throw DataError("duplicate label '" + labels_[i] + "' in partition");
    }
  }

  // Smallest label per raw community id, then rank communities by it.
  std::map<std::size_t, const std::string*> smallest;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    auto [it, inserted] = smallest.emplace(assignment[i], &labels_[i]);
    if (!inserted && labels_[i] < *it->second) it->second = &labels_[i];
  }
  std::vector<std::pair<const std::string*, std::size_t>> order;
  order.reserve(smallest.size());
  for (auto [raw, label] : smallest) order.emplace_back(label, raw);
  std::sort(order.begin(), order.end(),
            [](const auto& a, const auto& b) { return *a.first < *b.first; });
  std::map<std::size_t, std::size_t> dense;
  for (std::size_t k = 0; k < order.size(); ++k) dense.emplace(order[k].second, k);

  assignment_.reserve(assignment.size());
  for (std::size_t raw : assignment) assignment_.push_back(dense.at(raw));
  count_ = order.size();
}

std::optional<std::size_t> Partition::index_of(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::vector<std::size_t>> Partition::members() const {
  std::vector<std::vector<std::size_t>> groups(count_);
  for (std::size_t i = 0; i < assignment_.size(); ++i) groups[assignment_[i]].push_back(i);
  return groups;
}

std::vector<std::size_t> Partition::community_sizes() const {
  std::vector<std::size_t> sizes(count_, 0);
  for (std::size_t c : assignment_) ++sizes[c];
  return sizes;
}

Partition Partition::restricted(const std::vector<std::string>& labels) const {
  std::vector<std::size_t> assignment;
  assignment.reserve(labels.size());
  for (const auto& label : labels) {
    auto i = index_of(label);
    if (!i) throw PartitionMismatchError("label '" + label + "' is not in the partition");
    assignment.push_back(assignment_[*i]);
  }
  return Partition(labels, assignment);
}

Partition Partition::reordered(const std::vector<std::string>& labels) const {
  if (labels.size() != labels_.size()) {
    throw PartitionMismatchError("node sets differ in size (" + std::to_string(labels.size()) +
                                 " vs " + std::to_string(labels_.size()) + ")");
  }
  return restricted(labels);
}

bool same_grouping(const Partition& a, const Partition& b) {
  if (a.size() != b.size()) return false;
  for (const auto& label : a.labels()) {
    if (!b.index_of(label)) return false;
  }
  return a.reordered(b.labels()) == b;
}

}  // namespace hetnet
