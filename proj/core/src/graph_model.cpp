#include "hetnet/graph_model.hpp"

#include <cmath>
#include <set>
#include <utility>

#include "hetnet/errors.hpp"

namespace hetnet {

namespace {

using Triplet = Eigen::Triplet<double>;

void check_weight(double weight, std::string_view context) {
  if (!std::isfinite(weight) || weight < 0.0) {
    throw InvalidWeightError(std::string(context) + ": weight must be finite and >= 0, got " +
                             std::to_string(weight));
  }
}

}  // namespace

// ---- LayeredGraph ---------------------------------------------------------

std::size_t LayeredGraph::add_layer(std::string name) {
  if (find_layer(name)) throw DataError("duplicate layer name '" + name + "'");
  const std::size_t offset = node_count();
  layers_.push_back(Layer{std::move(name), 0, offset});
  labels_.emplace_back();
  lookup_.emplace_back();
  return layers_.size() - 1;
}

NodeRef LayeredGraph::add_node(std::size_t layer, std::string label) {
  if (layer >= layers_.size()) {
    throw DataError("layer index " + std::to_string(layer) + " out of range");
  }
  auto& lookup = lookup_[layer];
  if (lookup.contains(label)) {
    throw DataError("duplicate label '" + label + "' in layer '" + layers_[layer].name + "'");
  }
  const std::size_t local = labels_[layer].size();
  lookup.emplace(label, local);
  labels_[layer].push_back(label);
  ++layers_[layer].size;
  for (std::size_t k = layer + 1; k < layers_.size(); ++k) ++layers_[k].offset;
  return NodeRef{layer, local, std::move(label)};
}

void LayeredGraph::add_edge(const NodeRef& source, const NodeRef& target, double weight) {
  check_node(source);
  check_node(target);
  check_weight(weight, "edge " + source.label + " -> " + target.label);
  edges_.push_back(Edge{source, target, weight});
}

std::size_t LayeredGraph::node_count() const noexcept {
  if (layers_.empty()) return 0;
  return layers_.back().offset + layers_.back().size;
}

std::optional<std::size_t> LayeredGraph::find_layer(std::string_view name) const {
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    if (layers_[k].name == name) return k;
  }
  return std::nullopt;
}

std::size_t LayeredGraph::layer_index(std::string_view name) const {
  if (auto k = find_layer(name)) return *k;
  throw DataError("unknown layer '" + std::string(name) + "'");
}

std::optional<NodeRef> LayeredGraph::find(std::size_t layer, std::string_view label) const {
  if (layer >= layers_.size()) return std::nullopt;
  const auto& lookup = lookup_[layer];
  auto it = lookup.find(std::string(label));
  if (it == lookup.end()) return std::nullopt;
  return NodeRef{layer, it->second, it->first};
}

std::size_t LayeredGraph::global_index(const NodeRef& node) const {
  check_node(node);
  return layers_[node.layer].offset + node.local_index;
}

NodeRef LayeredGraph::node_at(std::size_t global) const {
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    const Layer& layer = layers_[k];
    if (global < layer.offset + layer.size) {
      const std::size_t local = global - layer.offset;
      return NodeRef{k, local, labels_[k][local]};
    }
  }
  throw DataError("node index " + std::to_string(global) + " out of range");
}

std::vector<std::string> LayeredGraph::labels() const {
  std::vector<std::string> out;
  out.reserve(node_count());
  for (const auto& layer : labels_) out.insert(out.end(), layer.begin(), layer.end());
  return out;
}

std::span<const std::string> LayeredGraph::layer_labels(std::size_t layer) const {
  return labels_.at(layer);
}

void LayeredGraph::check_node(const NodeRef& node) const {
  if (node.layer >= layers_.size() || node.local_index >= layers_[node.layer].size) {
    throw DataError("edge endpoint '" + node.label + "' does not exist");
  }
}

// ---- NModeMatrix ----------------------------------------------------------

NModeMatrix::NModeMatrix(SparseMatrix entries, std::vector<Layer> layers,
                         std::vector<std::string> labels)
    : entries_(std::move(entries)), layers_(std::move(layers)), labels_(std::move(labels)) {
  std::size_t total = 0;
  for (const Layer& layer : layers_) {
    if (layer.offset != total) throw DataError("layer offsets are not cumulative");
    total += layer.size;
  }
  if (entries_.rows() != entries_.cols() || static_cast<std::size_t>(entries_.rows()) != total) {
    throw DataError("matrix dimension does not match layer sizes");
  }
  if (labels_.size() != total) throw DataError("label count does not match dimension");
  entries_.prune(0.0);
  entries_.makeCompressed();
  for (Eigen::Index k = 0; k < entries_.nonZeros(); ++k) {
    if (!(entries_.valuePtr()[k] >= 0.0)) throw InvalidWeightError("negative matrix entry");
  }
}

double NModeMatrix::operator()(std::size_t row, std::size_t col) const {
  return entries_.coeff(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
}

Eigen::MatrixXd NModeMatrix::block(std::size_t k, std::size_t l) const {
  const Layer& rows = layers_.at(k);
  const Layer& cols = layers_.at(l);
  return Eigen::MatrixXd(entries_.block(static_cast<Eigen::Index>(rows.offset),
                                        static_cast<Eigen::Index>(cols.offset),
                                        static_cast<Eigen::Index>(rows.size),
                                        static_cast<Eigen::Index>(cols.size)));
}

bool NModeMatrix::is_symmetric(double tol) const {
  const SparseMatrix transposed = entries_.transpose();
  const SparseMatrix diff = entries_ - transposed;
  for (Eigen::Index k = 0; k < diff.nonZeros(); ++k) {
    if (std::abs(diff.valuePtr()[k]) > tol) return false;
  }
  return true;
}

// ---- LayerWeights ---------------------------------------------------------

LayerWeights::LayerWeights(std::size_t layer_count)
    : intra_(layer_count, 1.0), inter_(layer_count * layer_count, 1.0) {}

void LayerWeights::set_intra(std::size_t layer, double weight) {
  check_weight(weight, "intra-layer weight");
  intra_.at(layer) = weight;
}

void LayerWeights::set_inter(std::size_t from, std::size_t to, double weight) {
  check_weight(weight, "inter-layer weight");
  if (from == to) throw DataError("inter-layer weight needs two distinct layers");
  inter_.at(from * layer_count() + to) = weight;
}

double LayerWeights::inter(std::size_t from, std::size_t to) const {
  if (from >= layer_count() || to >= layer_count()) throw DataError("layer index out of range");
  return inter_[from * layer_count() + to];
}

double LayerWeights::factor(std::size_t row_layer, std::size_t col_layer) const {
  return row_layer == col_layer ? intra(row_layer) : inter(row_layer, col_layer);
}

// ---- operations -----------------------------------------------------------

NModeMatrix build_nmode(const LayeredGraph& graph) {
  const auto n = static_cast<Eigen::Index>(graph.node_count());
  std::vector<Triplet> triplets;
  triplets.reserve(graph.edges().size() * 2);
  std::set<std::pair<std::size_t, std::size_t>> seen;

  for (const Edge& edge : graph.edges()) {
    std::size_t i = graph.global_index(edge.source);
    std::size_t j = graph.global_index(edge.target);
    auto key = graph.directed() ? std::pair{i, j} : std::pair{std::min(i, j), std::max(i, j)};
    if (!seen.insert(key).second) {
      throw DuplicateEdgeError("duplicate edge " + edge.source.label + " -> " + edge.target.label);
    }
    triplets.emplace_back(i, j, edge.weight);
    if (!graph.directed() && i != j) triplets.emplace_back(j, i, edge.weight);
  }

  SparseMatrix entries(n, n);
  entries.setFromTriplets(triplets.begin(), triplets.end());
  auto layers = graph.layers();
  return NModeMatrix(std::move(entries), {layers.begin(), layers.end()}, graph.labels());
}

NModeMatrix apply_layer_weights(const NModeMatrix& matrix, const LayerWeights& weights) {
  const auto layers = matrix.layers();
  if (weights.layer_count() != layers.size()) {
    throw DataError("layer weights cover " + std::to_string(weights.layer_count()) +
                    " layers, matrix has " + std::to_string(layers.size()));
  }
  std::vector<std::size_t> layer_of(matrix.dimension());
  for (std::size_t k = 0; k < layers.size(); ++k) {
    for (std::size_t i = 0; i < layers[k].size; ++i) layer_of[layers[k].offset + i] = k;
  }

  SparseMatrix scaled = matrix.entries();
  for (Eigen::Index row = 0; row < scaled.outerSize(); ++row) {
    for (SparseMatrix::InnerIterator it(scaled, row); it; ++it) {
      it.valueRef() *= weights.factor(layer_of[it.row()], layer_of[it.col()]);
    }
  }
  return NModeMatrix(std::move(scaled), {layers.begin(), layers.end()}, matrix.labels());
}

namespace {

// Target x via 0/1 incidence; an edge in either direction counts.
SparseMatrix shared_neighbour_counts(const LayeredGraph& graph, std::size_t target,
                                     std::size_t via) {
  const auto layers = graph.layers();
  if (target >= layers.size() || via >= layers.size()) {
    throw DataError("projection layer index out of range");
  }
  if (target == via) throw DataError("projection needs distinct target and via layers");
  if (layers[target].size == 0) {
    throw EmptyLayerError("projection target layer '" + layers[target].name + "' is empty");
  }

  std::set<std::pair<std::size_t, std::size_t>> links;
  for (const Edge& edge : graph.edges()) {
    if (edge.source.layer == target && edge.target.layer == via) {
      links.emplace(edge.source.local_index, edge.target.local_index);
    } else if (edge.source.layer == via && edge.target.layer == target) {
      links.emplace(edge.target.local_index, edge.source.local_index);
    }
  }
  std::vector<Triplet> triplets;
  triplets.reserve(links.size());
  for (auto [t, v] : links) triplets.emplace_back(t, v, 1.0);

  SparseMatrix incidence(static_cast<Eigen::Index>(layers[target].size),
                         static_cast<Eigen::Index>(layers[via].size));
  incidence.setFromTriplets(triplets.begin(), triplets.end());
  SparseMatrix counts = (incidence * SparseMatrix(incidence.transpose())).pruned();
  for (Eigen::Index row = 0; row < counts.outerSize(); ++row) {
    for (SparseMatrix::InnerIterator it(counts, row); it; ++it) {
      if (it.row() == it.col()) it.valueRef() = 0.0;
    }
  }
  counts.prune(0.0);
  return counts;
}

NModeMatrix single_layer(const LayeredGraph& graph, std::size_t target, SparseMatrix entries) {
  const Layer& source = graph.layers()[target];
  auto labels = graph.layer_labels(target);
  return NModeMatrix(std::move(entries), {Layer{source.name, source.size, 0}},
                     {labels.begin(), labels.end()});
}

}  // namespace

NModeMatrix project_unipartite_binary(const LayeredGraph& graph, std::size_t target,
                                      std::size_t via) {
  SparseMatrix counts = shared_neighbour_counts(graph, target, via);
  for (Eigen::Index k = 0; k < counts.nonZeros(); ++k) counts.valuePtr()[k] = 1.0;
  return single_layer(graph, target, std::move(counts));
}

NModeMatrix project_unipartite_weighted(const LayeredGraph& graph, std::size_t target,
                                        std::size_t via) {
  return single_layer(graph, target, shared_neighbour_counts(graph, target, via));
}

LayeredGraph to_layered_graph(const NModeMatrix& matrix) {
  const bool directed = !matrix.is_symmetric();
  LayeredGraph graph(directed);
  std::vector<NodeRef> nodes;
  nodes.reserve(matrix.dimension());
  for (const Layer& layer : matrix.layers()) {
    const std::size_t k = graph.add_layer(layer.name);
    for (std::size_t i = 0; i < layer.size; ++i) {
      nodes.push_back(graph.add_node(k, matrix.labels()[layer.offset + i]));
    }
  }
  const SparseMatrix& entries = matrix.entries();
  for (Eigen::Index row = 0; row < entries.outerSize(); ++row) {
    for (SparseMatrix::InnerIterator it(entries, row); it; ++it) {
      if (!directed && it.col() < it.row()) continue;
      graph.add_edge(nodes[it.row()], nodes[it.col()], it.value());
    }
  }
  return graph;
}

}  // namespace hetnet
