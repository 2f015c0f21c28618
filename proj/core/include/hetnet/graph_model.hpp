#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace hetnet {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// One entity type. `offset` is the first global row/column of the layer in
/// the N-mode matrix and always equals the summed sizes of earlier layers.
struct Layer {
  std::string name;
  std::size_t size = 0;
  std::size_t offset = 0;

  friend bool operator==(const Layer&, const Layer&) = default;
};

struct NodeRef {
  std::size_t layer = 0;
  std::size_t local_index = 0;
  std::string label;

  friend bool operator==(const NodeRef&, const NodeRef&) = default;
};

struct Edge {
  NodeRef source;
  NodeRef target;
  double weight = 1.0;
};

/// Typed nodes partitioned into layers plus weighted intra- and inter-layer
/// edges. Nodes are ordered layer-major, insertion-ordered within a layer.
///
/// Edges are validated on insertion (endpoints exist, weight is finite and
/// nonnegative); duplicate detection happens when the matrix is built.
class LayeredGraph {
 public:
  explicit LayeredGraph(bool directed = false) : directed_(directed) {}

  std::size_t add_layer(std::string name);
  NodeRef add_node(std::size_t layer, std::string label);
  void add_edge(const NodeRef& source, const NodeRef& target, double weight = 1.0);

  bool directed() const noexcept { return directed_; }
  std::span<const Layer> layers() const noexcept { return layers_; }
  std::span<const Edge> edges() const noexcept { return edges_; }

  std::size_t node_count() const noexcept;
  std::size_t layer_index(std::string_view name) const;
  std::optional<std::size_t> find_layer(std::string_view name) const;
  std::optional<NodeRef> find(std::size_t layer, std::string_view label) const;

  /// Global layer-major index of a node.
  std::size_t global_index(const NodeRef& node) const;
  NodeRef node_at(std::size_t global) const;
  /// Labels of all nodes in global order.
  std::vector<std::string> labels() const;
  std::span<const std::string> layer_labels(std::size_t layer) const;

 private:
  void check_node(const NodeRef& node) const;

  bool directed_;
  std::vector<Layer> layers_;
  std::vector<std::vector<std::string>> labels_;
  std::vector<std::unordered_map<std::string, std::size_t>> lookup_;
  std::vector<Edge> edges_;
};

/// Square sparse adjacency over all nodes, blocked by layer.
class NModeMatrix {
 public:
  NModeMatrix() = default;
  NModeMatrix(SparseMatrix entries, std::vector<Layer> layers,
              std::vector<std::string> labels);

  std::size_t dimension() const noexcept {
    return static_cast<std::size_t>(entries_.rows());
  }
  const SparseMatrix& entries() const noexcept { return entries_; }
  std::span<const Layer> layers() const noexcept { return layers_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  double operator()(std::size_t row, std::size_t col) const;
  Eigen::MatrixXd dense() const { return Eigen::MatrixXd(entries_); }
  /// Dense copy of block (k, l): rows of layer k, columns of layer l.
  Eigen::MatrixXd block(std::size_t k, std::size_t l) const;

  bool is_symmetric(double tol = 0.0) const;
  bool is_zero() const noexcept { return entries_.nonZeros() == 0; }

 private:
  SparseMatrix entries_;
  std::vector<Layer> layers_;
  std::vector<std::string> labels_;
};

/// Per-block scalars. `intra[k]` scales block (k,k); `inter(k,l)` scales the
/// off-diagonal block (k,l). Everything defaults to 1.
class LayerWeights {
 public:
  explicit LayerWeights(std::size_t layer_count);

  std::size_t layer_count() const noexcept { return intra_.size(); }

  void set_intra(std::size_t layer, double weight);
  void set_inter(std::size_t from, std::size_t to, double weight);

  double intra(std::size_t layer) const { return intra_.at(layer); }
  double inter(std::size_t from, std::size_t to) const;
  double factor(std::size_t row_layer, std::size_t col_layer) const;

 private:
  std::vector<double> intra_;
  std::vector<double> inter_;
};

NModeMatrix build_nmode(const LayeredGraph& graph);

NModeMatrix apply_layer_weights(const NModeMatrix& matrix, const LayerWeights& weights);

/// Nodes of `target` linked iff they share at least one neighbour in `via`.
NModeMatrix project_unipartite_binary(const LayeredGraph& graph, std::size_t target,
                                      std::size_t via);

/// Entry (i,j) counts the `via` neighbours shared by target nodes i and j.
NModeMatrix project_unipartite_weighted(const LayeredGraph& graph, std::size_t target,
                                        std::size_t via);

/// Single-layer-per-block graph with one edge per stored entry. Symmetric
/// matrices become undirected graphs holding the upper triangle.
LayeredGraph to_layered_graph(const NModeMatrix& matrix);

}  // namespace hetnet
