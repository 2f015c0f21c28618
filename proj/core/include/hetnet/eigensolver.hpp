#pragma once

#include <cstddef>
#include <functional>

#include <Eigen/Dense>

#include "hetnet/graph_model.hpp"

namespace hetnet {

struct EigenOptions {
  double tolerance = 1e-10;
  std::size_t max_iterations = 100000;  // matrix-vector products
  std::size_t krylov_dimension = 64;    // Lanczos basis size before a restart
};

/// `residual` is ||M v - value v|| / max(1, |value|) for unit `vector`.
struct Eigenpair {
  double value = 0.0;
  Eigen::VectorXd vector;
  std::size_t iterations = 0;
  double residual = 0.0;
};

using MatVec = std::function<void(const Eigen::VectorXd& in, Eigen::VectorXd& out)>;

/// All-ones vector with entry i raised by i * 1e-6, normalised.
Eigen::VectorXd default_start_vector(std::size_t n);

/// Algebraically largest eigenpair of a symmetric operator via restarted
/// Lanczos with full reorthogonalisation. The returned vector is signed so
/// that its largest-magnitude entry (first on ties) is positive.
Eigenpair largest_eigenpair_symmetric(const MatVec& apply, std::size_t n,
                                      const EigenOptions& options = {});
Eigenpair largest_eigenpair_symmetric(const Eigen::MatrixXd& matrix,
                                      const EigenOptions& options = {});

/// Perron root of a nonnegative (possibly asymmetric) matrix: the largest
/// root over its strongly connected blocks, each found by power iteration on
/// B + sI, s = half the block's largest row sum. `vector` is the winning
/// block's Perron vector embedded with zeros, which is an eigenvector of the
/// whole matrix only when nothing else feeds into that block. Acyclic input
/// gives exactly 0.
Eigenpair perron_eigenpair(const SparseMatrix& matrix, const EigenOptions& options = {});

}  // namespace hetnet
