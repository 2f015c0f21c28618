#include "hetnet/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include <Eigen/Eigenvalues>

#include "hetnet/errors.hpp"

namespace hetnet {

namespace {

void canonical_sign(Eigen::VectorXd& v) {
  Eigen::Index pivot = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    if (std::abs(v[i]) > std::abs(v[pivot])) pivot = i;
  }
  if (v.size() > 0 && v[pivot] < 0.0) v = -v;
}

double relative_residual(const Eigen::VectorXd& mv, const Eigen::VectorXd& v, double value) {
  return (mv - value * v).norm() / std::max(1.0, std::abs(value));
}

[[noreturn]] void fail(std::string_view method, std::size_t iterations, double residual) {
  std::ostringstream msg;
  msg << method << " did not converge after " << iterations << " iterations (residual "
      << residual << ")";
  throw ConvergenceError(msg.str(), residual);
}

}  // namespace

Eigen::VectorXd default_start_vector(std::size_t n) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) v[static_cast<Eigen::Index>(i)] = 1.0 + 1e-6 * double(i);
  if (n > 0) v.normalize();
  return v;
}

Eigenpair largest_eigenpair_symmetric(const MatVec& apply, std::size_t n,
                                      const EigenOptions& options) {
  if (n == 0) throw NumericalError("eigenproblem of dimension 0");
  const auto dim = static_cast<Eigen::Index>(n);
  const auto basis_cap =
      static_cast<Eigen::Index>(std::min(std::max<std::size_t>(options.krylov_dimension, 2), n));

  Eigen::VectorXd start = default_start_vector(n);
  Eigen::MatrixXd basis(dim, basis_cap);
  Eigen::VectorXd w(dim);
  Eigen::VectorXd mv(dim);
  std::vector<double> diag;
  std::vector<double> offdiag;
  std::size_t iterations = 0;
  double last_residual = std::numeric_limits<double>::infinity();

  while (true) {
    basis.col(0) = start;
    diag.clear();
    offdiag.clear();
    double theta = 0.0;
    Eigen::VectorXd ritz_coeffs;
    Eigen::Index steps = 0;

    for (Eigen::Index j = 0; j < basis_cap; ++j) {
      apply(basis.col(j), w);
      ++iterations;
      const double a = basis.col(j).dot(w);
      diag.push_back(a);
      w -= a * basis.col(j);
      if (j > 0) w -= offdiag.back() * basis.col(j - 1);
      for (int pass = 0; pass < 2; ++pass) {
        const Eigen::VectorXd overlap = basis.leftCols(j + 1).transpose() * w;
        w -= basis.leftCols(j + 1) * overlap;
      }
      const double b = w.norm();
      steps = j + 1;

      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
      Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(diag.data(), steps);
      Eigen::VectorXd e = steps > 1 ? Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(
                                          offdiag.data(), steps - 1))
                                    : Eigen::VectorXd();
      if (steps == 1) {
        theta = d[0];
        ritz_coeffs = Eigen::VectorXd::Ones(1);
      } else {
        tri.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
        theta = tri.eigenvalues()[steps - 1];
        ritz_coeffs = tri.eigenvectors().col(steps - 1);
      }
      const double estimate = std::abs(b * ritz_coeffs[steps - 1]);
      const double scale = std::max(1.0, std::abs(theta));
      const bool breakdown = b <= 1e-14 * scale;
      if (breakdown || estimate <= 0.1 * options.tolerance * scale || steps == dim ||
          iterations >= options.max_iterations) {
        break;
      }
      offdiag.push_back(b);
      if (j + 1 < basis_cap) basis.col(j + 1) = w / b;
    }

    Eigen::VectorXd ritz = basis.leftCols(steps) * ritz_coeffs;
    ritz.normalize();
    apply(ritz, mv);
    ++iterations;
    theta = ritz.dot(mv);
    last_residual = relative_residual(mv, ritz, theta);
    if (last_residual <= options.tolerance) {
      canonical_sign(ritz);
      return Eigenpair{theta, std::move(ritz), iterations, last_residual};
    }
    if (iterations >= options.max_iterations) fail("Lanczos", iterations, last_residual);
    start = ritz;
  }
}

Eigenpair largest_eigenpair_symmetric(const Eigen::MatrixXd& matrix,
                                      const EigenOptions& options) {
  if (matrix.rows() != matrix.cols()) throw NumericalError("eigenproblem needs a square matrix");
  return largest_eigenpair_symmetric(
      [&matrix](const Eigen::VectorXd& in, Eigen::VectorXd& out) { out.noalias() = matrix * in; },
      static_cast<std::size_t>(matrix.rows()), options);
}

namespace {

// Strongly connected components of the nonzero pattern (iterative Tarjan).
std::vector<std::vector<Eigen::Index>> strong_components(const SparseMatrix& m) {
  const Eigen::Index n = m.rows();
  constexpr Eigen::Index unvisited = -1;
  std::vector<Eigen::Index> index(static_cast<std::size_t>(n), unvisited), low(static_cast<std::size_t>(n), 0);
  std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
  std::vector<Eigen::Index> stack;
  std::vector<std::vector<Eigen::Index>> components;
  Eigen::Index counter = 0;

  struct Frame {
    Eigen::Index node;
    SparseMatrix::InnerIterator it;
  };
  for (Eigen::Index root = 0; root < n; ++root) {
    if (index[static_cast<std::size_t>(root)] != unvisited) continue;
    std::vector<Frame> frames;
    auto enter = [&](Eigen::Index v) {
      index[static_cast<std::size_t>(v)] = low[static_cast<std::size_t>(v)] = counter++;
      stack.push_back(v);
      on_stack[static_cast<std::size_t>(v)] = true;
      frames.push_back(Frame{v, SparseMatrix::InnerIterator(m, v)});
    };
    enter(root);
    while (!frames.empty()) {
      Frame& f = frames.back();
      const auto v = static_cast<std::size_t>(f.node);
      if (f.it) {
        const Eigen::Index w = f.it.index();
        ++f.it;
        if (index[static_cast<std::size_t>(w)] == unvisited) {
          enter(w);
        } else if (on_stack[static_cast<std::size_t>(w)]) {
          low[v] = std::min(low[v], index[static_cast<std::size_t>(w)]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<Eigen::Index> component;
        Eigen::Index w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[static_cast<std::size_t>(w)] = false;
          component.push_back(w);
        } while (w != f.node);
        std::sort(component.begin(), component.end());
        components.push_back(std::move(component));
      }
      const Eigen::Index done = f.node;
      frames.pop_back();
      if (!frames.empty()) {
        const auto parent = static_cast<std::size_t>(frames.back().node);
        low[parent] = std::min(low[parent], low[static_cast<std::size_t>(done)]);
      }
    }
  }
  return components;
}

// Power iteration on A + sI, s = half the largest row sum. A must be irreducible.
Eigenpair shifted_power_iteration(const SparseMatrix& matrix, const EigenOptions& options) {
  const Eigen::Index n = matrix.rows();
  double max_row_sum = 0.0;
  for (Eigen::Index row = 0; row < matrix.outerSize(); ++row) {
    double sum = 0.0;
    for (SparseMatrix::InnerIterator it(matrix, row); it; ++it) sum += std::abs(it.value());
    max_row_sum = std::max(max_row_sum, sum);
  }
  Eigen::VectorXd x = default_start_vector(static_cast<std::size_t>(n));
  const double shift = 0.5 * max_row_sum;
  Eigen::VectorXd y(n);
  double residual = std::numeric_limits<double>::infinity();
  for (std::size_t it = 1; it <= options.max_iterations; ++it) {
    y.noalias() = matrix * x;
    const double value = x.dot(y);
    residual = relative_residual(y, x, value);
    if (residual <= options.tolerance) {
      canonical_sign(x);
      return Eigenpair{value, x, it, residual};
    }
    x = (y + shift * x).normalized();
  }
  fail("power iteration", options.max_iterations, residual);
}

}  // namespace

Eigenpair perron_eigenpair(const SparseMatrix& matrix, const EigenOptions& options) {
  const Eigen::Index n = matrix.rows();
  if (n == 0 || n != matrix.cols()) throw NumericalError("eigenproblem needs a nonempty square matrix");

  // The spectrum of a reducible matrix is the union of the spectra of its
  // strongly connected blocks; acyclic parts contribute only zeros.
  Eigenpair best{0.0, Eigen::VectorXd::Zero(n), 0, 0.0};
  std::size_t iterations = 0;
  for (const auto& component : strong_components(matrix)) {
    const auto size = static_cast<Eigen::Index>(component.size());
    std::vector<Eigen::Index> local(static_cast<std::size_t>(n), -1);
    for (Eigen::Index k = 0; k < size; ++k) local[static_cast<std::size_t>(component[static_cast<std::size_t>(k)])] = k;
    std::vector<Eigen::Triplet<double>> triplets;
    for (Eigen::Index row : component) {
      for (SparseMatrix::InnerIterator it(matrix, row); it; ++it) {
        const Eigen::Index col = local[static_cast<std::size_t>(it.index())];
        if (col >= 0 && it.value() != 0.0) {
          triplets.emplace_back(local[static_cast<std::size_t>(row)], col, it.value());
        }
      }
    }
    if (triplets.empty()) continue;  // a single node without a self-loop
    SparseMatrix block(size, size);
    block.setFromTriplets(triplets.begin(), triplets.end());
    const Eigenpair pair = shifted_power_iteration(block, options);
    iterations += pair.iterations;
    if (pair.value > best.value) {
      best.value = pair.value;
      best.residual = pair.residual;
      best.vector.setZero();
      for (Eigen::Index k = 0; k < size; ++k) best.vector[component[static_cast<std::size_t>(k)]] = pair.vector[k];
    }
  }
  best.iterations = iterations;
  if (best.value == 0.0) best.vector = default_start_vector(static_cast<std::size_t>(n));
  return best;
}

}  // namespace hetnet
