#include "hetnet/centrality.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/LU>

#include "hetnet/errors.hpp"

namespace hetnet {

namespace {

void check_params(const CentralityParams& params) {
  if (!std::isfinite(params.alpha) || params.alpha < 0.0) {
    throw DataError("alpha must be finite and >= 0");
  }
  if (!std::isfinite(params.beta) || params.beta <= 0.0) {
    throw DataError("beta must be finite and > 0");
  }
}

}  // namespace

SpectralInfo spectral_radius(const NModeMatrix& matrix, const EigenOptions& options) {
  if (matrix.dimension() == 0) throw DataError("spectral radius of an empty matrix");
  if (matrix.is_zero()) return SpectralInfo{0.0, 0, 0.0};

  const SparseMatrix& entries = matrix.entries();
  Eigenpair pair;
  if (matrix.is_symmetric()) {
    // Perron-Frobenius: for symmetric nonnegative A the largest eigenvalue is
    // also the largest in magnitude.
    pair = largest_eigenpair_symmetric(
        [&entries](const Eigen::VectorXd& in, Eigen::VectorXd& out) { out.noalias() = entries * in; },
        matrix.dimension(), options);
  } else {
    pair = perron_eigenpair(entries, options);
  }
  return SpectralInfo{std::abs(pair.value), pair.iterations, pair.residual};
}

std::optional<double> max_alpha(const SpectralInfo& spectrum) {
  if (spectrum.lambda_max <= 0.0) return std::nullopt;
  return 1.0 / spectrum.lambda_max;
}

std::optional<double> max_alpha(const NModeMatrix& matrix) {
  return max_alpha(spectral_radius(matrix));
}

bool is_admissible(double alpha, const SpectralInfo& spectrum, double margin) {
  return std::isfinite(alpha) && alpha >= 0.0 && alpha * spectrum.lambda_max < 1.0 - margin;
}

void require_admissible(double alpha, const SpectralInfo& spectrum, double margin) {
  if (is_admissible(alpha, spectrum, margin)) return;
  const double bound = spectrum.lambda_max > 0.0 ? 1.0 / spectrum.lambda_max
                                                 : std::numeric_limits<double>::infinity();
  std::ostringstream msg;
  msg.precision(6);
  msg << "alpha " << alpha << " is outside the convergence region: need alpha < 1/lambda_max = "
      << bound << " (lambda_max = " << spectrum.lambda_max << ")";
  throw DivergenceError(msg.str(), alpha, bound);
}

CentralityMatrix bonacich_exact(const NModeMatrix& matrix, CentralityParams params,
                                const SpectralInfo& spectrum, const CentralityOptions& options) {
  check_params(params);
  require_admissible(params.alpha, spectrum, options.margin);

  const Eigen::MatrixXd adjacency = matrix.dense();
  const Eigen::Index n = adjacency.rows();
  CentralityMatrix result{params.beta * adjacency, params};
  if (params.alpha == 0.0 || n == 0) return result;

  const Eigen::MatrixXd system =
      Eigen::MatrixXd::Identity(n, n) - params.alpha * adjacency;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
  if (!(lu.rcond() > 1e-14)) {
    throw NumericalError("singular system I - alpha A (rcond " + std::to_string(lu.rcond()) + ")");
  }
  result.values = lu.solve(result.values);

  const double residual = recurrence_residual(matrix, result);
  if (!(residual <= options.recurrence_tolerance)) {
    throw NumericalError("centrality solve residual " + std::to_string(residual) +
                         " exceeds tolerance");
  }
  return result;
}

CentralityMatrix bonacich_exact(const NModeMatrix& matrix, CentralityParams params,
                                const CentralityOptions& options) {
  check_params(params);
  return bonacich_exact(matrix, params, spectral_radius(matrix, options.eigen), options);
}

CentralityMatrix bonacich_series(const NModeMatrix& matrix, CentralityParams params,
                                 std::size_t terms) {
  check_params(params);
  if (terms == 0) throw DataError("series needs at least one term");

  Eigen::MatrixXd power = matrix.dense();
  Eigen::MatrixXd sum = power;
  double weight = 1.0;
  for (std::size_t k = 1; k < terms; ++k) {
    power = matrix.entries() * power;
    weight *= params.alpha;
    sum += weight * power;
  }
  return CentralityMatrix{params.beta * sum, params};
}

CentralityMatrix compute_centrality(const NModeMatrix& matrix, CentralityParams params,
                                    const MethodSpec& method, const SpectralInfo& spectrum,
                                    const CentralityOptions& options) {
  if (method.method == CentralityMethod::series) {
    return bonacich_series(matrix, params, method.terms);
  }
  return bonacich_exact(matrix, params, spectrum, options);
}

double recurrence_residual(const NModeMatrix& matrix, const CentralityMatrix& centrality) {
  const Eigen::MatrixXd& c = centrality.values;
  if (c.size() == 0) return 0.0;
  const Eigen::MatrixXd expected =
      centrality.params.beta * matrix.dense() +
      centrality.params.alpha * (matrix.entries() * c);
  return (c - expected).cwiseAbs().maxCoeff() / std::max(1.0, c.cwiseAbs().maxCoeff());
}

Eigen::VectorXd node_scores(const CentralityMatrix& centrality) {
  return centrality.values.rowwise().sum();
}

}  // namespace hetnet
