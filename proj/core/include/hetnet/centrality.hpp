#pragma once

#include <cstddef>
#include <optional>

#include <Eigen/Dense>

#include "hetnet/eigensolver.hpp"
#include "hetnet/graph_model.hpp"

namespace hetnet {

/// alpha weighs indirect links, beta direct ones.
struct CentralityParams {
  double alpha = 0.0;
  double beta = 1.0;
};

struct SpectralInfo {
  double lambda_max = 0.0;
  std::size_t iterations = 0;
  double residual = 0.0;
};

struct CentralityOptions {
  // alpha is admissible iff alpha * lambda_max < 1 - margin.
  double margin = 1e-9;
  // Max |C - (beta A + alpha A C)| relative to max(1, max |C|).
  double recurrence_tolerance = 1e-8;
  EigenOptions eigen;
};

enum class CentralityMethod { exact, series };

struct MethodSpec {
  CentralityMethod method = CentralityMethod::exact;
  std::size_t terms = 3;
};

/// Dense matrix of pairwise attenuated path counts C(alpha, beta).
struct CentralityMatrix {
  Eigen::MatrixXd values;
  CentralityParams params;
};

/// Dominant eigenvalue magnitude of a nonnegative matrix. Symmetric input
/// goes through Lanczos, everything else through shifted power iteration.
SpectralInfo spectral_radius(const NModeMatrix& matrix, const EigenOptions& options = {});

/// 1 / lambda_max, or nullopt when lambda_max is 0 and every alpha converges.
std::optional<double> max_alpha(const SpectralInfo& spectrum);
std::optional<double> max_alpha(const NModeMatrix& matrix);

bool is_admissible(double alpha, const SpectralInfo& spectrum, double margin = 1e-9);

/// Throws DivergenceError naming the bound when alpha is not admissible.
void require_admissible(double alpha, const SpectralInfo& spectrum, double margin = 1e-9);

/// beta A (I - alpha A)^-1 by an LU solve of (I - alpha A) C = beta A.
CentralityMatrix bonacich_exact(const NModeMatrix& matrix, CentralityParams params,
                                const SpectralInfo& spectrum,
                                const CentralityOptions& options = {});
CentralityMatrix bonacich_exact(const NModeMatrix& matrix, CentralityParams params,
                                const CentralityOptions& options = {});

/// sum_{k < terms} beta alpha^k A^(k+1). No admissibility check.
CentralityMatrix bonacich_series(const NModeMatrix& matrix, CentralityParams params,
                                 std::size_t terms = 3);

CentralityMatrix compute_centrality(const NModeMatrix& matrix, CentralityParams params,
                                    const MethodSpec& method, const SpectralInfo& spectrum,
                                    const CentralityOptions& options = {});

/// Max-entry violation of C = beta A + alpha A C, relative to max(1, max |C|).
double recurrence_residual(const NModeMatrix& matrix, const CentralityMatrix& centrality);

/// Row sums: total attenuated paths leaving each node.
Eigen::VectorXd node_scores(const CentralityMatrix& centrality);

}  // namespace hetnet
