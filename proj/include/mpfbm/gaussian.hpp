#pragma once

#include "mpfbm/geometry.hpp"
#include "mpfbm/kernels.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace mpfbm {

/// Covariance of a centered Gaussian vector indexed by a point list.
struct CovMatrix {
  std::vector<Point> points;
  Eigen::MatrixXd entries;
  /// The kernel the entries came from; empty for hand-supplied matrices.
  std::optional<Kernel> kernel;
};

/// entries(i,j) = cov(k, pts[i], pts[j]); each off-diagonal entry is
/// computed once and mirrored.
CovMatrix assemble_cov(const Kernel& k, std::span<const Point> pts);

/// Wraps a hand-supplied matrix. Throws DomainError unless it is square and
/// exactly symmetric.
CovMatrix covariance_from_matrix(Eigen::MatrixXd entries);

struct PsdReport {
  double min_eigenvalue;
  bool verdict;
};

/// Smallest eigenvalue of a symmetric matrix; verdict is
/// min_eig >= -1e-8 * max(1, max diagonal).
PsdReport psd_check(const Eigen::MatrixXd& m);
inline PsdReport psd_check(const CovMatrix& m) { return psd_check(m.entries); }

struct CholeskyFactor {
  Eigen::MatrixXd lower;
  double jitter_epsilon = 0.0;  // rung of the ladder that succeeded
  double jitter_added = 0.0;    // epsilon * trace / n actually added
};

/// LLᵀ = M + ε·(trace/n)·I for the first ε in {0, 1e-12, 1e-11, ..., 1e-6}
/// that factorizes. Throws NumericalError("not numerically PSD") otherwise.
CholeskyFactor cholesky_regularized(const Eigen::MatrixXd& m);
inline CholeskyFactor cholesky_regularized(const CovMatrix& m) {
  return cholesky_regularized(m.entries);
}

struct SampleSet {
  std::uint64_t seed = 0;
  Eigen::MatrixXd paths;  // n_samples x n_points
  double jitter_epsilon = 0.0;
  double jitter_added = 0.0;
};

/// n_samples exact draws X = L z. Sample i uses normal substream i of the
/// seed, so the result is independent of `threads`.
SampleSet sample(const CholeskyFactor& factor, long n_samples,
                 std::uint64_t seed, int threads = 1);
SampleSet sample(const CovMatrix& m, long n_samples, std::uint64_t seed,
                 int threads = 1);

/// (1/n) Σ x xᵀ about the known zero mean.
Eigen::MatrixXd empirical_cov(const Eigen::MatrixXd& paths);
inline Eigen::MatrixXd empirical_cov(const SampleSet& s) {
  return empirical_cov(s.paths);
}

}  // namespace mpfbm
