#include "mpfbm/gaussian.hpp"

#include "mpfbm/error.hpp"
#include "mpfbm/rng.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <thread>

namespace mpfbm {

CovMatrix assemble_cov(const Kernel& k, std::span<const Point> pts) {
  if (pts.empty()) throw DomainError("assemble_cov: empty point list");
  const auto n = static_cast<Eigen::Index>(pts.size());
  for (const Point& p : pts) {
    require_same_dim(pts.front(), p);
  }
  k.require_dim(pts.front().size());

  Eigen::MatrixXd c(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double v = cov(k, pts[static_cast<std::size_t>(i)],
                           pts[static_cast<std::size_t>(j)]);
      c(i, j) = v;
      c(j, i) = v;
    }
  }
  return {std::vector<Point>(pts.begin(), pts.end()), std::move(c), k};
}

CovMatrix covariance_from_matrix(Eigen::MatrixXd entries) {
  if (entries.rows() != entries.cols() || entries.rows() == 0)
    throw DomainError("covariance matrix must be square and non-empty");
  if (entries != entries.transpose())
    throw DomainError("covariance matrix must be symmetric");
  return {{}, std::move(entries), std::nullopt};
}

PsdReport psd_check(const Eigen::MatrixXd& m) {
  if (!m.allFinite()) throw NumericalError("psd_check: non-finite entries");
  if (m.rows() != m.cols() || m.rows() == 0)
    throw DomainError("psd_check: matrix must be square and non-empty");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw NumericalError("psd_check: eigen-decomposition failed");
  const double min_eig = es.eigenvalues().minCoeff();
  const double scale = std::max(1.0, m.diagonal().maxCoeff());
  return {min_eig, min_eig >= -1e-8 * scale};
}

CholeskyFactor cholesky_regularized(const Eigen::MatrixXd& m) {
  if (!m.allFinite()) throw NumericalError("cholesky: non-finite entries");
  const auto n = m.rows();
  const double mean_diag = m.trace() / static_cast<double>(n);
  const double base = mean_diag > 0.0 ? mean_diag : 1.0;

  double eps = 0.0;
  for (int rung = 0; rung <= 7; ++rung) {
    if (rung > 0) eps = std::pow(10.0, -13 + rung);
    const double added = eps * base;
    Eigen::MatrixXd shifted = m;
    shifted.diagonal().array() += added;
    Eigen::LLT<Eigen::MatrixXd> llt(shifted);
    if (llt.info() == Eigen::Success) {
      return {llt.matrixL(), eps, added};
    }
  }
  throw NumericalError("not numerically PSD: Cholesky failed for every jitter");
}

SampleSet sample(const CholeskyFactor& factor, long n_samples,
                 std::uint64_t seed, int threads) {
  if (n_samples < 1) throw DomainError("sample: n_samples must be >= 1");
  const auto n = factor.lower.rows();
  SampleSet out;
  out.seed = seed;
  out.jitter_epsilon = factor.jitter_epsilon;
  out.jitter_added = factor.jitter_added;
  out.paths.resize(n_samples, n);

  const NormalStream normals(seed);
  const auto lower = factor.lower.triangularView<Eigen::Lower>();
  auto work = [&](long begin, long end) {
    Eigen::VectorXd z(n);
    for (long i = begin; i < end; ++i) {
      normals.fill(static_cast<std::uint64_t>(i), z.data(),
                   static_cast<std::size_t>(n));
      out.paths.row(i) = (lower * z).transpose();
    }
  };

  const long workers = std::clamp<long>(threads, 1, n_samples);
  if (workers == 1) {
    work(0, n_samples);
    return out;
  }
  {
    std::vector<std::jthread> pool;
    const long chunk = (n_samples + workers - 1) / workers;
    for (long w = 0; w < workers; ++w) {
      const long begin = w * chunk;
      const long end = std::min(n_samples, begin + chunk);
      if (begin < end) pool.emplace_back(work, begin, end);
    }
  }
  return out;
}

SampleSet sample(const CovMatrix& m, long n_samples, std::uint64_t seed,
                 int threads) {
  if (n_samples < 1) throw DomainError("sample: n_samples must be >= 1");
  return sample(cholesky_regularized(m.entries), n_samples, seed, threads);
}

Eigen::MatrixXd empirical_cov(const Eigen::MatrixXd& paths) {
  if (paths.rows() < 2)
    throw DomainError("empirical_cov: need at least 2 samples");
  return (paths.transpose() * paths) / static_cast<double>(paths.rows());
}

}  // namespace mpfbm
