#pragma once

#include <span>
#include <vector>

namespace mpfbm {

struct HurstEstimate {
  double h_hat = 0.0;
  double std_error = 0.0;
  /// R² of the log-log regression.
  double r_squared = 0.0;
  std::vector<int> scales_used;
  /// log2 V_m for each scale in scales_used.
  std::vector<double> log_variations;
};

/// V_level = Σ_k (Y_{(k+1)2^level} - Y_{k 2^level})² for a path of length
/// 2^J + 1 and 0 <= level <= J - 1.
double quadratic_variation(std::span<const double> path, int level);

/// Dyadic quadratic-variation estimator. Regresses log2 V_m on m for
/// m in [2, J-4]; since E V_m ∝ 2^{m(2H-1)}, h_hat = (slope + 1) / 2.
/// Needs length 2^J + 1 with J >= 8; throws DomainError on degenerate
/// (zero) variations.
HurstEstimate estimate_hurst(std::span<const double> path);

/// Regularity of the projection along a flow whose time change has Hölder
/// exponent theta_exponent: theta_exponent·H below 1, H otherwise.
double holder_prediction(double hurst, double theta_exponent);

}  // namespace mpfbm
