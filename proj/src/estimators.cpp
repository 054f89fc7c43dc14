#include "mpfbm/estimators.hpp"

#include "mpfbm/error.hpp"

#include <cmath>
#include <string>

namespace mpfbm {

namespace {

// J with size == 2^J + 1, or -1.
int dyadic_depth(std::size_t size) {
  if (size < 2) return -1;
  const std::size_t steps = size - 1;
  if ((steps & (steps - 1)) != 0) return -1;
  int j = 0;
  while ((std::size_t{1} << j) < steps) ++j;
  return j;
}

}  // namespace

double quadratic_variation(std::span<const double> path, int level) {
  const int depth = dyadic_depth(path.size());
  if (depth < 1)
    throw DomainError("quadratic_variation: path length must be 2^J + 1, got " +
                      std::to_string(path.size()));
  if (level < 0 || level > depth - 1)
    throw DomainError("quadratic_variation: level outside [0, J-1]");
  const std::size_t step = std::size_t{1} << level;
  double v = 0.0;
  for (std::size_t k = 0; k + step < path.size(); k += step) {
    const double d = path[k + step] - path[k];
    v += d * d;
  }
  return v;
}

HurstEstimate estimate_hurst(std::span<const double> path) {
  const int depth = dyadic_depth(path.size());
  if (depth < 8)
    throw DomainError("estimate_hurst: path length must be 2^J + 1 with J >= 8, got " +
                      std::to_string(path.size()));
  HurstEstimate est;
  for (int m = 2; m <= depth - 4; ++m) {
    const double v = quadratic_variation(path, m);
    if (!(v > 0.0) || !std::isfinite(v))
      throw DomainError("estimate_hurst: degenerate path (zero quadratic variation)");
    est.scales_used.push_back(m);
    est.log_variations.push_back(std::log2(v));
  }

  const auto n = static_cast<double>(est.scales_used.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < est.scales_used.size(); ++i) {
    mx += est.scales_used[i];
    my += est.log_variations[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < est.scales_used.size(); ++i) {
    const double dx = est.scales_used[i] - mx;
    const double dy = est.log_variations[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  const double slope = sxy / sxx;
  const double ssr = std::max(0.0, syy - slope * sxy);
  est.h_hat = 0.5 * (slope + 1.0);
  est.std_error = 0.5 * std::sqrt(ssr / (n - 2.0) / sxx);
  est.r_squared = syy > 0.0 ? 1.0 - ssr / syy : 1.0;
  return est;
}

double holder_prediction(double hurst, double theta_exponent) {
  if (!(hurst > 0.0 && hurst <= 0.5))
    throw DomainError("holder_prediction: H outside (0,1/2]");
  if (!(theta_exponent > 0.0))
    throw DomainError("holder_prediction: theta exponent must be positive");
  return theta_exponent < 1.0 ? theta_exponent * hurst : hurst;
}

}  // namespace mpfbm
