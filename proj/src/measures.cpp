#include "mpfbm/measures.hpp"

#include "mpfbm/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mpfbm {

namespace {

double lerp_weight(const std::pair<double, double>& p0,
                   const std::pair<double, double>& p1, double x) {
  const double t = (x - p0.first) / (p1.first - p0.first);
  return p0.second + t * (p1.second - p0.second);
}

void check_dim(const MeasureSpec& m, Eigen::Index n) {
  if (auto d = m.dim(); d && *d != n)
    throw DimensionError("measure has dimension " + std::to_string(*d) +
                         ", point has dimension " + std::to_string(n));
}

}  // namespace

AxisDensity::AxisDensity(std::vector<std::pair<double, double>> samples)
    : samples_(std::move(samples)) {
  if (samples_.size() < 2)
    throw DomainError("axis density needs at least 2 samples");
  for (std::size_t k = 0; k < samples_.size(); ++k) {
    const auto [x, w] = samples_[k];
    if (!std::isfinite(x) || !std::isfinite(w) || w < 0.0)
      throw DomainError("axis density samples must be finite with w >= 0");
    if (k > 0 && !(x > samples_[k - 1].first))
      throw DomainError("axis density abscissae must be strictly increasing");
  }
  cumulative_.resize(samples_.size());
  cumulative_[0] = 0.0;
  for (std::size_t k = 1; k < samples_.size(); ++k) {
    const auto& [x0, w0] = samples_[k - 1];
    const auto& [x1, w1] = samples_[k];
    cumulative_[k] = cumulative_[k - 1] + 0.5 * (x1 - x0) * (w0 + w1);
  }
}

double AxisDensity::weight(double x) const {
  if (x < samples_.front().first || x > samples_.back().first) return 0.0;
  auto it = std::upper_bound(
      samples_.begin(), samples_.end(), x,
      [](double v, const auto& s) { return v < s.first; });
  if (it == samples_.end()) return samples_.back().second;
  return lerp_weight(*(it - 1), *it, x);
}

double AxisDensity::cumulative(double x) const {
  if (x <= samples_.front().first) return 0.0;
  if (x >= samples_.back().first) return cumulative_.back();
  auto it = std::upper_bound(
      samples_.begin(), samples_.end(), x,
      [](double v, const auto& s) { return v < s.first; });
  const auto k = static_cast<std::size_t>(it - samples_.begin()) - 1;
  const auto& p0 = samples_[k];
  const double wx = lerp_weight(p0, samples_[k + 1], x);
  return cumulative_[k] + 0.5 * (x - p0.first) * (p0.second + wx);
}

double AxisDensity::inverse_cumulative(double target) const {
  if (target < 0.0 || target > total())
    throw DomainError("inverse_cumulative target outside [0, total mass]");
  // First knot interval whose right end reaches the target.
  auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), target);
  auto k = static_cast<std::size_t>(it - cumulative_.begin());
  if (k == 0) return samples_.front().first;
  --k;
  const auto& [x0, w0] = samples_[k];
  const auto& [x1, w1] = samples_[k + 1];
  const double need = target - cumulative_[k];
  const double slope = (w1 - w0) / (x1 - x0);
  // Solve w0*d + slope*d^2/2 = need for d in [0, x1 - x0].
  double d;
  if (std::abs(slope) < 1e-300) {
    d = w0 > 0.0 ? need / w0 : 0.0;
  } else {
    const double disc = std::max(0.0, w0 * w0 + 2.0 * slope * need);
    // Stable root of the quadratic.
    d = 2.0 * need / (w0 + std::sqrt(disc));
    if (!std::isfinite(d)) d = 0.0;
  }
  return std::clamp(x0 + d, x0, x1);
}

MeasureSpec MeasureSpec::product_density(std::vector<AxisDensity> axes) {
  if (axes.empty()) throw DomainError("product density needs at least one axis");
  MeasureSpec m;
  m.kind_ = Kind::product_density;
  m.axes_ = std::move(axes);
  return m;
}

std::optional<Eigen::Index> MeasureSpec::dim() const {
  if (kind_ == Kind::lebesgue) return std::nullopt;
  return static_cast<Eigen::Index>(axes_.size());
}

double MeasureSpec::axis_integral(Eigen::Index axis, double a, double b) const {
  if (kind_ == Kind::lebesgue) return b - a;
  return axes_[static_cast<std::size_t>(axis)].integral(a, b);
}

double box_measure(const MeasureSpec& m, const Box& box) {
  check_dim(m, box.dim());
  double out = 1.0;
  for (Eigen::Index i = 0; i < box.dim(); ++i)
    out *= m.axis_integral(i, box.lower()(i), box.upper()(i));
  return out;
}

double lower_measure(const MeasureSpec& m, const Point& t) {
  require_nonnegative(t);
  check_dim(m, t.size());
  double out = 1.0;
  for (Eigen::Index i = 0; i < t.size(); ++i) {
    if (t(i) == 0.0) return 0.0;
    out *= m.axis_integral(i, 0.0, t(i));
  }
  return out;
}

double lower_symdiff_measure(const MeasureSpec& m, const Point& s, const Point& t) {
  switch (partial_order(s, t)) {
    case Ordering::equal:
      return 0.0;
    case Ordering::less:
      return std::max(0.0, lower_measure(m, t) - lower_measure(m, s));
    case Ordering::greater:
      return std::max(0.0, lower_measure(m, s) - lower_measure(m, t));
    case Ordering::incomparable:
      break;
  }
  const double value = lower_measure(m, s) + lower_measure(m, t) -
                       2.0 * lower_measure(m, s.cwiseMin(t));
  return std::max(0.0, value);
}

double union_measure(const MeasureSpec& m, const BoxUnion& c) {
  double out = 0.0;
  for (const Box& b : c.boxes()) out += box_measure(m, b);
  return out;
}

}  // namespace mpfbm
