#pragma once

#include "mpfbm/geometry.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace mpfbm {

/// A non-negative weight w(x) tabulated at strictly increasing abscissae,
/// linearly interpolated in between and zero outside [x_min, x_max].
class AxisDensity {
 public:
  explicit AxisDensity(std::vector<std::pair<double, double>> samples);

  const std::vector<std::pair<double, double>>& samples() const {
    return samples_;
  }

  /// Interpolated density value.
  double weight(double x) const;
  /// F(x) = ∫_{-∞}^{x} w, exact on the interpolant.
  double cumulative(double x) const;
  /// ∫_a^b w for a <= b.
  double integral(double a, double b) const { return cumulative(b) - cumulative(a); }
  /// Total mass ∫ w.
  double total() const { return cumulative_.back(); }
  /// Smallest x with cumulative(x) = target, for 0 <= target <= total().
  double inverse_cumulative(double target) const;

 private:
  std::vector<std::pair<double, double>> samples_;
  std::vector<double> cumulative_;  // F at each knot
};

/// The reference measure m on R^N: Lebesgue or a product of 1-D densities.
class MeasureSpec {
 public:
  enum class Kind { lebesgue, product_density };

  static MeasureSpec lebesgue() { return MeasureSpec(); }
  static MeasureSpec product_density(std::vector<AxisDensity> axes);

  Kind kind() const { return kind_; }
  bool is_lebesgue() const { return kind_ == Kind::lebesgue; }
  const std::vector<AxisDensity>& axes() const { return axes_; }
  /// Fixed dimension for product densities, nullopt for Lebesgue.
  std::optional<Eigen::Index> dim() const;

  /// ∫_a^b of the axis-i marginal (b - a for Lebesgue).
  double axis_integral(Eigen::Index axis, double a, double b) const;

 private:
  MeasureSpec() = default;

  Kind kind_ = Kind::lebesgue;
  std::vector<AxisDensity> axes_;
};

/// m((a, b]).
double box_measure(const MeasureSpec& m, const Box& box);

/// m([0, t]); zero whenever a coordinate of t vanishes.
double lower_measure(const MeasureSpec& m, const Point& t);

/// m([0,s] △ [0,t]) by inclusion-exclusion through s ∧ t. Comparable pairs
/// are evaluated as a single difference, so s ≺ t gives exactly
/// lower_measure(t) - lower_measure(s).
double lower_symdiff_measure(const MeasureSpec& m, const Point& s, const Point& t);

/// Sum of the cell measures of a disjoint union.
double union_measure(const MeasureSpec& m, const BoxUnion& c);

}  // namespace mpfbm
