#pragma once

#include "mpfbm/geometry.hpp"
#include "mpfbm/kernels.hpp"
#include "mpfbm/measures.hpp"

#include <limits>
#include <utility>
#include <variant>
#include <vector>

namespace mpfbm {

/// f(u) = offset + α u.
struct LinearFlow {
  Eigen::VectorXd direction;
  Eigen::VectorXd offset;  // zero for the paths through the origin
};

/// f_i(u) = c_i u^{p_i}.
struct PowerFlow {
  Eigen::VectorXd exponents;
  Eigen::VectorXd scales;
};

/// Piecewise-linear interpolation of knots (u_k, f(u_k)).
struct TabulatedFlow {
  std::vector<double> knots;
  std::vector<Point> points;
};

/// An increasing path [a, b] -> R^N_+.
///
/// Strict flows satisfy u < v ⇒ f(u) ≺ f(v) with strict inequality in every
/// coordinate. Weak flows (opt-in) only need every coordinate
/// non-decreasing and at least one strictly increasing, which admits lines
/// parallel to an axis.
class FlowSpec {
 public:
  using Variant = std::variant<LinearFlow, PowerFlow, TabulatedFlow>;

  static FlowSpec linear(Eigen::VectorXd direction, double a, double b,
                         bool weak = false,
                         Eigen::VectorXd offset = Eigen::VectorXd());
  static FlowSpec power(Eigen::VectorXd exponents, Eigen::VectorXd scales,
                        double a, double b);
  /// Domain is [knots.front(), knots.back()].
  static FlowSpec tabulated(std::vector<double> knots, std::vector<Point> points,
                            bool weak = false);

  const Variant& variant() const { return variant_; }
  double lower() const { return a_; }
  double upper() const { return b_; }
  bool weak() const { return weak_; }
  Eigen::Index dim() const { return dim_; }
  std::string variant_name() const;

  /// f(u); throws DomainError outside [a, b].
  Point operator()(double u) const;

 private:
  FlowSpec(Variant v, double a, double b, bool weak, Eigen::Index dim)
      : variant_(std::move(v)), a_(a), b_(b), weak_(weak), dim_(dim) {}

  Variant variant_;
  double a_;
  double b_;
  bool weak_;
  Eigen::Index dim_;
};

/// θ(u) = m([0, f(u)]).
double theta(const FlowSpec& f, const MeasureSpec& m, double u);

/// Covariance of the MpfBm seen along a flow:
/// C(u,v) = ½[θ(u)^{2H} + θ(v)^{2H} - |θ(v) - θ(u)|^{2H}].
class ProjectedKernel {
 public:
  /// Throws DomainError unless k is an MpfBm kernel.
  ProjectedKernel(const Kernel& k, FlowSpec f);

  double operator()(double u, double v) const;
  double theta(double u) const;
  double hurst() const { return hurst_; }
  const FlowSpec& flow() const { return flow_; }

 private:
  double hurst_;
  MeasureSpec measure_;
  FlowSpec flow_;
};

ProjectedKernel projected_kernel(const Kernel& k, const FlowSpec& f);

struct FlowCheckReport {
  /// Fitted fBm parameters: cov(f(u), f(v)) ≈ scale · fbm_cov(hurst, u, v).
  double fitted_scale = 0.0;
  double fitted_hurst = 0.0;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool holds = false;
  std::pair<double, double> witness{0.0, 0.0};
};

/// Tests whether the kernel restricted to the flow is a classical fBm in
/// the flow parameter. The exponent and scale are fitted from the variances
/// at the smallest and largest positive probe parameter; the deviation is
/// the largest absolute covariance mismatch over all probe pairs.
FlowCheckReport check_flow_preserves_fbm(const Kernel& k, const FlowSpec& f,
                                         const std::vector<std::pair<double, double>>& probes,
                                         double tolerance = 1e-12);

/// Pointwise Hölder exponent of θ at u0 for Lebesgue measure and Linear or
/// Power flows: 1 where θ' > 0, otherwise the order of vanishing, +inf
/// when θ is identically zero. Throws DomainError for other combinations.
double theta_holder_exponent(const FlowSpec& f, const MeasureSpec& m, double u0);

}  // namespace mpfbm
