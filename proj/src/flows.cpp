#include "mpfbm/flows.hpp"

#include "mpfbm/error.hpp"

#include <algorithm>
#include <cmath>

namespace mpfbm {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void check_domain(double a, double b) {
  if (!(std::isfinite(a) && std::isfinite(b) && a >= 0.0 && a < b))
    throw DomainError("flow domain must satisfy 0 <= a < b");
}

// Non-decreasing in every coordinate; strict flows need a strict increase in
// every coordinate, weak flows in at least one.
bool increasing_step(const Point& p, const Point& q, bool weak) {
  const bool nondecreasing = (p.array() <= q.array()).all();
  if (!nondecreasing) return false;
  return weak ? (p.array() < q.array()).any() : (p.array() < q.array()).all();
}

}  // namespace

FlowSpec FlowSpec::linear(Eigen::VectorXd direction, double a, double b, bool weak,
                          Eigen::VectorXd offset) {
  check_domain(a, b);
  const auto n = direction.size();
  if (n == 0) throw DimensionError("linear flow: empty direction");
  if (offset.size() == 0) offset = Eigen::VectorXd::Zero(n);
  if (offset.size() != n) throw DimensionError("linear flow: offset dimension differs");
  if (!direction.allFinite() || (direction.array() < 0.0).any())
    throw DomainError("linear flow: direction must lie in R^N_+");
  if (!offset.allFinite() || (offset.array() < 0.0).any())
    throw DomainError("linear flow: offset must lie in R^N_+");
  if (weak ? !(direction.array() > 0.0).any() : !(direction.array() > 0.0).all())
    throw DomainError(weak ? "linear flow: direction must be non-zero"
                           : "linear flow: strict flows need every direction component > 0");
  return FlowSpec(LinearFlow{std::move(direction), std::move(offset)}, a, b, weak, n);
}

FlowSpec FlowSpec::power(Eigen::VectorXd exponents, Eigen::VectorXd scales,
                         double a, double b) {
  check_domain(a, b);
  const auto n = exponents.size();
  if (n == 0 || scales.size() != n)
    throw DimensionError("power flow: exponents and scales must match");
  if (!(exponents.array() > 0.0).all() || !(scales.array() > 0.0).all() ||
      !exponents.allFinite() || !scales.allFinite())
    throw DomainError("power flow: exponents and scales must be positive");
  return FlowSpec(PowerFlow{std::move(exponents), std::move(scales)}, a, b, false, n);
}

FlowSpec FlowSpec::tabulated(std::vector<double> knots, std::vector<Point> points,
                             bool weak) {
  if (knots.size() < 2 || knots.size() != points.size())
    throw DomainError("tabulated flow: need >= 2 knots, one point per knot");
  const auto n = points.front().size();
  for (std::size_t k = 0; k < knots.size(); ++k) {
    require_same_dim(points.front(), points[k]);
    require_nonnegative(points[k]);
    if (k == 0) continue;
    if (!(knots[k] > knots[k - 1]))
      throw DomainError("tabulated flow: knots must be strictly increasing");
    if (!increasing_step(points[k - 1], points[k], weak))
      throw DomainError("tabulated flow: points are not increasing at knot " +
                        std::to_string(k));
  }
  const double a = knots.front(), b = knots.back();
  check_domain(a, b);
  return FlowSpec(TabulatedFlow{std::move(knots), std::move(points)}, a, b, weak, n);
}

std::string FlowSpec::variant_name() const {
  return std::visit(overloaded{[](const LinearFlow&) { return "linear"; },
                               [](const PowerFlow&) { return "power"; },
                               [](const TabulatedFlow&) { return "tabulated"; }},
                    variant_);
}

Point FlowSpec::operator()(double u) const {
  if (!(u >= a_ && u <= b_))
    throw DomainError("flow parameter " + std::to_string(u) + " outside domain [" +
                      std::to_string(a_) + ", " + std::to_string(b_) + "]");
  return std::visit(
      overloaded{
          [&](const LinearFlow& f) -> Point { return f.offset + f.direction * u; },
          [&](const PowerFlow& f) -> Point {
            Point p(f.exponents.size());
            for (Eigen::Index i = 0; i < p.size(); ++i)
              p(i) = f.scales(i) * std::pow(u, f.exponents(i));
            return p;
          },
          [&](const TabulatedFlow& f) -> Point {
            auto it = std::upper_bound(f.knots.begin(), f.knots.end(), u);
            if (it == f.knots.end()) return f.points.back();
            const auto k = static_cast<std::size_t>(it - f.knots.begin()) - 1;
            const double w = (u - f.knots[k]) / (f.knots[k + 1] - f.knots[k]);
            return f.points[k] + w * (f.points[k + 1] - f.points[k]);
          }},
      variant_);
}

double theta(const FlowSpec& f, const MeasureSpec& m, double u) {
  return lower_measure(m, f(u));
}

ProjectedKernel::ProjectedKernel(const Kernel& k, FlowSpec f)
    : hurst_(0.0), measure_(MeasureSpec::lebesgue()), flow_(std::move(f)) {
  const auto* p = k.as_mpfbm();
  if (!p)
    throw DomainError("projected_kernel requires an MpfBm kernel; use "
                      "check_flow_preserves_fbm for " + k.variant_name());
  k.require_dim(flow_.dim());
  hurst_ = p->hurst;
  measure_ = p->measure;
}

double ProjectedKernel::theta(double u) const {
  return mpfbm::theta(flow_, measure_, u);
}

double ProjectedKernel::operator()(double u, double v) const {
  const double e = 2.0 * hurst_;
  const double tu = theta(u), tv = theta(v);
  return 0.5 * (pow0(tu, e) + pow0(tv, e) - pow0(std::abs(tv - tu), e));
}

ProjectedKernel projected_kernel(const Kernel& k, const FlowSpec& f) {
  return ProjectedKernel(k, f);
}

FlowCheckReport check_flow_preserves_fbm(
    const Kernel& k, const FlowSpec& f,
    const std::vector<std::pair<double, double>>& probes, double tolerance) {
  k.require_dim(f.dim());
  if (probes.empty()) throw DomainError("check_flow_preserves_fbm: no probes");
  double u_lo = std::numeric_limits<double>::infinity(), u_hi = 0.0;
  for (const auto& [u, v] : probes) {
    for (double w : {u, v}) {
      if (w > 0.0) {
        u_lo = std::min(u_lo, w);
        u_hi = std::max(u_hi, w);
      }
    }
  }
  if (!(u_lo < u_hi))
    throw DomainError("check_flow_preserves_fbm: need two distinct positive parameters");

  const double var_lo = cov(k, f(u_lo), f(u_lo));
  const double var_hi = cov(k, f(u_hi), f(u_hi));
  FlowCheckReport r;
  r.tolerance = tolerance;
  if (var_lo > 0.0 && var_hi > 0.0) {
    r.fitted_hurst = std::log(var_hi / var_lo) / (2.0 * std::log(u_hi / u_lo));
    r.fitted_scale = var_hi / std::pow(u_hi, 2.0 * r.fitted_hurst);
  }
  bool first = true;
  for (const auto& [u, v] : probes) {
    const double actual = cov(k, f(u), f(v));
    const double model = r.fitted_scale * fbm_cov(r.fitted_hurst, u, v);
    const double d = std::abs(actual - model);
    if (first || d > r.max_deviation) {
      r.max_deviation = d;
      r.witness = {u, v};
      first = false;
    }
  }
  const bool valid_exponent = r.fitted_hurst > 0.0 && r.fitted_hurst < 1.0;
  r.holds = valid_exponent && r.max_deviation <= tolerance;
  return r;
}

double theta_holder_exponent(const FlowSpec& f, const MeasureSpec& m, double u0) {
  if (!m.is_lebesgue())
    throw DomainError("theta exponent is analytic only for Lebesgue measure");
  if (!(u0 >= f.lower() && u0 <= f.upper()))
    throw DomainError("theta exponent: u0 outside the flow domain");
  const Point p = f(u0);
  // θ = Π f_i; each vanishing coordinate contributes its own order.
  double order = 0.0;
  bool vanishing = false;
  const auto coordinate_order = [&](Eigen::Index i) -> double {
    return std::visit(
        overloaded{[&](const LinearFlow& l) {
                     return l.direction(i) > 0.0
                                ? 1.0
                                : std::numeric_limits<double>::infinity();
                   },
                   [&](const PowerFlow& pf) { return pf.exponents(i); },
                   [&](const TabulatedFlow&) -> double {
                     throw DomainError(
                         "theta exponent for tabulated flows must be supplied");
                   }},
        f.variant());
  };
  if (std::holds_alternative<TabulatedFlow>(f.variant()))
    throw DomainError("theta exponent for tabulated flows must be supplied");
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p(i) == 0.0) {
      vanishing = true;
      order += coordinate_order(i);
    }
  }
  return vanishing ? order : 1.0;
}

}  // namespace mpfbm
