#include "mpfbm/kernels.hpp"

#include "mpfbm/error.hpp"

#include <cmath>
#include <numeric>

namespace mpfbm {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void check_hurst(double h, double hi, bool hi_closed, const char* what) {
  const bool ok = std::isfinite(h) && h > 0.0 && (hi_closed ? h <= hi : h < hi);
  if (!ok)
    throw DomainError(std::string(what) + ": H=" + std::to_string(h) +
                      " outside valid range " + (hi_closed ? "(0,1/2]" : "(0,1)"));
}

}  // namespace

Kernel Kernel::mpfbm(double hurst, MeasureSpec measure,
                     std::optional<Eigen::Index> dim) {
  check_hurst(hurst, 0.5, true, "mpfbm");
  auto mdim = measure.dim();
  if (dim && mdim && *dim != *mdim)
    throw DimensionError("mpfbm: measure dimension differs from kernel dimension");
  if (dim && *dim < 1) throw DimensionError("mpfbm: dimension must be >= 1");
  return Kernel(MpfBmParams{hurst, std::move(measure)}, dim ? dim : mdim);
}

Kernel Kernel::levy(double hurst, std::optional<Eigen::Index> dim) {
  check_hurst(hurst, 1.0, false, "levy");
  if (dim && *dim < 1) throw DimensionError("levy: dimension must be >= 1");
  return Kernel(LevyParams{hurst}, dim);
}

Kernel Kernel::sheet(std::vector<double> hurst) {
  if (hurst.empty()) throw DimensionError("sheet: needs one exponent per axis");
  for (double h : hurst) check_hurst(h, 1.0, false, "sheet");
  const auto n = static_cast<Eigen::Index>(hurst.size());
  return Kernel(SheetParams{std::move(hurst)}, n);
}

std::string Kernel::variant_name() const {
  return std::visit(overloaded{[](const MpfBmParams&) { return "mpfbm"; },
                               [](const LevyParams&) { return "levy"; },
                               [](const SheetParams&) { return "sheet"; }},
                    params_);
}

void Kernel::require_dim(Eigen::Index n) const {
  if (dim_ && *dim_ != n)
    throw DimensionError("kernel has dimension " + std::to_string(*dim_) +
                         ", point has dimension " + std::to_string(n));
}

double pow0(double x, double e) {
  if (x <= 0.0) return 0.0;
  return std::pow(x, e);
}

double fbm_cov(double hurst, double s, double t) {
  const double e = 2.0 * hurst;
  return 0.5 * (pow0(std::abs(s), e) + pow0(std::abs(t), e) - pow0(std::abs(t - s), e));
}

double cov(const Kernel& k, const Point& s, const Point& t) {
  require_same_dim(s, t);
  k.require_dim(s.size());
  require_nonnegative(s);
  require_nonnegative(t);
  return std::visit(
      overloaded{
          [&](const MpfBmParams& p) {
            const double e = 2.0 * p.hurst;
            return 0.5 * (pow0(lower_measure(p.measure, s), e) +
                          pow0(lower_measure(p.measure, t), e) -
                          pow0(lower_symdiff_measure(p.measure, s, t), e));
          },
          [&](const LevyParams& p) {
            const double e = 2.0 * p.hurst;
            return 0.5 * (pow0(s.norm(), e) + pow0(t.norm(), e) -
                          pow0((t - s).norm(), e));
          },
          [&](const SheetParams& p) {
            double out = 1.0;
            for (Eigen::Index i = 0; i < s.size(); ++i)
              out *= fbm_cov(p.hurst[static_cast<std::size_t>(i)], s(i), t(i));
            return out;
          }},
      k.params());
}

double cov_r2_lebesgue(double hurst, const Point& s, const Point& t) {
  if (s.size() != 2 || t.size() != 2)
    throw DimensionError("cov_r2_lebesgue requires points of R^2");
  check_hurst(hurst, 0.5, true, "cov_r2_lebesgue");
  require_nonnegative(s);
  require_nonnegative(t);
  const double e = 2.0 * hurst;
  const double ms = s(0) * s(1);
  const double mt = t(0) * t(1);
  const double sym =
      ms + mt - 2.0 * std::min(s(0), t(0)) * std::min(s(1), t(1));
  return 0.5 * (pow0(ms, e) + pow0(mt, e) - pow0(sym, e));
}

double ordered_cov_form(double alpha, double scale, const MeasureSpec& m,
                        const Point& s, const Point& t) {
  const auto n = static_cast<double>(s.size());
  if (!(alpha > 0.0 && alpha <= n / 2.0))
    throw DomainError("ordered_cov_form: alpha must lie in (0, N/2]");
  if (!precedes(s, t)) throw DomainError("ordered pair required");
  const double e = 2.0 * alpha / n;
  const double ms = lower_measure(m, s);
  const double mt = lower_measure(m, t);
  const double diff = s == t ? 0.0 : lower_symdiff_measure(m, s, t);
  return scale * (pow0(ms, e) + pow0(mt, e) - pow0(diff, e));
}

double self_similarity_factor(const Kernel& k, double a, Eigen::Index dim) {
  if (!(a > 0.0) || !std::isfinite(a))
    throw DomainError("self_similarity_factor: scale must be positive");
  k.require_dim(dim);
  return std::visit(
      overloaded{
          [&](const MpfBmParams& p) {
            if (!p.measure.is_lebesgue())
              throw DomainError(
                  "self-similarity needs a homogeneous (Lebesgue) measure");
            return std::pow(a, static_cast<double>(dim) * p.hurst);
          },
          [&](const LevyParams& p) { return std::pow(a, p.hurst); },
          [&](const SheetParams& p) {
            return std::pow(a, std::accumulate(p.hurst.begin(), p.hurst.end(), 0.0));
          }},
      k.params());
}

}  // namespace mpfbm
