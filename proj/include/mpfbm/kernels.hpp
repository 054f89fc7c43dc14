#pragma once

#include "mpfbm/geometry.hpp"
#include "mpfbm/measures.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace mpfbm {

/// Multiparameter fBm driven by a measure: 0 < H <= 1/2.
struct MpfBmParams {
  double hurst;
  MeasureSpec measure;
};

/// Isotropic (Lévy) fBm: 0 < H < 1.
struct LevyParams {
  double hurst;
};

/// Fractional Brownian sheet, one exponent per axis in (0, 1).
struct SheetParams {
  std::vector<double> hurst;
};

/// A validated covariance function. Parameter ranges are checked once, at
/// construction; evaluation is total afterwards.
class Kernel {
 public:
  using Params = std::variant<MpfBmParams, LevyParams, SheetParams>;

  static Kernel mpfbm(double hurst, MeasureSpec measure = MeasureSpec::lebesgue(),
                      std::optional<Eigen::Index> dim = std::nullopt);
  static Kernel levy(double hurst, std::optional<Eigen::Index> dim = std::nullopt);
  static Kernel sheet(std::vector<double> hurst);

  const Params& params() const { return params_; }
  /// Fixed dimension, or nullopt when any N is accepted.
  std::optional<Eigen::Index> dim() const { return dim_; }
  /// "mpfbm", "levy" or "sheet".
  std::string variant_name() const;

  const MpfBmParams* as_mpfbm() const { return std::get_if<MpfBmParams>(&params_); }
  const LevyParams* as_levy() const { return std::get_if<LevyParams>(&params_); }
  const SheetParams* as_sheet() const { return std::get_if<SheetParams>(&params_); }

  /// Throws DimensionError if points of dimension n are not admissible.
  void require_dim(Eigen::Index n) const;

 private:
  Kernel(Params p, std::optional<Eigen::Index> dim)
      : params_(std::move(p)), dim_(dim) {}

  Params params_;
  std::optional<Eigen::Index> dim_;
};

/// x^e with the continuous extension 0^e = 0 for e > 0. Tiny negative
/// arguments from cancellation are treated as zero.
double pow0(double x, double e);

/// One-parameter fBm covariance ½[s^{2H} + t^{2H} - |t - s|^{2H}].
double fbm_cov(double hurst, double s, double t);

/// E[X_s X_t] for the kernel.
double cov(const Kernel& k, const Point& s, const Point& t);

/// Closed-form MpfBm covariance on R^2_+ with Lebesgue measure.
double cov_r2_lebesgue(double hurst, const Point& s, const Point& t);

/// K[μ_s^{2α/N} + μ_t^{2α/N} - (μ_t - μ_s)^{2α/N}] for s ≺ t, the form
/// forced by self-similarity of index α plus measure stationarity.
/// Throws DomainError("ordered pair required") for incomparable or reversed
/// pairs.
double ordered_cov_form(double alpha, double scale, const MeasureSpec& m,
                        const Point& s, const Point& t);

/// λ with cov(a·s, a·t) = λ² cov(s, t): a^{NH} (MpfBm, needs a
/// homogeneous measure), a^H (Lévy), a^{ΣH_j} (sheet).
double self_similarity_factor(const Kernel& k, double a, Eigen::Index dim);

}  // namespace mpfbm
