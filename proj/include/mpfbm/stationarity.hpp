#pragma once

#include "mpfbm/geometry.hpp"
#include "mpfbm/increments.hpp"
#include "mpfbm/kernels.hpp"
#include "mpfbm/measures.hpp"

#include <Eigen/Core>

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mpfbm {

/// g(x) = R x + c with R orthogonal.
class RigidMotion {
 public:
  /// Throws DomainError unless RᵀR = I within 1e-12.
  RigidMotion(Eigen::MatrixXd rotation, Eigen::VectorXd translation);

  static RigidMotion identity(Eigen::Index dim);
  /// Rotation by `angle` in the plane of axes 0 and 1 about `center`,
  /// followed by a translation. For N = 1 a negative cosine gives x -> -x.
  static RigidMotion planar_rotation(double angle, const Point& center,
                                     const Eigen::VectorXd& translation);

  const Eigen::MatrixXd& rotation() const { return rotation_; }
  const Eigen::VectorXd& translation() const { return translation_; }
  Eigen::Index dim() const { return translation_.size(); }

  Eigen::VectorXd operator()(const Eigen::VectorXd& x) const {
    return rotation_ * x + translation_;
  }

 private:
  Eigen::MatrixXd rotation_;
  Eigen::VectorXd translation_;
};

enum class Property { ST, SSS, IST, ISSS, MS, IMS };
inline constexpr std::array<Property, 6> kAllProperties = {
    Property::ST, Property::SSS, Property::IST,
    Property::ISSS, Property::MS, Property::IMS};

std::string_view property_name(Property p);

/// Discrepancy threshold below which a property "holds" on a battery.
inline constexpr double kHoldsTolerance = 1e-9;
/// Discrepancies above this are reported as clear refutations; values in
/// (tolerance, kWitnessThreshold] are flagged as gray zone.
inline constexpr double kWitnessThreshold = 1e-3;

/// Configuration achieving the largest discrepancy.
struct Witness {
  std::string description;
  std::vector<Point> points;
  double reference = 0.0;
  double transformed = 0.0;
};

struct StationarityReport {
  Property property;
  double max_discrepancy = 0.0;
  double tolerance = kHoldsTolerance;
  bool holds = true;
  bool gray_zone = false;
  Witness witness;
  std::size_t comparisons = 0;
  /// Rejected probes/motions and similar notes.
  std::vector<std::string> diagnostics;
};

/// ST: {X_t - X_0} vs {X_{t+h} - X_h} over probe pairs, for each shift h.
StationarityReport check_translation(const Kernel& k, const std::vector<Point>& probes,
                                     const std::vector<Point>& shifts,
                                     double tolerance = kHoldsTolerance);

/// SSS: {X_t - X_0} vs {X_{g(t)} - X_{g(0)}}. Motions sending a probe or
/// the origin outside R^N_+ are skipped with a diagnostic; if none is left
/// throws DomainError("no admissible motions").
StationarityReport check_strong(const Kernel& k, const std::vector<Point>& probes,
                                const std::vector<RigidMotion>& motions,
                                double tolerance = kHoldsTolerance);

/// IST: {ΔX[0,t]} vs {ΔX[h,t+h]}. Boxes must be lower boxes.
StationarityReport check_increment_translation(const Kernel& k,
                                               const std::vector<Box>& boxes,
                                               const std::vector<Point>& shifts,
                                               double tolerance = kHoldsTolerance);

/// ISSS: {ΔX[0,t]} vs the increments over the rigid images of the boxes,
/// i.e. the corner functional of [0,t] pushed forward by g. A (motion, box)
/// pair is admitted only if g(0) ≺ g(t) and every image corner is in
/// R^N_+; throws DomainError when no pair is admitted.
StationarityReport check_increment_strong(const Kernel& k,
                                          const std::vector<Box>& boxes,
                                          const std::vector<RigidMotion>& motions,
                                          double tolerance = kHoldsTolerance);

struct MeasureTriple {
  Point t;
  Point tau;
  Point tau_prime;
};

/// MS: Var(X_t - X_0) vs Var(X_τ - X_τ') whenever τ' ≺ τ and
/// m([0,τ]) - m([0,τ']) = m([0,t]). Triples violating the precondition are
/// skipped; throws DomainError when none is valid.
StationarityReport check_measure_stationarity(const Kernel& k, const MeasureSpec& m,
                                              const std::vector<MeasureTriple>& triples,
                                              double tolerance = kHoldsTolerance);

struct UnionPair {
  BoxUnion first;
  BoxUnion second;
};

/// IMS: Var(ΔX_C) vs Var(ΔX_C') for m(C) = m(C'). Throws DomainError when
/// no pair is measure-matched.
StationarityReport check_increment_measure(const Kernel& k, const MeasureSpec& m,
                                           const std::vector<UnionPair>& pairs,
                                           double tolerance = kHoldsTolerance);

/// Fixed probe configuration. A "holds" verdict means "not refuted on the
/// battery".
struct Battery {
  std::string version;
  Eigen::Index dim = 0;
  std::vector<Point> probes;
  std::vector<Point> shifts;
  std::vector<RigidMotion> motions;
  std::vector<UnionPair> union_pairs;
};

inline constexpr std::string_view kBatteryVersion = "battery-v1";

/// The standard battery: 8 Halton probes in (0,3)^N, 4 shifts, 6 rotations
/// by kπ/12 about (2,...,2) followed by a translation of (3,...,3), and 5
/// equal-Lebesgue-measure union pairs.
Battery standard_battery(Eigen::Index dim);

/// Lower boxes (0, p] for the battery probes.
std::vector<Box> battery_lower_boxes(const Battery& b);

/// 20 triples built analytically for measure m: τ' and t range over the
/// probes and τ raises the last coordinate of τ' until
/// m([0,τ]) = m([0,τ']) + m([0,t]). Combinations the measure cannot reach
/// are dropped.
std::vector<MeasureTriple> measure_triples(const MeasureSpec& m, const Battery& b);

struct ImplicationViolation {
  Property antecedent;
  Property consequent;
};

struct SuiteEntry {
  Property property;
  /// Empty when the checker had nothing admissible to compare.
  std::optional<StationarityReport> report;
  std::string not_applicable_reason;
};

struct ImplicationSuiteResult {
  std::vector<SuiteEntry> entries;  // in kAllProperties order
  std::vector<ImplicationViolation> violations;

  const SuiteEntry& entry(Property p) const;
  /// Verdict for p, nullopt when not applicable.
  std::optional<bool> holds(Property p) const;
};

/// Implications between the properties as (antecedent, consequent): SSS⇒ST,
/// ST⇒IST, SSS⇒ISSS, ISSS⇒IST, IMS⇒MS.
const std::vector<std::pair<Property, Property>>& stationarity_implications();

/// Runs all six checkers on the battery and lists every implication whose
/// antecedent holds while its consequent fails. MS and IMS use the kernel's
/// own measure for MpfBm kernels and `m` otherwise.
ImplicationSuiteResult implication_suite(const Kernel& k, const MeasureSpec& m,
                                         const Battery& battery,
                                         double tolerance = kHoldsTolerance);

}  // namespace mpfbm
