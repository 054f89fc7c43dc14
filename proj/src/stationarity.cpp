#include "mpfbm/stationarity.hpp"

#include "mpfbm/error.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace mpfbm {

namespace {

constexpr double kDomainSlack = 1e-12;

std::string fmt_point(const Eigen::VectorXd& p) {
  std::ostringstream os;
  os.precision(6);
  os << '(';
  for (Eigen::Index i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p(i);
  os << ')';
  return os.str();
}

// Maps rigid-motion output back into R^N_+, absorbing rounding below zero.
std::optional<Point> to_domain(const Eigen::VectorXd& x) {
  if ((x.array() < -kDomainSlack).any()) return std::nullopt;
  return Point(x.cwiseMax(0.0));
}

IncrementFunctional difference(const Point& a, const Point& b) {
  return IncrementFunctional({{a, 1}, {b, -1}});
}

void record(StationarityReport& r, double a, double b, auto&& describe) {
  const double d = std::abs(a - b);
  ++r.comparisons;
  if (r.comparisons == 1 || d > r.max_discrepancy) {
    r.max_discrepancy = d;
    r.witness = describe();
    r.witness.reference = a;
    r.witness.transformed = b;
  }
}

// Largest entrywise gap between the Gram matrices of two functional families.
void compare_gram(const Kernel& k, const std::vector<IncrementFunctional>& ref,
                  const std::vector<IncrementFunctional>& tr,
                  StationarityReport& r, auto&& describe) {
  for (std::size_t i = 0; i < ref.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      record(r, functional_cov(k, ref[i], ref[j]), functional_cov(k, tr[i], tr[j]),
             [&] { return describe(i, j); });
    }
  }
}

StationarityReport finalize(StationarityReport r) {
  r.holds = r.max_discrepancy <= r.tolerance;
  r.gray_zone = !r.holds && r.max_discrepancy <= kWitnessThreshold;
  return r;
}

StationarityReport start(Property p, double tolerance) {
  StationarityReport r;
  r.property = p;
  r.tolerance = tolerance;
  return r;
}

double radical_inverse(unsigned k, unsigned base) {
  double inv = 1.0 / base, f = inv, out = 0.0;
  while (k > 0) {
    out += f * (k % base);
    k /= base;
    f *= inv;
  }
  return out;
}

std::vector<unsigned> first_primes(std::size_t n) {
  std::vector<unsigned> out;
  for (unsigned c = 2; out.size() < n; ++c) {
    bool prime = true;
    for (unsigned p : out) prime = prime && (c % p != 0);
    if (prime) out.push_back(c);
  }
  return out;
}

// τ' with its last coordinate raised so that m([0,τ]) = target.
std::optional<Point> raise_last_axis(const MeasureSpec& m, const Point& tau_prime,
                                     double target) {
  const Eigen::Index n = tau_prime.size();
  double others = 1.0;
  for (Eigen::Index i = 0; i + 1 < n; ++i)
    others *= m.axis_integral(i, 0.0, tau_prime(i));
  if (!(others > 0.0)) return std::nullopt;
  const double need = target / others;
  Point tau = tau_prime;
  if (m.is_lebesgue()) {
    tau(n - 1) = need;
  } else {
    const AxisDensity& axis = m.axes()[static_cast<std::size_t>(n - 1)];
    const double base = axis.cumulative(0.0);
    if (base + need > axis.total()) return std::nullopt;
    tau(n - 1) = axis.inverse_cumulative(base + need);
  }
  if (tau(n - 1) < tau_prime(n - 1)) return std::nullopt;
  return tau;
}

BoxUnion unit_boxes(const std::vector<std::pair<std::vector<double>, std::vector<double>>>& spec) {
  std::vector<Box> boxes;
  for (const auto& [lo, hi] : spec) {
    Point a(static_cast<Eigen::Index>(lo.size())), b(a.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      a(i) = lo[static_cast<std::size_t>(i)];
      b(i) = hi[static_cast<std::size_t>(i)];
    }
    boxes.emplace_back(a, b);
  }
  return BoxUnion(std::move(boxes));
}

// Box whose first axis spans [lo0, hi0], second (if any) [lo1, hi1] and
// remaining axes [rest_lo, rest_hi].
std::pair<std::vector<double>, std::vector<double>> shaped(
    Eigen::Index n, double lo0, double hi0, double lo1, double hi1,
    double rest_lo, double rest_hi) {
  std::vector<double> lo(static_cast<std::size_t>(n), rest_lo);
  std::vector<double> hi(static_cast<std::size_t>(n), rest_hi);
  lo[0] = lo0;
  hi[0] = hi0;
  if (n > 1) {
    lo[1] = lo1;
    hi[1] = hi1;
  }
  return {lo, hi};
}

}  // namespace

RigidMotion::RigidMotion(Eigen::MatrixXd rotation, Eigen::VectorXd translation)
    : rotation_(std::move(rotation)), translation_(std::move(translation)) {
  const auto n = translation_.size();
  if (rotation_.rows() != n || rotation_.cols() != n)
    throw DimensionError("rigid motion: rotation and translation dimensions differ");
  const double err =
      (rotation_.transpose() * rotation_ - Eigen::MatrixXd::Identity(n, n))
          .cwiseAbs()
          .maxCoeff();
  if (!(err <= 1e-12)) throw DomainError("rigid motion: matrix is not orthogonal");
}

RigidMotion RigidMotion::identity(Eigen::Index dim) {
  return RigidMotion(Eigen::MatrixXd::Identity(dim, dim), Eigen::VectorXd::Zero(dim));
}

RigidMotion RigidMotion::planar_rotation(double angle, const Point& center,
                                         const Eigen::VectorXd& translation) {
  const auto n = center.size();
  Eigen::MatrixXd rot = Eigen::MatrixXd::Identity(n, n);
  if (n == 1) {
    rot(0, 0) = std::cos(angle) < 0.0 ? -1.0 : 1.0;
  } else {
    const double c = std::cos(angle), s = std::sin(angle);
    rot(0, 0) = c;
    rot(0, 1) = -s;
    rot(1, 0) = s;
    rot(1, 1) = c;
  }
  // x -> R(x - center) + center + translation
  Eigen::VectorXd offset = center - rot * center + translation;
  return RigidMotion(std::move(rot), std::move(offset));
}

std::string_view property_name(Property p) {
  switch (p) {
    case Property::ST: return "ST";
    case Property::SSS: return "SSS";
    case Property::IST: return "IST";
    case Property::ISSS: return "ISSS";
    case Property::MS: return "MS";
    case Property::IMS: return "IMS";
  }
  return "?";
}

StationarityReport check_translation(const Kernel& k, const std::vector<Point>& probes,
                                     const std::vector<Point>& shifts,
                                     double tolerance) {
  auto r = start(Property::ST, tolerance);
  if (probes.empty() || shifts.empty())
    throw DomainError("check_translation: needs probes and shifts");
  const Point origin = Point::Zero(probes.front().size());
  std::vector<IncrementFunctional> ref;
  for (const Point& t : probes) ref.push_back(difference(t, origin));
  for (const Point& h : shifts) {
    require_nonnegative(h);
    std::vector<IncrementFunctional> tr;
    for (const Point& t : probes) tr.push_back(difference(t + h, h));
    compare_gram(k, ref, tr, r, [&](std::size_t i, std::size_t j) {
      return Witness{"shift h=" + fmt_point(h) + ", t_i=" + fmt_point(probes[i]) +
                         ", t_j=" + fmt_point(probes[j]),
                     {h, probes[i], probes[j]}};
    });
  }
  return finalize(std::move(r));
}

StationarityReport check_strong(const Kernel& k, const std::vector<Point>& probes,
                                const std::vector<RigidMotion>& motions,
                                double tolerance) {
  auto r = start(Property::SSS, tolerance);
  if (probes.empty()) throw DomainError("check_strong: needs probes");
  const Point origin = Point::Zero(probes.front().size());
  std::vector<IncrementFunctional> ref;
  for (const Point& t : probes) ref.push_back(difference(t, origin));

  bool any = false;
  for (std::size_t mi = 0; mi < motions.size(); ++mi) {
    const RigidMotion& g = motions[mi];
    auto g0 = to_domain(g(origin));
    std::vector<IncrementFunctional> tr;
    bool ok = g0.has_value();
    for (const Point& t : probes) {
      if (!ok) break;
      auto gt = to_domain(g(t));
      ok = gt.has_value();
      if (ok) tr.push_back(difference(*gt, *g0));
    }
    if (!ok) {
      r.diagnostics.push_back("motion " + std::to_string(mi) +
                              " rejected: image leaves R^N_+");
      continue;
    }
    any = true;
    compare_gram(k, ref, tr, r, [&](std::size_t i, std::size_t j) {
      return Witness{"motion " + std::to_string(mi) + ", t_i=" + fmt_point(probes[i]) +
                         ", t_j=" + fmt_point(probes[j]),
                     {probes[i], probes[j]}};
    });
  }
  if (!any) throw DomainError("no admissible motions");
  return finalize(std::move(r));
}

StationarityReport check_increment_translation(const Kernel& k,
                                               const std::vector<Box>& boxes,
                                               const std::vector<Point>& shifts,
                                               double tolerance) {
  auto r = start(Property::IST, tolerance);
  if (boxes.empty() || shifts.empty())
    throw DomainError("check_increment_translation: needs boxes and shifts");
  std::vector<IncrementFunctional> ref;
  for (const Box& b : boxes) {
    if (!b.lower().isZero(0.0))
      throw DomainError("check_increment_translation: boxes must be lower boxes [0,t]");
    ref.push_back(delta_functional(b));
  }
  for (const Point& h : shifts) {
    require_nonnegative(h);
    std::vector<IncrementFunctional> tr;
    for (const Box& b : boxes) tr.push_back(delta_functional(Box(h, b.upper() + h)));
    compare_gram(k, ref, tr, r, [&](std::size_t i, std::size_t j) {
      return Witness{"shift h=" + fmt_point(h) + ", boxes [0," +
                         fmt_point(boxes[i].upper()) + "] and [0," +
                         fmt_point(boxes[j].upper()) + "]",
                     {h, boxes[i].upper(), boxes[j].upper()}};
    });
  }
  return finalize(std::move(r));
}

StationarityReport check_increment_strong(const Kernel& k,
                                          const std::vector<Box>& boxes,
                                          const std::vector<RigidMotion>& motions,
                                          double tolerance) {
  auto r = start(Property::ISSS, tolerance);
  bool any = false;
  for (std::size_t mi = 0; mi < motions.size(); ++mi) {
    const RigidMotion& g = motions[mi];
    std::vector<IncrementFunctional> ref, tr;
    std::vector<std::size_t> used;
    for (std::size_t bi = 0; bi < boxes.size(); ++bi) {
      const Box& b = boxes[bi];
      if (!b.lower().isZero(0.0))
        throw DomainError("check_increment_strong: boxes must be lower boxes [0,t]");
      const auto g0 = g(b.lower());
      const auto gt = g(b.upper());
      if (!precedes(g0, gt)) {
        r.diagnostics.push_back("motion " + std::to_string(mi) + ", box " +
                                std::to_string(bi) + " rejected: g(0) not below g(t)");
        continue;
      }
      bool inside = true;
      auto image = delta_functional(b).mapped([&](const Point& p) {
        auto q = to_domain(g(p));
        inside = inside && q.has_value();
        return q ? *q : Point(Point::Zero(p.size()));
      });
      if (!inside) {
        r.diagnostics.push_back("motion " + std::to_string(mi) + ", box " +
                                std::to_string(bi) + " rejected: image leaves R^N_+");
        continue;
      }
      ref.push_back(delta_functional(b));
      tr.push_back(std::move(image));
      used.push_back(bi);
    }
    if (ref.empty()) continue;
    any = true;
    compare_gram(k, ref, tr, r, [&](std::size_t i, std::size_t j) {
      const Box& bi = boxes[used[i]];
      const Box& bj = boxes[used[j]];
      return Witness{"motion " + std::to_string(mi) + ", boxes [0," +
                         fmt_point(bi.upper()) + "] and [0," + fmt_point(bj.upper()) + "]",
                     {bi.upper(), bj.upper()}};
    });
  }
  if (!any) throw DomainError("check_increment_strong: no admissible (motion, box) pairs");
  return finalize(std::move(r));
}

StationarityReport check_measure_stationarity(const Kernel& k, const MeasureSpec& m,
                                              const std::vector<MeasureTriple>& triples,
                                              double tolerance) {
  auto r = start(Property::MS, tolerance);
  bool any = false;
  for (std::size_t ti = 0; ti < triples.size(); ++ti) {
    const auto& [t, tau, tau_prime] = triples[ti];
    if (!precedes(tau_prime, tau)) {
      r.diagnostics.push_back("triple " + std::to_string(ti) + " rejected: tau' not below tau");
      continue;
    }
    const double mt = lower_measure(m, t);
    const double mtau = lower_measure(m, tau);
    const double gap = mtau - lower_measure(m, tau_prime) - mt;
    if (std::abs(gap) > 1e-12 * std::max(1.0, mtau)) {
      r.diagnostics.push_back("triple " + std::to_string(ti) +
                              " rejected: m([0,tau]) - m([0,tau']) != m([0,t])");
      continue;
    }
    any = true;
    const Point origin = Point::Zero(t.size());
    const auto a = difference(t, origin);
    const auto b = difference(tau, tau_prime);
    record(r, functional_cov(k, a, a), functional_cov(k, b, b), [&] {
      return Witness{"t=" + fmt_point(t) + ", tau=" + fmt_point(tau) +
                         ", tau'=" + fmt_point(tau_prime),
                     {t, tau, tau_prime}};
    });
  }
  if (!any) throw DomainError("check_measure_stationarity: no valid triples");
  return finalize(std::move(r));
}

StationarityReport check_increment_measure(const Kernel& k, const MeasureSpec& m,
                                           const std::vector<UnionPair>& pairs,
                                           double tolerance) {
  auto r = start(Property::IMS, tolerance);
  bool any = false;
  for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
    const auto& [c1, c2] = pairs[pi];
    const double m1 = union_measure(m, c1);
    const double m2 = union_measure(m, c2);
    if (std::abs(m1 - m2) > 1e-12 * std::max(1.0, std::abs(m1))) {
      r.diagnostics.push_back("pair " + std::to_string(pi) + " rejected: measures differ");
      continue;
    }
    any = true;
    const double v1 = increment_cov(k, c1, c1);
    const double v2 = increment_cov(k, c2, c2);
    record(r, v1, v2, [&] {
      Witness w{"union pair " + std::to_string(pi) + " (measure " +
                    std::to_string(m1) + ")",
                {}};
      for (const Box& b : c1.boxes()) {
        w.points.push_back(b.lower());
        w.points.push_back(b.upper());
      }
      for (const Box& b : c2.boxes()) {
        w.points.push_back(b.lower());
        w.points.push_back(b.upper());
      }
      return w;
    });
  }
  if (!any) throw DomainError("check_increment_measure: no measure-matched pairs");
  return finalize(std::move(r));
}

Battery standard_battery(Eigen::Index dim) {
  if (dim < 1) throw DimensionError("battery dimension must be >= 1");
  Battery b;
  b.version = std::string(kBatteryVersion);
  b.dim = dim;
  const auto primes = first_primes(static_cast<std::size_t>(dim));
  for (unsigned k = 1; k <= 8; ++k) {
    Point p(dim);
    for (Eigen::Index i = 0; i < dim; ++i)
      p(i) = 3.0 * radical_inverse(k, primes[static_cast<std::size_t>(i)]);
    b.probes.push_back(std::move(p));
  }

  b.shifts.push_back(Point::Constant(dim, 0.5));
  b.shifts.push_back(Point::Constant(dim, 1.0));
  Point e0 = Point::Zero(dim);
  e0(0) = 1.0;
  b.shifts.push_back(e0);
  Point elast = Point::Zero(dim);
  elast(dim - 1) = 2.0;
  b.shifts.push_back(elast);

  const Point center = Point::Constant(dim, 2.0);
  const Eigen::VectorXd lift = Eigen::VectorXd::Constant(dim, 3.0);
  for (int k = 0; k < 6; ++k) {
    // In one dimension the only rotations are ±1; alternate them.
    const double angle = dim == 1 ? (k % 2) * std::numbers::pi : k * std::numbers::pi / 12.0;
    b.motions.push_back(RigidMotion::planar_rotation(angle, center, lift));
  }

  const Eigen::Index n = dim;
  if (n == 1) {
    b.union_pairs.push_back({unit_boxes({{{0}, {1}}}), unit_boxes({{{1}, {2}}})});
    b.union_pairs.push_back({unit_boxes({{{0}, {2}}}), unit_boxes({{{1}, {2}}, {{2}, {3}}})});
    b.union_pairs.push_back({unit_boxes({{{0.5}, {1.5}}}), unit_boxes({{{2}, {3}}})});
    b.union_pairs.push_back({unit_boxes({{{0}, {1}}, {{2}, {4}}}), unit_boxes({{{1}, {4}}})});
    b.union_pairs.push_back({unit_boxes({{{0}, {3}}}), unit_boxes({{{2}, {5}}})});
    return b;
  }
  b.union_pairs.push_back({unit_boxes({shaped(n, 0, 1, 0, 1, 0, 1)}),
                           unit_boxes({shaped(n, 1, 2, 1, 2, 1, 2)})});
  b.union_pairs.push_back({unit_boxes({shaped(n, 0, 2, 0, 1, 0, 1)}),
                           unit_boxes({shaped(n, 1, 2, 1, 2, 1, 2),
                                       shaped(n, 2, 3, 1, 2, 1, 2)})});
  b.union_pairs.push_back({unit_boxes({shaped(n, 0.5, 1.5, 0.5, 1.5, 0.5, 1.5)}),
                           unit_boxes({shaped(n, 1, 2, 0, 1, 0, 1)})});
  b.union_pairs.push_back({unit_boxes({shaped(n, 0, 1, 0, 2, 0, 1),
                                       shaped(n, 1, 2, 0, 1, 0, 1)}),
                           unit_boxes({shaped(n, 1, 4, 1, 2, 1, 2)})});
  b.union_pairs.push_back({unit_boxes({shaped(n, 0, 1, 0, 3, 0, 1)}),
                           unit_boxes({shaped(n, 2, 5, 1, 2, 1, 2)})});
  return b;
}

std::vector<Box> battery_lower_boxes(const Battery& b) {
  std::vector<Box> out;
  for (const Point& p : b.probes) out.push_back(lower_box(p));
  return out;
}

std::vector<MeasureTriple> measure_triples(const MeasureSpec& m, const Battery& b) {
  std::vector<MeasureTriple> out;
  const std::size_t n = b.probes.size();
  for (std::size_t d = 1; d < n && out.size() < 20; ++d) {
    for (std::size_t i = 0; i < n && out.size() < 20; ++i) {
      const Point& t = b.probes[i];
      const Point& tau_prime = b.probes[(i + d) % n];
      const double target = lower_measure(m, tau_prime) + lower_measure(m, t);
      if (auto tau = raise_last_axis(m, tau_prime, target))
        out.push_back({t, std::move(*tau), tau_prime});
    }
  }
  return out;
}

const SuiteEntry& ImplicationSuiteResult::entry(Property p) const {
  for (const SuiteEntry& e : entries)
    if (e.property == p) return e;
  throw DomainError("implication suite: property missing");
}

std::optional<bool> ImplicationSuiteResult::holds(Property p) const {
  const SuiteEntry& e = entry(p);
  if (!e.report) return std::nullopt;
  return e.report->holds;
}

const std::vector<std::pair<Property, Property>>& stationarity_implications() {
  static const std::vector<std::pair<Property, Property>> kList = {
      {Property::SSS, Property::ST},   {Property::ST, Property::IST},
      {Property::SSS, Property::ISSS}, {Property::ISSS, Property::IST},
      {Property::IMS, Property::MS}};
  return kList;
}

ImplicationSuiteResult implication_suite(const Kernel& k, const MeasureSpec& m,
                                         const Battery& battery, double tolerance) {
  k.require_dim(battery.dim);
  const MeasureSpec& measure = k.as_mpfbm() ? k.as_mpfbm()->measure : m;
  const auto boxes = battery_lower_boxes(battery);

  ImplicationSuiteResult out;
  for (Property p : kAllProperties) {
    SuiteEntry e{p, std::nullopt, {}};
    try {
      switch (p) {
        case Property::ST:
          e.report = check_translation(k, battery.probes, battery.shifts, tolerance);
          break;
        case Property::SSS:
          e.report = check_strong(k, battery.probes, battery.motions, tolerance);
          break;
        case Property::IST:
          e.report = check_increment_translation(k, boxes, battery.shifts, tolerance);
          break;
        case Property::ISSS:
          e.report = check_increment_strong(k, boxes, battery.motions, tolerance);
          break;
        case Property::MS:
          e.report = check_measure_stationarity(k, measure, measure_triples(measure, battery),
                                                tolerance);
          break;
        case Property::IMS:
          e.report = check_increment_measure(k, measure, battery.union_pairs, tolerance);
          break;
      }
    } catch (const DomainError& err) {
      e.not_applicable_reason = err.what();
    }
    out.entries.push_back(std::move(e));
  }

  for (const auto& [ante, cons] : stationarity_implications()) {
    const auto a = out.holds(ante);
    const auto c = out.holds(cons);
    if (a && c && *a && !*c) out.violations.push_back({ante, cons});
  }
  return out;
}

}  // namespace mpfbm
