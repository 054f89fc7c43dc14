#include "mpfbm/increments.hpp"

#include "mpfbm/error.hpp"

#include <map>

namespace mpfbm {

IncrementFunctional::IncrementFunctional(std::vector<Term> terms) {
  std::map<Point, long, LexLess> merged;
  Eigen::Index n = -1;
  for (Term& t : terms) {
    if (n >= 0 && t.point.size() != n)
      throw DimensionError("increment functional mixes dimensions");
    n = t.point.size();
    merged[std::move(t.point)] += t.coefficient;
  }
  for (auto& [p, c] : merged) {
    if (c != 0) terms_.push_back({p, c});
  }
}

long IncrementFunctional::coefficient_sum() const {
  long s = 0;
  for (const Term& t : terms_) s += t.coefficient;
  return s;
}

IncrementFunctional IncrementFunctional::operator+(
    const IncrementFunctional& other) const {
  std::vector<Term> all = terms_;
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  return IncrementFunctional(std::move(all));
}

bool IncrementFunctional::operator==(const IncrementFunctional& other) const {
  if (terms_.size() != other.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const Term& a = terms_[i];
    const Term& b = other.terms_[i];
    if (a.coefficient != b.coefficient || a.point.size() != b.point.size() ||
        a.point != b.point)
      return false;
  }
  return true;
}

IncrementFunctional delta_functional(const Box& box) {
  std::vector<IncrementFunctional::Term> terms;
  for (Corner& c : corners(box)) terms.push_back({std::move(c.vertex), c.sign});
  return IncrementFunctional(std::move(terms));
}

IncrementFunctional delta_functional(const BoxUnion& c) {
  std::vector<IncrementFunctional::Term> terms;
  for (const Box& b : c.boxes()) {
    for (Corner& corner : corners(b))
      terms.push_back({std::move(corner.vertex), corner.sign});
  }
  return IncrementFunctional(std::move(terms));
}

double functional_cov(const Kernel& k, const IncrementFunctional& a,
                      const IncrementFunctional& b) {
  double out = 0.0;
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      out += static_cast<double>(ta.coefficient * tb.coefficient) *
             cov(k, ta.point, tb.point);
    }
  }
  return out;
}

double increment_cov(const Kernel& k, const BoxUnion& c, const BoxUnion& c2) {
  if (!c.empty() && !c2.empty() && c.dim() != c2.dim())
    throw DimensionError("increment_cov: unions of different dimension");
  return functional_cov(k, delta_functional(c), delta_functional(c2));
}

double increment_var_r2(double hurst, const Point& s, const Point& t) {
  if (s.size() != 2 || t.size() != 2)
    throw DimensionError("increment_var_r2 requires points of R^2");
  if (!(hurst > 0.0 && hurst <= 0.5))
    throw DomainError("increment_var_r2: H outside (0,1/2]");
  require_nonnegative(s);
  require_nonnegative(t);
  if (!strictly_precedes(s, t))
    throw DomainError("increment_var_r2: s must lie strictly below t");
  const double e = 2.0 * hurst;
  const double s1 = s(0), s2 = s(1), t1 = t(0), t2 = t(1);
  return pow0(t1 * t2 - s1 * t2, e) + pow0(t1 * t2 - t1 * s2, e) -
         pow0(t1 * t2 - s1 * s2, e) - pow0(s1 * t2 + t1 * s2 - 2.0 * s1 * s2, e) +
         pow0(s1 * t2 - s1 * s2, e) + pow0(t1 * s2 - s1 * s2, e);
}

}  // namespace mpfbm
