#pragma once

#include "mpfbm/geometry.hpp"
#include "mpfbm/kernels.hpp"

#include <vector>

namespace mpfbm {

/// A finite linear combination Σ c_k X_{p_k} of process values.
///
/// The canonical form has distinct points, sorted lexicographically, and no
/// zero coefficients. Points are merged on exact coordinate equality.
class IncrementFunctional {
 public:
  struct Term {
    Point point;
    long coefficient;
  };

  IncrementFunctional() = default;
  /// Canonicalizes the given terms.
  explicit IncrementFunctional(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  long coefficient_sum() const;

  /// Image of the functional under a point map, re-canonicalized.
  template <class Map>
  IncrementFunctional mapped(Map&& f) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const Term& t : terms_) out.push_back({f(t.point), t.coefficient});
    return IncrementFunctional(std::move(out));
  }

  IncrementFunctional operator+(const IncrementFunctional& other) const;
  bool operator==(const IncrementFunctional& other) const;

 private:
  std::vector<Term> terms_;
};

/// ΔX(D): the alternating corner sum of a single box.
IncrementFunctional delta_functional(const Box& box);

/// ΔX(C) = Σ ΔX(D_i) over the cells of a disjoint union. Corners shared by
/// adjacent cells cancel in the canonical form.
IncrementFunctional delta_functional(const BoxUnion& c);

/// Σ_i Σ_j a_i b_j cov(p_i, q_j).
double functional_cov(const Kernel& k, const IncrementFunctional& a,
                      const IncrementFunctional& b);

/// E[ΔX(C) ΔX(C2)] by bilinear corner expansion.
double increment_cov(const Kernel& k, const BoxUnion& c, const BoxUnion& c2);

/// Closed-form E[ΔB(D)^2] for MpfBm on R^2_+ with Lebesgue measure and
/// D = (s, t], s strictly below t.
double increment_var_r2(double hurst, const Point& s, const Point& t);

}  // namespace mpfbm
