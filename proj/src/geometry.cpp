#include "mpfbm/geometry.hpp"

#include "mpfbm/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mpfbm {

Point point(std::initializer_list<double> coords) {
  Point p(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (double c : coords) p(i++) = c;
  return p;
}

void require_nonnegative(const Point& p) {
  if (p.size() == 0) throw DimensionError("point has dimension 0");
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (!std::isfinite(p(i)) || p(i) < 0.0)
      throw DomainError("point coordinate " + std::to_string(i) +
                        " is not a finite non-negative number");
  }
}

void require_same_dim(const Point& s, const Point& t) {
  if (s.size() != t.size())
    throw DimensionError("dimension mismatch: " + std::to_string(s.size()) +
                         " vs " + std::to_string(t.size()));
}

Point meet(const Point& s, const Point& t) {
  require_same_dim(s, t);
  return s.cwiseMin(t);
}

Ordering partial_order(const Point& s, const Point& t) {
  require_same_dim(s, t);
  bool le = true;
  bool ge = true;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    le = le && s(i) <= t(i);
    ge = ge && s(i) >= t(i);
  }
  if (le && ge) return Ordering::equal;
  if (le) return Ordering::less;
  if (ge) return Ordering::greater;
  return Ordering::incomparable;
}

bool precedes(const Point& s, const Point& t) {
  const Ordering o = partial_order(s, t);
  return o == Ordering::less || o == Ordering::equal;
}

bool strictly_precedes(const Point& s, const Point& t) {
  require_same_dim(s, t);
  return (s.array() < t.array()).all();
}

bool LexLess::operator()(const Point& a, const Point& b) const {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(),
                                      b.data() + b.size());
}

Box::Box(Point lower, Point upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  require_same_dim(lower_, upper_);
  require_nonnegative(lower_);
  require_nonnegative(upper_);
  if (!strictly_precedes(lower_, upper_))
    throw DomainError("degenerate box: lower must be strictly below upper "
                      "in every coordinate");
}

bool Box::overlaps(const Box& other) const {
  require_same_dim(lower_, other.lower_);
  for (Eigen::Index i = 0; i < dim(); ++i) {
    if (std::max(lower_(i), other.lower_(i)) >=
        std::min(upper_(i), other.upper_(i)))
      return false;
  }
  return true;
}

bool Box::within(const Box& other) const {
  return precedes(other.lower_, lower_) && precedes(upper_, other.upper_);
}

bool Box::operator==(const Box& other) const {
  return lower_.size() == other.lower_.size() && lower_ == other.lower_ &&
         upper_ == other.upper_;
}

Box lower_box(const Point& t) {
  return Box(Point::Zero(t.size()), t);
}

std::vector<Corner> corners(const Box& box) {
  const auto n = static_cast<int>(box.dim());
  if (n > 30) throw DomainError("box dimension too large for corner expansion");
  const std::uint32_t count = 1u << n;
  std::vector<Corner> out;
  out.reserve(count);
  for (std::uint32_t k = 0; k < count; ++k) {
    // r = complement of k, so that k = 0 yields the upper corner.
    Point v(n);
    int ones = 0;
    for (int i = 0; i < n; ++i) {
      const bool r = ((k >> i) & 1u) == 0;
      v(i) = r ? box.upper()(i) : box.lower()(i);
      ones += r ? 1 : 0;
    }
    out.push_back({std::move(v), ((n - ones) % 2 == 0) ? 1 : -1});
  }
  return out;
}

BoxUnion::BoxUnion(std::vector<Box> boxes) : boxes_(std::move(boxes)) {
  if (!boxes_.empty()) dim_ = boxes_.front().dim();
  for (std::size_t i = 0; i < boxes_.size(); ++i) {
    if (boxes_[i].dim() != dim_)
      throw DimensionError("box union mixes dimensions");
    for (std::size_t j = 0; j < i; ++j) {
      if (boxes_[i].overlaps(boxes_[j]))
        throw DomainError("box union members " + std::to_string(j) + " and " +
                          std::to_string(i) + " have overlapping interiors");
    }
  }
}

BoxUnion::BoxUnion(std::initializer_list<Box> boxes)
    : BoxUnion(std::vector<Box>(boxes)) {}

BoxUnion disjointify(std::span<const Box> boxes) {
  if (boxes.empty()) throw DomainError("disjointify needs at least one box");
  const Eigen::Index n = boxes.front().dim();
  for (const Box& b : boxes) {
    if (b.dim() != n) throw DimensionError("disjointify: mixed dimensions");
  }

  std::vector<std::vector<double>> grid(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    auto& axis = grid[static_cast<std::size_t>(i)];
    for (const Box& b : boxes) {
      axis.push_back(b.lower()(i));
      axis.push_back(b.upper()(i));
    }
    std::sort(axis.begin(), axis.end());
    axis.erase(std::unique(axis.begin(), axis.end()), axis.end());
  }

  std::vector<Box> cells;
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  Point lo(n), hi(n);
  while (true) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& axis = grid[static_cast<std::size_t>(i)];
      lo(i) = axis[idx[static_cast<std::size_t>(i)]];
      hi(i) = axis[idx[static_cast<std::size_t>(i)] + 1];
    }
    Box cell(lo, hi);
    if (std::any_of(boxes.begin(), boxes.end(),
                    [&](const Box& b) { return cell.within(b); }))
      cells.push_back(std::move(cell));

    // Odometer increment, last axis fastest.
    Eigen::Index axis = n - 1;
    for (; axis >= 0; --axis) {
      auto& k = idx[static_cast<std::size_t>(axis)];
      if (k + 2 < grid[static_cast<std::size_t>(axis)].size()) {
        ++k;
        break;
      }
      k = 0;
    }
    if (axis < 0) break;
  }
  return BoxUnion(std::move(cells));
}

}  // namespace mpfbm
