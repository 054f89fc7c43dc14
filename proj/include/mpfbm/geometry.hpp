#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace mpfbm {

/// A point of R^N_+. The dimension is runtime data.
using Point = Eigen::VectorXd;

/// Builds a point from a coordinate list, e.g. `point({1.0, 2.0})`.
Point point(std::initializer_list<double> coords);

/// Throws DomainError unless every coordinate is finite and non-negative.
void require_nonnegative(const Point& p);

/// Throws DimensionError if the dimensions differ.
void require_same_dim(const Point& s, const Point& t);

/// Componentwise minimum s ∧ t.
Point meet(const Point& s, const Point& t);

enum class Ordering { less, greater, equal, incomparable };

/// The componentwise partial order of R^N: s ≺ t iff s_i <= t_i for all i.
Ordering partial_order(const Point& s, const Point& t);

/// True iff s ≺ t (equality allowed).
bool precedes(const Point& s, const Point& t);

/// True iff s_i < t_i for every coordinate.
bool strictly_precedes(const Point& s, const Point& t);

/// Lexicographic order on coordinates; used to key canonical forms.
struct LexLess {
  bool operator()(const Point& a, const Point& b) const;
};

/// Half-open rectangle (lower, upper] with lower_i < upper_i for every axis.
class Box {
 public:
  Box(Point lower, Point upper);

  const Point& lower() const { return lower_; }
  const Point& upper() const { return upper_; }
  Eigen::Index dim() const { return lower_.size(); }

  /// True iff the open interiors intersect.
  bool overlaps(const Box& other) const;
  /// True iff this box is a subset of `other`.
  bool within(const Box& other) const;

  bool operator==(const Box& other) const;

 private:
  Point lower_;
  Point upper_;
};

/// The lower box (0, t].
Box lower_box(const Point& t);

struct Corner {
  Point vertex;
  int sign;  // +1 or -1
};

/// The 2^N vertices of a box with the alternating increment signs.
///
/// Bit i of the enumeration index r selects upper_i (r_i = 1) or lower_i
/// (r_i = 0); the sign is (-1)^(N - sum r_i). Enumeration starts from
/// r = (1,...,1), so the upper corner comes first.
std::vector<Corner> corners(const Box& box);

/// A finite union of boxes with pairwise disjoint interiors.
class BoxUnion {
 public:
  /// Throws DomainError if two boxes overlap, DimensionError on mixed dims.
  explicit BoxUnion(std::vector<Box> boxes);
  BoxUnion(std::initializer_list<Box> boxes);

  const std::vector<Box>& boxes() const { return boxes_; }
  Eigen::Index dim() const { return dim_; }
  bool empty() const { return boxes_.empty(); }

 private:
  std::vector<Box> boxes_;
  Eigen::Index dim_ = 0;
};

/// Canonical disjoint representation of an arbitrary list of boxes: the
/// grid partition induced by all distinct input coordinates on each axis,
/// keeping the cells covered by at least one input box. Cells are listed in
/// lexicographic order of their grid index, last axis fastest.
BoxUnion disjointify(std::span<const Box> boxes);

}  // namespace mpfbm
