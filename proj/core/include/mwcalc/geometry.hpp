#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "mwcalc/numeric.hpp"

namespace mwcalc {

/// Variables are organized into `groups` groups of `dims` coordinates each.
/// A point therefore has groups*dims real coordinates, stored group-major.
/// Group and coordinate indices are 0-based throughout.
struct IndexShape {
  int groups = 1;  // r
  int dims = 1;    // s

  int flat_size() const { return groups * dims; }
  std::uint32_t corner_count() const { return 1u << groups; }

  /// Number of ways to pick one coordinate per group: s^r.
  std::size_t selection_count() const {
    std::size_t n = 1;
    for (int g = 0; g < groups; ++g) n *= static_cast<std::size_t>(dims);
    return n;
  }

  bool valid() const { return groups >= 1 && dims >= 1; }
  bool operator==(const IndexShape&) const = default;
};

void require_valid(const IndexShape& shape);

/// A coordinate selection picks one coordinate per group (an element of K^N).
/// Selections are enumerated in mixed-radix order with group 0 the most
/// significant digit; this fixes the coefficient layout of MultilinearForm.
std::size_t selection_index(const IndexShape& shape, std::span<const int> pick);
std::vector<int> selection_at(const IndexShape& shape, std::size_t index);
/// Odometer step; returns false after the last selection (pick reset to 0).
bool next_selection(const IndexShape& shape, std::vector<int>& pick);

class Point {
public:
  Point() = default;
  /// Throws std::invalid_argument on size mismatch or non-finite entries.
  Point(IndexShape shape, std::vector<double> values);

  static Point zeros(IndexShape shape);
  static Point constant(IndexShape shape, double value);

  const IndexShape& shape() const { return shape_; }
  double at(int group, int coord) const { return v_[group * shape_.dims + coord]; }
  double flat(int l) const { return v_[l]; }
  std::span<const double> group(int g) const {
    return {v_.data() + static_cast<std::size_t>(g) * shape_.dims,
            static_cast<std::size_t>(shape_.dims)};
  }
  std::span<const double> flat_values() const { return v_; }

  double group_norm(int g) const;   // Euclidean norm of one group
  double euclidean_norm() const;    // norm of the full coordinate vector

  Point with_group(int group, std::span<const double> v) const;

  friend Point operator+(const Point& a, const Point& b);
  friend Point operator-(const Point& a, const Point& b);
  friend Point operator*(double t, const Point& a);
  bool operator==(const Point&) const = default;

private:
  IndexShape shape_;
  std::vector<double> v_;
};

/// Bitmask over groups: bit n set means "take group n from x".
using CornerMask = std::uint32_t;

inline int corner_sign(CornerMask m) {
  return (static_cast<unsigned>(__builtin_popcount(m)) & 1u) ? -1 : 1;
}

/// Mix two points group-wise: group n of the result comes from x when bit n
/// of the mask is set, from y otherwise.
Point select_corner(const Point& x, const Point& y, CornerMask mask);

/// All 2^r corners in ascending mask order.
std::vector<std::pair<CornerMask, Point>> corner_set(const Point& x, const Point& y);

/// Copy of x with one group replaced.
Point substitute_axis(const Point& x, int group, std::span<const double> v);

/// Product over groups of per-group Euclidean norms.
double group_norm_product(const Point& u);

/// Componentwise comparison over all coordinates.
bool componentwise_leq(const Point& a, const Point& b);

enum class BoxKind { closed, half_open };

struct Box {
  Point lo;
  Point hi;
  BoxKind kind = BoxKind::closed;

  const IndexShape& shape() const { return lo.shape(); }
  double volume() const;
  double diameter() const;  // Euclidean diameter
  bool contains(const Point& x) const;
  Point center() const;
};

Box make_box(const Point& lo, const Point& hi, BoxKind kind = BoxKind::closed);

/// Coefficients of a form that is linear in each variable group separately,
/// indexed by coordinate selections in the canonical order.
class MultilinearForm {
public:
  MultilinearForm() = default;
  MultilinearForm(IndexShape shape, std::vector<double> coeffs);

  static MultilinearForm zeros(IndexShape shape);

  const IndexShape& shape() const { return shape_; }
  std::span<const double> coeffs() const { return c_; }
  double coeff(std::span<const int> pick) const {
    return c_[selection_index(shape_, pick)];
  }
  double coeff_at(std::size_t index) const { return c_[index]; }

  /// Sum over selections k of coeff_k * prod_n u(n, k_n).
  double eval(const Point& u) const;

  double euclidean_norm() const;

private:
  IndexShape shape_;
  std::vector<double> c_;
};

}  // namespace mwcalc
