#include "mwcalc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mwcalc {

void require_valid(const IndexShape& shape) {
  if (!shape.valid()) {
    throw std::invalid_argument("IndexShape: groups and dims must be >= 1");
  }
}

static void require_same_shape(const IndexShape& a, const IndexShape& b,
                               const char* what) {
  if (!(a == b)) {
    throw std::invalid_argument(std::string(what) + ": shape mismatch");
  }
}

std::size_t selection_index(const IndexShape& shape, std::span<const int> pick) {
  if (static_cast<int>(pick.size()) != shape.groups) {
    throw std::invalid_argument("selection_index: pick must have one entry per group");
  }
  std::size_t idx = 0;
  for (int g = 0; g < shape.groups; ++g) {
    if (pick[g] < 0 || pick[g] >= shape.dims) {
      throw std::invalid_argument("selection_index: coordinate out of range");
    }
    idx = idx * static_cast<std::size_t>(shape.dims) + static_cast<std::size_t>(pick[g]);
  }
  return idx;
}

std::vector<int> selection_at(const IndexShape& shape, std::size_t index) {
  std::vector<int> pick(static_cast<std::size_t>(shape.groups), 0);
  for (int g = shape.groups - 1; g >= 0; --g) {
    pick[g] = static_cast<int>(index % static_cast<std::size_t>(shape.dims));
    index /= static_cast<std::size_t>(shape.dims);
  }
  return pick;
}

bool next_selection(const IndexShape& shape, std::vector<int>& pick) {
  for (int g = shape.groups - 1; g >= 0; --g) {
    if (++pick[g] < shape.dims) return true;
    pick[g] = 0;
  }
  return false;
}

Point::Point(IndexShape shape, std::vector<double> values)
    : shape_(shape), v_(std::move(values)) {
  require_valid(shape_);
  if (static_cast<int>(v_.size()) != shape_.flat_size()) {
    throw std::invalid_argument("Point: expected groups*dims coordinates");
  }
  for (double x : v_) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument("Point: coordinates must be finite");
    }
  }
}

Point Point::zeros(IndexShape shape) {
  return Point(shape, std::vector<double>(static_cast<std::size_t>(shape.flat_size()), 0.0));
}

Point Point::constant(IndexShape shape, double value) {
  return Point(shape, std::vector<double>(static_cast<std::size_t>(shape.flat_size()), value));
}

double Point::group_norm(int g) const {
  double sq = 0.0;
  for (double x : group(g)) sq += x * x;
  return std::sqrt(sq);
}

double Point::euclidean_norm() const {
  double sq = 0.0;
  for (double x : v_) sq += x * x;
  return std::sqrt(sq);
}

Point Point::with_group(int group, std::span<const double> v) const {
  if (group < 0 || group >= shape_.groups) {
    throw std::invalid_argument("with_group: group index out of range");
  }
  if (static_cast<int>(v.size()) != shape_.dims) {
    throw std::invalid_argument("with_group: replacement has wrong dimension");
  }
  std::vector<double> out = v_;
  std::copy(v.begin(), v.end(), out.begin() + static_cast<std::size_t>(group) * shape_.dims);
  return Point(shape_, std::move(out));
}

Point operator+(const Point& a, const Point& b) {
  require_same_shape(a.shape_, b.shape_, "Point::operator+");
  std::vector<double> out(a.v_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.v_[i] + b.v_[i];
  return Point(a.shape_, std::move(out));
}

Point operator-(const Point& a, const Point& b) {
  require_same_shape(a.shape_, b.shape_, "Point::operator-");
  std::vector<double> out(a.v_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.v_[i] - b.v_[i];
  return Point(a.shape_, std::move(out));
}

Point operator*(double t, const Point& a) {
  std::vector<double> out(a.v_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = t * a.v_[i];
  return Point(a.shape_, std::move(out));
}

Point select_corner(const Point& x, const Point& y, CornerMask mask) {
  require_same_shape(x.shape(), y.shape(), "select_corner");
  const IndexShape& shape = x.shape();
  if (mask >= shape.corner_count()) {
    throw std::invalid_argument("select_corner: mask has bits beyond the group count");
  }
  std::vector<double> out(static_cast<std::size_t>(shape.flat_size()));
  for (int g = 0; g < shape.groups; ++g) {
    const Point& src = (mask >> g) & 1u ? x : y;
    for (int k = 0; k < shape.dims; ++k) {
      out[static_cast<std::size_t>(g) * shape.dims + k] = src.at(g, k);
    }
  }
  return Point(shape, std::move(out));
}

std::vector<std::pair<CornerMask, Point>> corner_set(const Point& x, const Point& y) {
  require_same_shape(x.shape(), y.shape(), "corner_set");
  const std::uint32_t n = x.shape().corner_count();
  std::vector<std::pair<CornerMask, Point>> out;
  out.reserve(n);
  for (CornerMask m = 0; m < n; ++m) {
    out.emplace_back(m, select_corner(x, y, m));
  }
  return out;
}

Point substitute_axis(const Point& x, int group, std::span<const double> v) {
  return x.with_group(group, v);
}

double group_norm_product(const Point& u) {
  double prod = 1.0;
  for (int g = 0; g < u.shape().groups; ++g) prod *= u.group_norm(g);
  return prod;
}

bool componentwise_leq(const Point& a, const Point& b) {
  if (!(a.shape() == b.shape())) return false;
  for (int l = 0; l < a.shape().flat_size(); ++l) {
    if (a.flat(l) > b.flat(l)) return false;
  }
  return true;
}

double Box::volume() const {
  double v = 1.0;
  for (int l = 0; l < shape().flat_size(); ++l) v *= hi.flat(l) - lo.flat(l);
  return v;
}

double Box::diameter() const { return (hi - lo).euclidean_norm(); }

bool Box::contains(const Point& x) const {
  if (!(x.shape() == shape())) return false;
  for (int l = 0; l < shape().flat_size(); ++l) {
    if (x.flat(l) < lo.flat(l)) return false;
    if (kind == BoxKind::closed ? x.flat(l) > hi.flat(l) : x.flat(l) >= hi.flat(l)) {
      return false;
    }
  }
  return true;
}

Point Box::center() const { return 0.5 * (lo + hi); }

Box make_box(const Point& lo, const Point& hi, BoxKind kind) {
  require_same_shape(lo.shape(), hi.shape(), "make_box");
  return Box{lo, hi, kind};
}

MultilinearForm::MultilinearForm(IndexShape shape, std::vector<double> coeffs)
    : shape_(shape), c_(std::move(coeffs)) {
  require_valid(shape_);
  if (c_.size() != shape_.selection_count()) {
    throw std::invalid_argument("MultilinearForm: expected dims^groups coefficients");
  }
  for (double x : c_) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument("MultilinearForm: coefficients must be finite");
    }
  }
}

MultilinearForm MultilinearForm::zeros(IndexShape shape) {
  return MultilinearForm(shape, std::vector<double>(shape.selection_count(), 0.0));
}

double MultilinearForm::eval(const Point& u) const {
  if (!(u.shape() == shape_)) {
    throw std::invalid_argument("MultilinearForm::eval: shape mismatch");
  }
  CompensatedSum total;
  std::vector<int> pick(static_cast<std::size_t>(shape_.groups), 0);
  std::size_t idx = 0;
  do {
    double term = c_[idx++];
    for (int g = 0; g < shape_.groups; ++g) term *= u.at(g, pick[g]);
    total.add(term);
  } while (next_selection(shape_, pick));
  return total.value();
}

double MultilinearForm::euclidean_norm() const {
  double sq = 0.0;
  for (double x : c_) sq += x * x;
  return std::sqrt(sq);
}

}  // namespace mwcalc
