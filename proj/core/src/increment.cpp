#include "mwcalc/increment.hpp"

#include <cmath>
#include <stdexcept>

namespace mwcalc {

double increment(const ScalarField& f, const Point& x, const Point& y) {
  if (!(x.shape() == f.shape) || !(y.shape() == f.shape)) {
    throw std::invalid_argument("increment: shape mismatch");
  }
  const IndexShape& shape = f.shape;
  const std::uint32_t corners = shape.corner_count();
  std::vector<double> buf(static_cast<std::size_t>(shape.flat_size()));
  CompensatedSum total;
  for (CornerMask m = 0; m < corners; ++m) {
    for (int g = 0; g < shape.groups; ++g) {
      const Point& src = (m >> g) & 1u ? x : y;
      for (int k = 0; k < shape.dims; ++k) {
        buf[static_cast<std::size_t>(g) * shape.dims + k] = src.at(g, k);
      }
    }
    total.add(corner_sign(m) * f.eval(Point(shape, buf)));
  }
  return total.value();
}

double increment_inductive(const ScalarField& f, const Point& x, const Point& y,
                           int group) {
  const IndexShape& shape = f.shape;
  if (shape.groups < 2) {
    throw std::invalid_argument("increment_inductive: needs at least two groups");
  }
  if (group < 0 || group >= shape.groups) {
    throw std::invalid_argument("increment_inductive: group index out of range");
  }
  if (!(x.shape() == shape) || !(y.shape() == shape)) {
    throw std::invalid_argument("increment_inductive: shape mismatch");
  }

  auto group_values = [&](const Point& p) {
    std::span<const double> s = p.group(group);
    return std::vector<double>(s.begin(), s.end());
  };
  const ScalarField at_y = restrict_field(f, {{group, group_values(y)}});
  const ScalarField at_x = restrict_field(f, {{group, group_values(x)}});

  const IndexShape sub = at_y.shape;
  std::vector<double> xr, yr;
  xr.reserve(static_cast<std::size_t>(sub.flat_size()));
  yr.reserve(static_cast<std::size_t>(sub.flat_size()));
  for (int g = 0; g < shape.groups; ++g) {
    if (g == group) continue;
    for (int k = 0; k < shape.dims; ++k) {
      xr.push_back(x.at(g, k));
      yr.push_back(y.at(g, k));
    }
  }
  const Point xs(sub, xr), ys(sub, yr);
  return increment(at_y, xs, ys) - increment(at_x, xs, ys);
}

double lipschitz_ratio(const ScalarField& f, const Point& x, const Point& y) {
  const double denom = group_norm_product(x - y);
  if (denom <= 0.0) {
    throw std::domain_error(
        "lipschitz_ratio: zero denominator; some group of x and y coincides "
        "and the increment vanishes by cancellation only");
  }
  return std::abs(increment(f, x, y)) / denom;
}

double estimate_ndim_lipschitz_constant(const ScalarField& f, const Box& box,
                                        int samples, std::uint64_t seed) {
  if (samples < 1) {
    throw std::invalid_argument("estimate_ndim_lipschitz_constant: samples must be >= 1");
  }
  const IndexShape& shape = f.shape;
  Rng rng(seed);
  auto sample_point = [&]() {
    std::vector<double> v(static_cast<std::size_t>(shape.flat_size()));
    for (int l = 0; l < shape.flat_size(); ++l) {
      v[l] = rng.uniform(box.lo.flat(l), box.hi.flat(l));
    }
    return Point(shape, std::move(v));
  };
  auto degenerate = [&](const Point& a, const Point& b) {
    for (int g = 0; g < shape.groups; ++g) {
      if ((a - b).group_norm(g) == 0.0) return true;
    }
    return false;
  };

  double best = 0.0;
  for (int i = 0; i < samples; ++i) {
    Point a = sample_point();
    Point b = sample_point();
    // Degenerate pairs are regenerated, not scored as zero.
    int guard = 0;
    while (degenerate(a, b) && ++guard < 100) b = sample_point();
    if (degenerate(a, b)) continue;
    best = std::max(best, lipschitz_ratio(f, a, b));
  }
  return best;
}

}  // namespace mwcalc
