#include "mwcalc/fields.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace mwcalc {

ScalarField make_multilinear_field(const MultilinearForm& form) {
  ScalarField f;
  f.shape = form.shape();
  f.eval = [form](const Point& x) { return form.eval(x); };
  f.exact_partial = [form](std::span<const int> pick, const Point&) {
    return form.coeff(pick);
  };
  f.gradient_lipschitz = 0.0;  // the mixed-partial vector is constant
  f.smoothness = ScalarField::Smoothness::analytic;
  return f;
}

Polynomial::Polynomial(IndexShape shape, std::vector<Monomial> terms)
    : shape_(shape), terms_(std::move(terms)) {
  require_valid(shape_);
  for (const Monomial& m : terms_) {
    if (static_cast<int>(m.exponents.size()) != shape_.flat_size()) {
      throw std::invalid_argument("Polynomial: exponent table must cover all coordinates");
    }
    for (int e : m.exponents) {
      if (e < 0) throw std::invalid_argument("Polynomial: exponents must be >= 0");
    }
    if (!std::isfinite(m.coef)) {
      throw std::invalid_argument("Polynomial: coefficients must be finite");
    }
  }
}

double Polynomial::eval(const Point& x) const {
  if (!(x.shape() == shape_)) {
    throw std::invalid_argument("Polynomial::eval: shape mismatch");
  }
  CompensatedSum total;
  for (const Monomial& m : terms_) {
    double term = m.coef;
    for (int l = 0; l < shape_.flat_size(); ++l) {
      for (int e = 0; e < m.exponents[l]; ++e) term *= x.flat(l);
    }
    total.add(term);
  }
  return total.value();
}

Polynomial Polynomial::derivative(int flat_coord) const {
  if (flat_coord < 0 || flat_coord >= shape_.flat_size()) {
    throw std::invalid_argument("Polynomial::derivative: coordinate out of range");
  }
  std::vector<Monomial> out;
  for (const Monomial& m : terms_) {
    const int e = m.exponents[flat_coord];
    if (e == 0) continue;
    Monomial d = m;
    d.coef = m.coef * e;
    d.exponents[flat_coord] = e - 1;
    out.push_back(std::move(d));
  }
  return Polynomial(shape_, std::move(out));
}

Polynomial Polynomial::mixed_derivative(std::span<const int> pick) const {
  if (static_cast<int>(pick.size()) != shape_.groups) {
    throw std::invalid_argument("Polynomial::mixed_derivative: one pick per group required");
  }
  Polynomial d = *this;
  for (int g = 0; g < shape_.groups; ++g) {
    if (pick[g] < 0 || pick[g] >= shape_.dims) {
      throw std::invalid_argument("Polynomial::mixed_derivative: coordinate out of range");
    }
    d = d.derivative(g * shape_.dims + pick[g]);
  }
  return d;
}

double Polynomial::sup_bound(const Box& box) const {
  double total = 0.0;
  for (const Monomial& m : terms_) {
    double term = std::abs(m.coef);
    for (int l = 0; l < shape_.flat_size(); ++l) {
      const double r = std::max(std::abs(box.lo.flat(l)), std::abs(box.hi.flat(l)));
      for (int e = 0; e < m.exponents[l]; ++e) term *= r;
    }
    total += term;
  }
  return total;
}

ScalarField make_polynomial_field(const Polynomial& poly) {
  const IndexShape shape = poly.shape();
  // Precompute one derivative polynomial per coordinate selection.
  std::vector<Polynomial> partials;
  partials.reserve(shape.selection_count());
  std::vector<int> pick(static_cast<std::size_t>(shape.groups), 0);
  do {
    partials.push_back(poly.mixed_derivative(pick));
  } while (next_selection(shape, pick));

  ScalarField f;
  f.shape = shape;
  f.eval = [poly](const Point& x) { return poly.eval(x); };
  f.exact_partial = [shape, partials](std::span<const int> p, const Point& x) {
    return partials[selection_index(shape, p)].eval(x);
  };
  f.smoothness = ScalarField::Smoothness::analytic;
  return f;
}

double polynomial_gradient_lipschitz(const Polynomial& poly, const Box& box) {
  const IndexShape shape = poly.shape();
  // Frobenius bound on the Jacobian of x -> (mixed partials): each entry is
  // itself a polynomial whose sup over the box we bound by coefficients.
  double frob_sq = 0.0;
  std::vector<int> pick(static_cast<std::size_t>(shape.groups), 0);
  do {
    const Polynomial first = poly.mixed_derivative(pick);
    for (int l = 0; l < shape.flat_size(); ++l) {
      const double b = first.derivative(l).sup_bound(box);
      frob_sq += b * b;
    }
  } while (next_selection(shape, pick));
  return std::sqrt(frob_sq);
}

ScalarField make_product_sine_field(IndexShape shape, std::span<const double> freqs,
                                    const Box* lipschitz_box) {
  require_valid(shape);
  if (static_cast<int>(freqs.size()) != shape.flat_size()) {
    throw std::invalid_argument("make_product_sine_field: one frequency per coordinate");
  }
  std::vector<double> w(freqs.begin(), freqs.end());

  ScalarField f;
  f.shape = shape;
  f.eval = [shape, w](const Point& x) {
    double prod = 1.0;
    for (int l = 0; l < shape.flat_size(); ++l) {
      if (w[l] != 0.0) prod *= std::sin(w[l] * x.flat(l));
    }
    return prod;
  };
  f.exact_partial = [shape, w](std::span<const int> pick, const Point& x) {
    double prod = 1.0;
    for (int g = 0; g < shape.groups; ++g) {
      const int l = g * shape.dims + pick[g];
      // Differentiating a coordinate without a sine factor kills the term.
      if (w[l] == 0.0) return 0.0;
      prod *= w[l] * std::cos(w[l] * x.flat(l));
    }
    for (int l = 0; l < shape.flat_size(); ++l) {
      if (w[l] == 0.0) continue;
      bool differentiated = false;
      for (int g = 0; g < shape.groups; ++g) {
        if (l == g * shape.dims + pick[g]) { differentiated = true; break; }
      }
      if (!differentiated) prod *= std::sin(w[l] * x.flat(l));
    }
    return prod;
  };
  if (lipschitz_box != nullptr) {
    // |d/dx_l of any mixed partial| <= |w_l| * prod over differentiated
    // coordinates of |w|, since sines and cosines are bounded by one.
    double wprod_sq_max = 0.0;
    std::vector<int> pick(static_cast<std::size_t>(shape.groups), 0);
    do {
      double wprod = 1.0;
      for (int g = 0; g < shape.groups; ++g) wprod *= std::abs(w[g * shape.dims + pick[g]]);
      double row_sq = 0.0;
      for (int l = 0; l < shape.flat_size(); ++l) {
        const double entry = std::abs(w[l]) * wprod;
        row_sq += entry * entry;
      }
      wprod_sq_max += row_sq;
    } while (next_selection(shape, pick));
    f.gradient_lipschitz = std::sqrt(wprod_sq_max);
  }
  f.smoothness = ScalarField::Smoothness::analytic;
  return f;
}

ScalarField restrict_field(const ScalarField& f,
                           const std::map<int, std::vector<double>>& fixed) {
  const IndexShape full = f.shape;
  if (fixed.empty() || static_cast<int>(fixed.size()) >= full.groups) {
    throw std::invalid_argument("restrict_field: must fix a nonempty proper subset of groups");
  }
  std::vector<int> free_groups;
  for (int g = 0; g < full.groups; ++g) {
    auto it = fixed.find(g);
    if (it == fixed.end()) {
      free_groups.push_back(g);
    } else if (static_cast<int>(it->second.size()) != full.dims) {
      throw std::invalid_argument("restrict_field: fixed group has wrong dimension");
    }
  }
  for (const auto& [g, _] : fixed) {
    if (g < 0 || g >= full.groups) {
      throw std::invalid_argument("restrict_field: group index out of range");
    }
  }

  const IndexShape sub{static_cast<int>(free_groups.size()), full.dims};
  auto merge = [full, fixed, free_groups](const Point& y) {
    std::vector<double> v(static_cast<std::size_t>(full.flat_size()), 0.0);
    for (const auto& [g, vals] : fixed) {
      for (int k = 0; k < full.dims; ++k) v[static_cast<std::size_t>(g) * full.dims + k] = vals[k];
    }
    for (std::size_t j = 0; j < free_groups.size(); ++j) {
      const int g = free_groups[j];
      for (int k = 0; k < full.dims; ++k) {
        v[static_cast<std::size_t>(g) * full.dims + k] = y.at(static_cast<int>(j), k);
      }
    }
    return Point(full, std::move(v));
  };

  ScalarField out;
  out.shape = sub;
  out.eval = [f, merge](const Point& y) { return f.eval(merge(y)); };
  out.smoothness = f.smoothness;
  return out;
}

}  // namespace mwcalc
