#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mwcalc/geometry.hpp"

namespace mwcalc {

/// A scalar function on points, with optional exact mixed-partial information.
///
/// `exact_partial(pick, x)` is the mixed partial taking exactly one first
/// derivative per group, at the coordinate pick[n] of group n. That is the
/// only differentiation pattern the operator calculus ever needs, so no
/// richer derivative interface is exposed.
struct ScalarField {
  enum class Smoothness { black_box, cn, analytic };

  IndexShape shape;
  std::function<double(const Point&)> eval;
  std::function<double(std::span<const int>, const Point&)> exact_partial;
  /// Lipschitz constant of x -> (all mixed partials), as a map into R^(s^r)
  /// with Euclidean norms on both sides, when known analytically.
  std::optional<double> gradient_lipschitz;
  Smoothness smoothness = Smoothness::black_box;

  double operator()(const Point& x) const { return eval(x); }
  bool has_exact_partials() const { return static_cast<bool>(exact_partial); }
};

/// x -> form.eval(x). Exact partials: the mixed partial for pick k is the
/// coefficient at k, independent of x.
ScalarField make_multilinear_field(const MultilinearForm& form);

/// One monomial: coef * prod_l x_l^exponents[l] over all flat coordinates.
struct Monomial {
  double coef = 0.0;
  std::vector<int> exponents;  // one entry per flat coordinate, >= 0
};

class Polynomial {
public:
  Polynomial(IndexShape shape, std::vector<Monomial> terms);

  const IndexShape& shape() const { return shape_; }
  const std::vector<Monomial>& terms() const { return terms_; }

  double eval(const Point& x) const;
  /// Partial derivative with respect to one flat coordinate.
  Polynomial derivative(int flat_coord) const;
  /// Mixed partial: one derivative per group at the picked coordinate.
  Polynomial mixed_derivative(std::span<const int> pick) const;
  /// Coefficient bound: sum_j |coef_j| * prod_l max(|lo_l|,|hi_l|)^e_l.
  /// Crude but safe as a sup bound over the box.
  double sup_bound(const Box& box) const;

private:
  IndexShape shape_;
  std::vector<Monomial> terms_;
};

ScalarField make_polynomial_field(const Polynomial& poly);

/// Upper bound for the Lipschitz constant of x -> (mixed partials of poly)
/// over the box, via coefficient bounds on all second-level partials.
double polynomial_gradient_lipschitz(const Polynomial& poly, const Box& box);

/// Product of sin(freq_l * x_l) over coordinates with freq_l != 0.
ScalarField make_product_sine_field(IndexShape shape, std::span<const double> freqs,
                                    const Box* lipschitz_box = nullptr);

/// Field over the groups not present in `fixed`; evaluation merges the fixed
/// group values back in. Exact partials are not carried over.
ScalarField restrict_field(const ScalarField& f,
                           const std::map<int, std::vector<double>>& fixed);

}  // namespace mwcalc
