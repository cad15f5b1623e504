#pragma once

#include <cstdint>

#include "mwcalc/fields.hpp"

namespace mwcalc {

/// Multidimensional increment: the alternating sum of f over the 2^r corners
/// mixing x and y group-wise. For a single group this is f(y) - f(x).
double increment(const ScalarField& f, const Point& x, const Point& y);

/// Same quantity through the inductive route: the one-group-lower increment
/// of f with group m frozen at y_m, minus the one with group m frozen at x_m.
/// Requires at least two groups.
double increment_inductive(const ScalarField& f, const Point& x, const Point& y,
                           int group);

/// |increment(f,x,y)| / prod_n |x_n - y_n|. Throws std::domain_error when a
/// group of x and y coincides (the ratio is 0/0 there); callers must filter
/// such pairs out.
double lipschitz_ratio(const ScalarField& f, const Point& x, const Point& y);

/// Empirical sup of lipschitz_ratio over sampled nondegenerate pairs in the
/// box. A lower bound for the true constant.
double estimate_ndim_lipschitz_constant(const ScalarField& f, const Box& box,
                                        int samples, std::uint64_t seed);

}  // namespace mwcalc
