#pragma once

#include <functional>
#include <variant>

#include "mwcalc/fields.hpp"
#include "mwcalc/ifs.hpp"

namespace mwcalc {

/// Mixed partial taking one first derivative per group, at coordinate
/// pick[g] of group g. Uses the exact callback when the field has one;
/// otherwise nested central differences with per-coordinate step
/// h = 1e-4 * max(1, |coordinate|). Black-box differentiation is refused
/// for more than three groups (the nested-difference noise blows up as
/// h^-r in double precision).
double mixed_partial(const ScalarField& f, std::span<const int> pick, const Point& x);

/// All dims^groups mixed partials assembled in canonical selection order.
MultilinearForm n_gradient(const ScalarField& f, const Point& x);

struct TensorGridQuadrature {
  int points_per_axis = 64;  // midpoint rule per coordinate axis
};

enum class TileRepresentative { anchor, centroid };

struct SelfSimilarQuadrature {
  int depth = 6;
  TileRepresentative representative = TileRepresentative::anchor;
  std::uint64_t budget = 1u << 22;
};

using QuadratureSpec = std::variant<TensorGridQuadrature, SelfSimilarQuadrature>;

/// Componentwise integral of the mixed partials over a box tile.
MultilinearForm gradient_increment(const ScalarField& f, const Box& tile,
                                   const TensorGridQuadrature& quad);

/// Same integral over the attractor of the system: the depth-p cells carry
/// volume weights summing to one, and each cell is collapsed to its anchor
/// or centroid.
MultilinearForm gradient_increment(const ScalarField& f, const AffineIFS& ifs,
                                   const SelfSimilarQuadrature& quad);

MultilinearForm average_gradient(const ScalarField& f, const Box& tile,
                                 const TensorGridQuadrature& quad);
MultilinearForm average_gradient(const ScalarField& f, const AffineIFS& ifs,
                                 const SelfSimilarQuadrature& quad);
MultilinearForm average_gradient(const ScalarField& f, const AffineIFS& ifs,
                                 const QuadratureSpec& quad);

/// The multilinear field whose coefficients are the average mixed partials
/// over the tile.
ScalarField limit_operator(const ScalarField& f, const AffineIFS& ifs,
                           const QuadratureSpec& quad);

using VectorField = std::function<std::vector<double>(const Point&)>;

/// x |-> all mixed partials of f at x, as a flat vector.
VectorField gradient_field(const ScalarField& f);

/// Empirical modulus of continuity of g over pairs (x in T, y within delta
/// of x), cumulative-maxed over a delta grid so the profile is monotone by
/// construction.
struct ModulusProfile {
  std::vector<double> delta;
  std::vector<double> omega;
  /// Value at the smallest grid delta >= d (the last entry beyond range).
  double at(double d) const;
};

ModulusProfile modulus_profile(const VectorField& g, const Box& tile,
                               double delta_max, int grid_steps, int samples,
                               std::uint64_t seed);

double modulus_of_continuity(const VectorField& g, const Box& tile, double delta,
                             int samples, std::uint64_t seed);

/// |integral of the mixed partial over P(a,b) minus the increment|; the two
/// agree for smooth fields (single-coordinate groups only).
double verify_ftc_fact(const ScalarField& f, const Point& a, const Point& b,
                       const TensorGridQuadrature& quad);

}  // namespace mwcalc
