#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mwcalc/geometry.hpp"

namespace mwcalc {

/// One affine map: x |-> (alpha_n * x_n + shift_n)_n, with a scalar
/// contraction factor per group.
struct AffineMap {
  std::vector<double> alpha;  // one entry per group, each in (0,1)
  Point shift;                // the image of 0
};

/// Finitely many contracting affine maps together with the reference tile.
///
/// Two weights matter and they differ once dims > 1:
///  - volume_weight(i) = prod_n alpha_n^dims, the fraction of the tile's
///    Lebesgue measure covered by map i; these sum to 1 for a tiling system
///    and drive quadrature and measure bookkeeping;
///  - alpha_product(i) = prod_n alpha_n, the factor by which the operator
///    scales a multilinear form through map i. The fixed-point and
///    convergence theory needs these to sum to 1, which for a tiling
///    system can only happen when dims == 1.
class AffineIFS {
public:
  AffineIFS(IndexShape shape, std::vector<AffineMap> maps, Box tile,
            std::optional<double> tile_volume = std::nullopt);

  /// Maps x |-> ((x_l + digit_l)/base)_l over all digit vectors; tile is the
  /// unit cube. All hypotheses hold by construction.
  static AffineIFS padic(IndexShape shape, int base);

  const IndexShape& shape() const { return shape_; }
  std::size_t map_count() const { return maps_.size(); }
  const AffineMap& map(std::size_t i) const { return maps_[i]; }
  const std::vector<AffineMap>& maps() const { return maps_; }
  std::optional<int> padic_base() const { return padic_base_; }

  const Box& tile() const { return tile_; }
  double tile_volume() const { return tile_volume_; }
  double tile_diameter() const { return tile_.diameter(); }

  /// sup over maps and groups of the contraction factors (q).
  double contraction_sup() const;

  double alpha_product(std::size_t i) const;
  double volume_weight(std::size_t i) const;
  double alpha_product_sum() const;
  double volume_weight_sum() const;

  Point apply_map(std::size_t i, const Point& x) const;
  const Point& anchor(std::size_t i) const { return maps_[i].shift; }

private:
  IndexShape shape_;
  std::vector<AffineMap> maps_;
  Box tile_;
  double tile_volume_;
  std::optional<int> padic_base_;
};

/// A composed map gamma^{w_1} o ... o gamma^{w_p} reduced to its own affine
/// data: per-group contraction products and the anchor (the image of 0).
struct ComposedMap {
  std::vector<std::size_t> word;
  std::vector<double> alpha;  // per-group products
  Point anchor;

  double alpha_product() const {
    double p = 1.0;
    for (double a : alpha) p *= a;
    return p;
  }
  double volume_weight(int dims) const {
    double p = 1.0;
    for (double a : alpha) {
      for (int k = 0; k < dims; ++k) p *= a;
    }
    return p;
  }
  Point apply(const Point& x) const;
};

/// The empty word composes to the identity (alpha = 1, anchor = 0).
ComposedMap compose(const AffineIFS& ifs, std::span<const std::size_t> word);

/// All |I|^depth words in lexicographic order. Throws BudgetExceeded (naming
/// the word count) when |I|^depth > budget.
std::vector<ComposedMap> enumerate_words(const AffineIFS& ifs, int depth,
                                         std::uint64_t budget = 1u << 22);

std::uint64_t word_count(const AffineIFS& ifs, int depth);

/// Depth-k stage of the minimal admissible set: start from {0} and close
/// under corner sets of (gamma^i(0), gamma^i(x)), deduplicating at 1e-12.
std::vector<Point> minimal_admissible_points(const AffineIFS& ifs, int depth,
                                             std::size_t budget = 1u << 22);

/// q^p * diam(tile): an upper bound for the diameter of any depth-p cell.
double cell_diameter_bound(const AffineIFS& ifs, int p);

struct HypothesisReport {
  double contraction_sup = 0.0;
  bool h1_contractive = false;

  double volume_weight_sum = 0.0;
  double volume_weight_deviation = 0.0;
  bool h2_weights = false;

  double max_pairwise_overlap = 0.0;  // volume of the largest tile-image intersection
  bool h2_disjoint = false;

  double coverage_defect = 0.0;  // sampled fraction of the tile missed by all images
  bool h2_cover = false;

  bool h3_nonnegative = false;
  bool h3_lower_closed = false;

  // Informative: sum of plain alpha products. The multilinear fixed-point
  // calculus applies only when this is 1; for tiling systems with dims > 1
  // it cannot be.
  double alpha_product_sum = 0.0;
  bool multilinear_calculus = false;

  bool all_pass() const {
    return h1_contractive && h2_weights && h2_disjoint && h2_cover &&
           h3_nonnegative && h3_lower_closed;
  }
};

HypothesisReport validate_hypotheses(const AffineIFS& ifs, int samples = 4000,
                                     std::uint64_t seed = 20240901);

}  // namespace mwcalc
