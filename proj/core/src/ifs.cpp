#include "mwcalc/ifs.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace mwcalc {

AffineIFS::AffineIFS(IndexShape shape, std::vector<AffineMap> maps, Box tile,
                     std::optional<double> tile_volume)
    : shape_(shape), maps_(std::move(maps)), tile_(std::move(tile)) {
  require_valid(shape_);
  if (maps_.size() < 2) {
    throw std::invalid_argument("AffineIFS: at least two maps required");
  }
  for (const AffineMap& m : maps_) {
    if (static_cast<int>(m.alpha.size()) != shape_.groups) {
      throw std::invalid_argument("AffineIFS: one contraction factor per group required");
    }
    for (double a : m.alpha) {
      if (!(a > 0.0 && a < 1.0)) {
        throw std::invalid_argument("AffineIFS: contraction factors must lie in (0,1)");
      }
    }
    if (!(m.shift.shape() == shape_)) {
      throw std::invalid_argument("AffineIFS: shift has wrong shape");
    }
  }
  if (!(tile_.shape() == shape_)) {
    throw std::invalid_argument("AffineIFS: tile has wrong shape");
  }
  tile_volume_ = tile_volume.value_or(tile_.volume());
  if (!(tile_volume_ > 0.0)) {
    throw std::invalid_argument("AffineIFS: tile volume must be positive");
  }
}

AffineIFS AffineIFS::padic(IndexShape shape, int base) {
  require_valid(shape);
  if (base < 2) throw std::invalid_argument("AffineIFS::padic: base must be >= 2");
  const int L = shape.flat_size();
  std::uint64_t count = 1;
  for (int l = 0; l < L; ++l) {
    count *= static_cast<std::uint64_t>(base);
    if (count > (1u << 24)) {
      throw std::invalid_argument("AffineIFS::padic: base^(r*s) too large");
    }
  }
  std::vector<AffineMap> maps;
  maps.reserve(count);
  std::vector<int> digits(static_cast<std::size_t>(L), 0);
  const double inv = 1.0 / static_cast<double>(base);
  for (std::uint64_t w = 0; w < count; ++w) {
    std::vector<double> shift(static_cast<std::size_t>(L));
    for (int l = 0; l < L; ++l) shift[l] = digits[l] * inv;
    AffineMap m;
    m.alpha.assign(static_cast<std::size_t>(shape.groups), inv);
    m.shift = Point(shape, std::move(shift));
    maps.push_back(std::move(m));
    for (int l = L - 1; l >= 0; --l) {
      if (++digits[l] < base) break;
      digits[l] = 0;
    }
  }
  Box tile = make_box(Point::zeros(shape), Point::constant(shape, 1.0));
  AffineIFS out(shape, std::move(maps), std::move(tile));
  out.padic_base_ = base;
  return out;
}

double AffineIFS::contraction_sup() const {
  double q = 0.0;
  for (const AffineMap& m : maps_) {
    for (double a : m.alpha) q = std::max(q, a);
  }
  return q;
}

double AffineIFS::alpha_product(std::size_t i) const {
  double p = 1.0;
  for (double a : maps_[i].alpha) p *= a;
  return p;
}

double AffineIFS::volume_weight(std::size_t i) const {
  double p = 1.0;
  for (double a : maps_[i].alpha) {
    for (int k = 0; k < shape_.dims; ++k) p *= a;
  }
  return p;
}

double AffineIFS::alpha_product_sum() const {
  CompensatedSum s;
  for (std::size_t i = 0; i < maps_.size(); ++i) s.add(alpha_product(i));
  return s.value();
}

double AffineIFS::volume_weight_sum() const {
  CompensatedSum s;
  for (std::size_t i = 0; i < maps_.size(); ++i) s.add(volume_weight(i));
  return s.value();
}

Point AffineIFS::apply_map(std::size_t i, const Point& x) const {
  const AffineMap& m = maps_[i];
  std::vector<double> v(static_cast<std::size_t>(shape_.flat_size()));
  for (int g = 0; g < shape_.groups; ++g) {
    for (int k = 0; k < shape_.dims; ++k) {
      const int l = g * shape_.dims + k;
      v[l] = m.alpha[g] * x.flat(l) + m.shift.flat(l);
    }
  }
  return Point(shape_, std::move(v));
}

Point ComposedMap::apply(const Point& x) const {
  const IndexShape& shape = anchor.shape();
  std::vector<double> v(static_cast<std::size_t>(shape.flat_size()));
  for (int g = 0; g < shape.groups; ++g) {
    for (int k = 0; k < shape.dims; ++k) {
      const int l = g * shape.dims + k;
      v[l] = alpha[g] * x.flat(l) + anchor.flat(l);
    }
  }
  return Point(shape, std::move(v));
}

ComposedMap compose(const AffineIFS& ifs, std::span<const std::size_t> word) {
  const IndexShape& shape = ifs.shape();
  ComposedMap out;
  out.word.assign(word.begin(), word.end());
  out.alpha.assign(static_cast<std::size_t>(shape.groups), 1.0);
  out.anchor = Point::zeros(shape);

  // Left-fold: prefix o gamma^{w_j}. The prefix alpha scales the next shift.
  std::vector<double> anchor(static_cast<std::size_t>(shape.flat_size()), 0.0);
  for (std::size_t j = 0; j < word.size(); ++j) {
    const std::size_t i = word[j];
    if (i >= ifs.map_count()) {
      throw std::invalid_argument("compose: word contains an invalid map index");
    }
    const AffineMap& m = ifs.map(i);
    for (int g = 0; g < shape.groups; ++g) {
      for (int k = 0; k < shape.dims; ++k) {
        const int l = g * shape.dims + k;
        anchor[l] = out.alpha[g] * m.shift.flat(l) + anchor[l];
      }
    }
    for (int g = 0; g < shape.groups; ++g) out.alpha[g] *= m.alpha[g];
  }
  out.anchor = Point(shape, std::move(anchor));
  return out;
}

std::uint64_t word_count(const AffineIFS& ifs, int depth) {
  std::uint64_t n = 1;
  for (int j = 0; j < depth; ++j) {
    if (n > (std::uint64_t{1} << 62) / ifs.map_count()) {
      return std::uint64_t(-1);
    }
    n *= ifs.map_count();
  }
  return n;
}

std::vector<ComposedMap> enumerate_words(const AffineIFS& ifs, int depth,
                                         std::uint64_t budget) {
  if (depth < 0) throw std::invalid_argument("enumerate_words: depth must be >= 0");
  const std::uint64_t n = word_count(ifs, depth);
  if (n > budget) {
    throw BudgetExceeded("enumerate_words: |I|^p = " + std::to_string(n) +
                         " exceeds budget " + std::to_string(budget));
  }
  std::vector<ComposedMap> out;
  out.reserve(n);
  std::vector<std::size_t> word(static_cast<std::size_t>(depth), 0);
  for (std::uint64_t w = 0; w < n; ++w) {
    out.push_back(compose(ifs, word));
    for (int j = depth - 1; j >= 0; --j) {
      if (++word[j] < ifs.map_count()) break;
      word[j] = 0;
    }
  }
  return out;
}

namespace {

// Quantized key for the 1e-12 absolute dedup tolerance.
std::vector<std::int64_t> dedup_key(const Point& p) {
  std::vector<std::int64_t> key(p.flat_values().size());
  for (std::size_t l = 0; l < key.size(); ++l) {
    key[l] = llround(p.flat(l) * 1e12);
  }
  return key;
}

}  // namespace

std::vector<Point> minimal_admissible_points(const AffineIFS& ifs, int depth,
                                             std::size_t budget) {
  if (depth < 0) throw std::invalid_argument("minimal_admissible_points: depth >= 0");
  std::map<std::vector<std::int64_t>, Point> set;
  const Point zero = Point::zeros(ifs.shape());
  set.emplace(dedup_key(zero), zero);

  std::vector<Point> frontier{zero};
  for (int k = 0; k < depth; ++k) {
    std::vector<Point> next;
    for (const Point& x : frontier) {
      for (std::size_t i = 0; i < ifs.map_count(); ++i) {
        const Point gx = ifs.apply_map(i, x);
        const Point& g0 = ifs.anchor(i);
        const std::uint32_t corners = ifs.shape().corner_count();
        for (CornerMask m = 0; m < corners; ++m) {
          Point c = select_corner(g0, gx, m);
          auto key = dedup_key(c);
          if (set.find(key) == set.end()) {
            if (set.size() >= budget) {
              throw BudgetExceeded("minimal_admissible_points: point budget exceeded");
            }
            set.emplace(std::move(key), c);
            next.push_back(std::move(c));
          }
        }
      }
    }
    frontier = std::move(next);
  }

  std::vector<Point> out;
  out.reserve(set.size());
  for (auto& [_, p] : set) out.push_back(p);
  return out;
}

double cell_diameter_bound(const AffineIFS& ifs, int p) {
  if (p < 0) throw std::invalid_argument("cell_diameter_bound: p must be >= 0");
  return std::pow(ifs.contraction_sup(), p) * ifs.tile_diameter();
}

namespace {

// Exact overlap volume of the images of the tile box under two affine maps.
double image_box_overlap(const AffineIFS& ifs, std::size_t i, std::size_t j) {
  const Box& t = ifs.tile();
  double vol = 1.0;
  const IndexShape& shape = ifs.shape();
  for (int g = 0; g < shape.groups; ++g) {
    for (int k = 0; k < shape.dims; ++k) {
      const int l = g * shape.dims + k;
      const double lo_i = ifs.map(i).alpha[g] * t.lo.flat(l) + ifs.map(i).shift.flat(l);
      const double hi_i = ifs.map(i).alpha[g] * t.hi.flat(l) + ifs.map(i).shift.flat(l);
      const double lo_j = ifs.map(j).alpha[g] * t.lo.flat(l) + ifs.map(j).shift.flat(l);
      const double hi_j = ifs.map(j).alpha[g] * t.hi.flat(l) + ifs.map(j).shift.flat(l);
      const double w = std::min(hi_i, hi_j) - std::max(lo_i, lo_j);
      if (w <= 0.0) return 0.0;
      vol *= w;
    }
  }
  return vol;
}

}  // namespace

HypothesisReport validate_hypotheses(const AffineIFS& ifs, int samples,
                                     std::uint64_t seed) {
  HypothesisReport rep;
  const double tol = 1e-12;

  rep.contraction_sup = ifs.contraction_sup();
  rep.h1_contractive = rep.contraction_sup < 1.0;

  rep.volume_weight_sum = ifs.volume_weight_sum();
  rep.volume_weight_deviation = std::abs(rep.volume_weight_sum - 1.0);
  rep.h2_weights = rep.volume_weight_deviation <= tol;

  rep.alpha_product_sum = ifs.alpha_product_sum();
  rep.multilinear_calculus = std::abs(rep.alpha_product_sum - 1.0) <= tol;

  // Pairwise overlap of tile images (exact for box tiles).
  rep.max_pairwise_overlap = 0.0;
  for (std::size_t i = 0; i < ifs.map_count(); ++i) {
    for (std::size_t j = i + 1; j < ifs.map_count(); ++j) {
      rep.max_pairwise_overlap =
          std::max(rep.max_pairwise_overlap, image_box_overlap(ifs, i, j));
    }
  }
  rep.h2_disjoint = rep.max_pairwise_overlap <= 1e-9 * ifs.tile_volume();

  // Coverage: sampled points of the tile must land in some image.
  const IndexShape& shape = ifs.shape();
  Rng rng(seed);
  int missed = 0;
  for (int t = 0; t < samples; ++t) {
    std::vector<double> v(static_cast<std::size_t>(shape.flat_size()));
    for (int l = 0; l < shape.flat_size(); ++l) {
      v[l] = rng.uniform(ifs.tile().lo.flat(l), ifs.tile().hi.flat(l));
    }
    const Point x(shape, std::move(v));
    bool hit = false;
    for (std::size_t i = 0; i < ifs.map_count() && !hit; ++i) {
      hit = true;
      for (int g = 0; g < shape.groups && hit; ++g) {
        for (int k = 0; k < shape.dims && hit; ++k) {
          const int l = g * shape.dims + k;
          const double lo = ifs.map(i).alpha[g] * ifs.tile().lo.flat(l) +
                            ifs.map(i).shift.flat(l);
          const double hi = ifs.map(i).alpha[g] * ifs.tile().hi.flat(l) +
                            ifs.map(i).shift.flat(l);
          hit = x.flat(l) >= lo && x.flat(l) <= hi;
        }
      }
    }
    if (!hit) ++missed;
  }
  rep.coverage_defect = static_cast<double>(missed) / std::max(1, samples);
  rep.h2_cover = rep.coverage_defect <= 0.002;

  // The tile must sit in the nonnegative orthant and contain every box
  // Q(0,x) for x in the tile; for a box tile that means lo == 0.
  rep.h3_nonnegative = true;
  rep.h3_lower_closed = true;
  for (int l = 0; l < shape.flat_size(); ++l) {
    if (ifs.tile().lo.flat(l) < 0.0 || ifs.tile().hi.flat(l) < 0.0) {
      rep.h3_nonnegative = false;
    }
    if (std::abs(ifs.tile().lo.flat(l)) > tol) rep.h3_lower_closed = false;
  }

  return rep;
}

}  // namespace mwcalc
