#include "mwcalc/gradient.hpp"

#include <cmath>
#include <stdexcept>

#include "mwcalc/increment.hpp"

namespace mwcalc {

namespace {

double nested_central_difference(const ScalarField& f, std::span<const int> pick,
                                 Point x, int group) {
  if (group == f.shape.groups) return f.eval(x);
  const int k = pick[group];
  const double c = x.at(group, k);
  const double h = 1e-4 * std::max(1.0, std::abs(c));
  std::vector<double> gvals(x.group(group).begin(), x.group(group).end());

  gvals[k] = c + h;
  const Point xp = x.with_group(group, gvals);
  gvals[k] = c - h;
  const Point xm = x.with_group(group, gvals);
  return (nested_central_difference(f, pick, xp, group + 1) -
          nested_central_difference(f, pick, xm, group + 1)) /
         (2.0 * h);
}

}  // namespace

double mixed_partial(const ScalarField& f, std::span<const int> pick, const Point& x) {
  if (static_cast<int>(pick.size()) != f.shape.groups) {
    throw std::invalid_argument("mixed_partial: one coordinate pick per group required");
  }
  for (int g = 0; g < f.shape.groups; ++g) {
    if (pick[g] < 0 || pick[g] >= f.shape.dims) {
      throw std::invalid_argument("mixed_partial: coordinate pick out of range");
    }
  }
  if (f.has_exact_partials()) return f.exact_partial(pick, x);
  if (f.shape.groups > 3) {
    throw std::invalid_argument(
        "mixed_partial: black-box differentiation refused for more than three "
        "groups; provide exact partials");
  }
  return nested_central_difference(f, pick, x, 0);
}

MultilinearForm n_gradient(const ScalarField& f, const Point& x) {
  std::vector<double> coeffs;
  coeffs.reserve(f.shape.selection_count());
  std::vector<int> pick(static_cast<std::size_t>(f.shape.groups), 0);
  do {
    coeffs.push_back(mixed_partial(f, pick, x));
  } while (next_selection(f.shape, pick));
  return MultilinearForm(f.shape, std::move(coeffs));
}

MultilinearForm gradient_increment(const ScalarField& f, const Box& tile,
                                   const TensorGridQuadrature& quad) {
  if (quad.points_per_axis < 2) {
    throw std::invalid_argument("gradient_increment: points_per_axis must be >= 2");
  }
  const IndexShape& shape = f.shape;
  const int L = shape.flat_size();
  const int n = quad.points_per_axis;

  double cell_volume = 1.0;
  std::vector<double> step(static_cast<std::size_t>(L));
  for (int l = 0; l < L; ++l) {
    step[l] = (tile.hi.flat(l) - tile.lo.flat(l)) / n;
    cell_volume *= step[l];
  }

  const std::size_t comps = shape.selection_count();
  std::vector<CompensatedSum> sums(comps);
  std::vector<int> node(static_cast<std::size_t>(L), 0);
  std::vector<double> coords(static_cast<std::size_t>(L));
  std::vector<int> pick(static_cast<std::size_t>(shape.groups), 0);
  for (;;) {
    for (int l = 0; l < L; ++l) {
      coords[l] = tile.lo.flat(l) + (node[l] + 0.5) * step[l];
    }
    const Point x(shape, coords);
    std::fill(pick.begin(), pick.end(), 0);
    std::size_t idx = 0;
    do {
      sums[idx++].add(mixed_partial(f, pick, x));
    } while (next_selection(shape, pick));

    int l = L - 1;
    while (l >= 0 && ++node[l] == n) node[l--] = 0;
    if (l < 0) break;
  }

  std::vector<double> coeffs(comps);
  for (std::size_t c = 0; c < comps; ++c) coeffs[c] = sums[c].value() * cell_volume;
  return MultilinearForm(shape, std::move(coeffs));
}

MultilinearForm gradient_increment(const ScalarField& f, const AffineIFS& ifs,
                                   const SelfSimilarQuadrature& quad) {
  if (!(f.shape == ifs.shape())) {
    throw std::invalid_argument("gradient_increment: field and system shapes differ");
  }
  const IndexShape& shape = f.shape;
  const std::size_t comps = shape.selection_count();
  std::vector<CompensatedSum> sums(comps);
  std::vector<int> pick(static_cast<std::size_t>(shape.groups), 0);

  const Point center = ifs.tile().center();
  const std::vector<ComposedMap> words = enumerate_words(ifs, quad.depth, quad.budget);
  for (const ComposedMap& w : words) {
    const Point rep = quad.representative == TileRepresentative::anchor
                          ? w.anchor
                          : w.apply(center);
    const double weight = w.volume_weight(shape.dims);
    std::fill(pick.begin(), pick.end(), 0);
    std::size_t idx = 0;
    do {
      sums[idx++].add(weight * mixed_partial(f, pick, rep));
    } while (next_selection(shape, pick));
  }

  std::vector<double> coeffs(comps);
  for (std::size_t c = 0; c < comps; ++c) {
    coeffs[c] = sums[c].value() * ifs.tile_volume();
  }
  return MultilinearForm(shape, std::move(coeffs));
}

namespace {

MultilinearForm scale_form(const MultilinearForm& form, double t) {
  std::vector<double> c(form.coeffs().begin(), form.coeffs().end());
  for (double& x : c) x *= t;
  return MultilinearForm(form.shape(), std::move(c));
}

}  // namespace

MultilinearForm average_gradient(const ScalarField& f, const Box& tile,
                                 const TensorGridQuadrature& quad) {
  const double vol = tile.volume();
  if (!(vol > 0.0)) throw std::invalid_argument("average_gradient: zero-measure tile");
  return scale_form(gradient_increment(f, tile, quad), 1.0 / vol);
}

MultilinearForm average_gradient(const ScalarField& f, const AffineIFS& ifs,
                                 const SelfSimilarQuadrature& quad) {
  const double vol = ifs.tile_volume();
  if (!(vol > 0.0)) throw std::invalid_argument("average_gradient: zero-measure tile");
  return scale_form(gradient_increment(f, ifs, quad), 1.0 / vol);
}

MultilinearForm average_gradient(const ScalarField& f, const AffineIFS& ifs,
                                 const QuadratureSpec& quad) {
  if (const auto* tg = std::get_if<TensorGridQuadrature>(&quad)) {
    return average_gradient(f, ifs.tile(), *tg);
  }
  return average_gradient(f, ifs, std::get<SelfSimilarQuadrature>(quad));
}

ScalarField limit_operator(const ScalarField& f, const AffineIFS& ifs,
                           const QuadratureSpec& quad) {
  return make_multilinear_field(average_gradient(f, ifs, quad));
}

VectorField gradient_field(const ScalarField& f) {
  return [f](const Point& x) {
    const MultilinearForm g = n_gradient(f, x);
    return std::vector<double>(g.coeffs().begin(), g.coeffs().end());
  };
}

double ModulusProfile::at(double d) const {
  for (std::size_t i = 0; i < delta.size(); ++i) {
    if (delta[i] >= d) return omega[i];
  }
  return omega.empty() ? 0.0 : omega.back();
}

ModulusProfile modulus_profile(const VectorField& g, const Box& tile,
                               double delta_max, int grid_steps, int samples,
                               std::uint64_t seed) {
  if (!(delta_max > 0.0)) throw std::invalid_argument("modulus_profile: delta_max > 0");
  if (grid_steps < 1) throw std::invalid_argument("modulus_profile: grid_steps >= 1");

  const IndexShape& shape = tile.shape();
  const int L = shape.flat_size();
  Rng rng(seed);

  ModulusProfile prof;
  prof.delta.resize(static_cast<std::size_t>(grid_steps));
  prof.omega.assign(static_cast<std::size_t>(grid_steps), 0.0);
  for (int i = 0; i < grid_steps; ++i) {
    prof.delta[i] = delta_max * (i + 1) / grid_steps;
  }

  for (int t = 0; t < samples; ++t) {
    std::vector<double> v(static_cast<std::size_t>(L));
    for (int l = 0; l < L; ++l) v[l] = rng.uniform(tile.lo.flat(l), tile.hi.flat(l));
    const Point x(shape, v);

    // Random direction, random distance below delta_max.
    std::vector<double> dir(static_cast<std::size_t>(L));
    double nrm = 0.0;
    for (int l = 0; l < L; ++l) {
      dir[l] = rng.normal();
      nrm += dir[l] * dir[l];
    }
    nrm = std::sqrt(nrm);
    if (nrm == 0.0) continue;
    const double dist = delta_max * rng.uniform();
    std::vector<double> w(static_cast<std::size_t>(L));
    for (int l = 0; l < L; ++l) w[l] = v[l] + dir[l] / nrm * dist;
    const Point y(shape, w);

    const std::vector<double> gx = g(x);
    const std::vector<double> gy = g(y);
    double diff_sq = 0.0;
    for (std::size_t c = 0; c < gx.size(); ++c) {
      diff_sq += (gx[c] - gy[c]) * (gx[c] - gy[c]);
    }
    const double diff = std::sqrt(diff_sq);
    const int bucket =
        std::min(grid_steps - 1,
                 static_cast<int>(std::floor(dist / delta_max * grid_steps)));
    prof.omega[bucket] = std::max(prof.omega[bucket], diff);
  }
  for (int i = 1; i < grid_steps; ++i) {
    prof.omega[i] = std::max(prof.omega[i], prof.omega[i - 1]);
  }
  return prof;
}

double modulus_of_continuity(const VectorField& g, const Box& tile, double delta,
                             int samples, std::uint64_t seed) {
  return modulus_profile(g, tile, delta, 16, samples, seed).omega.back();
}

double verify_ftc_fact(const ScalarField& f, const Point& a, const Point& b,
                       const TensorGridQuadrature& quad) {
  if (f.shape.dims != 1) {
    throw std::invalid_argument("verify_ftc_fact: stated for single-coordinate groups only");
  }
  if (!componentwise_leq(a, b)) {
    throw std::invalid_argument("verify_ftc_fact: requires a <= b componentwise");
  }
  const MultilinearForm integral = gradient_increment(f, make_box(a, b), quad);
  return std::abs(integral.coeff_at(0) - increment(f, a, b));
}

}  // namespace mwcalc
