#include "qifs/classical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qifs {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

Eigen::Matrix3d axis_rotation(const Point& axis, double angle) {
  return Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

Point uniform_point(SpaceKind kind, Rng& rng) {
  switch (kind) {
    case SpaceKind::Interval:
      return Point(rng.uniform(), 0, 0);
    case SpaceKind::Square:
      return Point(rng.uniform(), rng.uniform(), 0);
    case SpaceKind::Sphere: {
      const double z = 2.0 * rng.uniform() - 1.0;
      const double phi = kTwoPi * rng.uniform();
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      return Point(r * std::cos(phi), r * std::sin(phi), z);
    }
  }
  return Point::Zero();
}

Point perturb_in_space(SpaceKind kind, const Point& x, double delta, Rng& rng) {
  Point d(rng.uniform() - 0.5, rng.uniform() - 0.5, rng.uniform() - 0.5);
  Point y = x + delta * d;
  switch (kind) {
    case SpaceKind::Interval:
      return Point(clamp01(y[0]), 0, 0);
    case SpaceKind::Square:
      return Point(clamp01(y[0]), clamp01(y[1]), 0);
    case SpaceKind::Sphere:
      return y.normalized();
  }
  return y;
}

}  // namespace

double space_distance(SpaceKind kind, const Point& a, const Point& b) {
  switch (kind) {
    case SpaceKind::Interval:
      return std::abs(a[0] - b[0]);
    case SpaceKind::Square:
      return std::hypot(a[0] - b[0], a[1] - b[1]);
    case SpaceKind::Sphere:
      return std::atan2(a.cross(b).norm(), a.dot(b));
  }
  return 0.0;
}

bool space_contains(SpaceKind kind, const Point& p, double eps) {
  switch (kind) {
    case SpaceKind::Interval:
      return p[0] >= -eps && p[0] <= 1.0 + eps;
    case SpaceKind::Square:
      return p[0] >= -eps && p[0] <= 1.0 + eps && p[1] >= -eps && p[1] <= 1.0 + eps;
    case SpaceKind::Sphere:
      return std::abs(p.norm() - 1.0) <= eps;
  }
  return false;
}

Point sphere_point(double theta, double phi) {
  return Point(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
               std::cos(theta));
}

Point apply_map(const ClassicalMap& f, const Point& x) {
  return std::visit(
      [&x](const auto& m) -> Point {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Affine1D>) {
          return Point(m.a * x[0] + m.b, 0, 0);
        } else if constexpr (std::is_same_v<T, Affine2D>) {
          Eigen::Vector2d y = m.m * Eigen::Vector2d(x[0], x[1]) + m.c;
          return Point(y[0], y[1], 0);
        } else if constexpr (std::is_same_v<T, SphereRotation>) {
          return axis_rotation(m.axis, m.angle) * x;
        } else if constexpr (std::is_same_v<T, Tent>) {
          const double v = x[0] < 0.5 ? 2.0 * x[0] : 2.0 * (1.0 - x[0]);
          return Point(v, 0, 0);
        } else if constexpr (std::is_same_v<T, Bernoulli>) {
          const double v = x[0] < 0.5 ? 2.0 * x[0] : 2.0 * x[0] - 1.0;
          return Point(v, 0, 0);
        } else {  // KickedTopClassical
          Point y = axis_rotation(Point::UnitX(), m.alpha) * x;
          return axis_rotation(Point::UnitZ(), m.beta * y[2]) * y;
        }
      },
      f);
}

bool map_is_invertible_1d(const ClassicalMap& f) {
  if (const auto* a = std::get_if<Affine1D>(&f)) return std::abs(a->a) > 0.0;
  return false;
}

double eval_prob(const ProbabilityFunction& p, const Point& x) {
  return std::visit(
      [&x](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, ConstantProb>) {
          return f.value;
        } else if constexpr (std::is_same_v<T, CoordinateProb>) {
          return x[0];
        } else if constexpr (std::is_same_v<T, OneMinusCoordinateProb>) {
          return 1.0 - x[0];
        } else if constexpr (std::is_same_v<T, LatitudePlusProb>) {
          return 0.5 * (1.0 + x[2]);  // z = cos(theta) on the unit sphere
        } else {                      // LatitudeMinusProb
          return 0.5 * (1.0 - x[2]);
        }
      },
      p);
}

void ClassicalIFS::validate(int samples, std::uint64_t seed) const {
  if (maps.empty() || maps.size() != probs.size())
    throw std::invalid_argument("ClassicalIFS: maps/probs size mismatch");
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    const Point x = uniform_point(space.kind, rng);
    double sum = 0.0;
    for (const auto& p : probs) {
      const double v = eval_prob(p, x);
      if (v < -1e-12 || v > 1.0 + 1e-12)
        throw std::invalid_argument("ClassicalIFS: probability outside [0,1]");
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw std::invalid_argument("ClassicalIFS: probabilities do not sum to 1");
    for (const auto& f : maps) {
      if (!space_contains(space.kind, apply_map(f, x)))
        throw std::invalid_argument("ClassicalIFS: map image leaves the space");
    }
  }
}

int cell_index(SpaceKind kind, int grid, const Point& p) {
  const auto axis = [grid](double v) {
    int i = static_cast<int>(std::floor(v * grid));
    return std::clamp(i, 0, grid - 1);
  };
  switch (kind) {
    case SpaceKind::Interval:
      return axis(p[0]);
    case SpaceKind::Square:
      return axis(p[0]) * grid + axis(p[1]);
    case SpaceKind::Sphere: {
      const double theta = std::acos(std::clamp(p[2], -1.0, 1.0));
      double phi = std::atan2(p[1], p[0]);
      if (phi < 0) phi += kTwoPi;
      const int it = std::clamp(static_cast<int>(theta / M_PI * grid), 0, grid - 1);
      const int ip = std::clamp(static_cast<int>(phi / kTwoPi * grid), 0, grid - 1);
      return it * grid + ip;
    }
  }
  return 0;
}

Point cell_center(SpaceKind kind, int grid, int index) {
  switch (kind) {
    case SpaceKind::Interval:
      return Point((index + 0.5) / grid, 0, 0);
    case SpaceKind::Square:
      return Point((index / grid + 0.5) / grid, (index % grid + 0.5) / grid, 0);
    case SpaceKind::Sphere: {
      const double theta = (index / grid + 0.5) * M_PI / grid;
      const double phi = (index % grid + 0.5) * kTwoPi / grid;
      return sphere_point(theta, phi);
    }
  }
  return Point::Zero();
}

static int n_cells_for(SpaceKind kind, int grid) {
  return kind == SpaceKind::Interval ? grid : grid * grid;
}

EmpiricalMeasure EmpiricalMeasure::uniform(SpaceKind kind, int grid) {
  EmpiricalMeasure m;
  m.space = kind;
  m.grid = grid;
  const int n = n_cells_for(kind, grid);
  m.weights = Eigen::VectorXd::Constant(n, 1.0 / n);
  return m;
}

EmpiricalMeasure EmpiricalMeasure::point_mass(SpaceKind kind, int grid,
                                              const Point& x) {
  EmpiricalMeasure m;
  m.space = kind;
  m.grid = grid;
  m.weights = Eigen::VectorXd::Zero(n_cells_for(kind, grid));
  m.weights[cell_index(kind, grid, x)] = 1.0;
  return m;
}

EmpiricalMeasure EmpiricalMeasure::lebesgue(SpaceKind kind, int grid) {
  if (kind != SpaceKind::Sphere) return uniform(kind, grid);
  EmpiricalMeasure m;
  m.space = kind;
  m.grid = grid;
  m.weights = Eigen::VectorXd::Zero(grid * grid);
  for (int it = 0; it < grid; ++it) {
    const double band =
        std::cos(it * M_PI / grid) - std::cos((it + 1) * M_PI / grid);
    for (int ip = 0; ip < grid; ++ip) m.weights[it * grid + ip] = band / (2.0 * grid);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Chaos game

namespace {

struct StreamResult {
  std::vector<std::uint64_t> counts;
  std::vector<Point> sample;
};

StreamResult run_stream(const ClassicalIFS& ifs, const Point& x0,
                        std::uint64_t quota, std::uint64_t seed,
                        std::uint64_t stream_index, const ChaosGameOptions& opt,
                        std::size_t sample_cap) {
  Rng rng = Rng::stream(seed, stream_index);
  StreamResult out;
  out.counts.assign(n_cells_for(ifs.space.kind, opt.grid), 0);
  const int k = ifs.k();
  std::vector<double> p(k);
  Point x = x0;
  const std::uint64_t total = quota + static_cast<std::uint64_t>(opt.burn_in);
  for (std::uint64_t j = 0; j < total; ++j) {
    double sum = 0.0;
    for (int i = 0; i < k; ++i) {
      p[i] = eval_prob(ifs.probs[i], x);
      sum += p[i];
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw std::runtime_error("chaos_game: probabilities do not sum to 1 at a visited point");
    const int i = pick_index(p.data(), k, rng.uniform());
    x = apply_map(ifs.maps[i], x);
    if (std::holds_alternative<Tent>(ifs.maps[i]) ||
        std::holds_alternative<Bernoulli>(ifs.maps[i])) {
      // Expanding binary maps shift one mantissa bit out per step, so exact
      // double orbits collapse onto the dyadic fixed points within ~50 steps.
      // Seeded low-bit dither keeps the sampled orbit ergodic.
      x[0] = clamp01(x[0] + (rng.uniform() - 0.5) * 0x1.0p-48);
    }
    if (j >= static_cast<std::uint64_t>(opt.burn_in)) {
      ++out.counts[cell_index(ifs.space.kind, opt.grid, x)];
      if (out.sample.size() < sample_cap) out.sample.push_back(x);
    }
  }
  return out;
}

ChaosGameResult merge_streams(const ClassicalIFS& ifs,
                              std::vector<StreamResult>& parts,
                              const ChaosGameOptions& opt) {
  ChaosGameResult res;
  res.measure.space = ifs.space.kind;
  res.measure.grid = opt.grid;
  const int n = n_cells_for(ifs.space.kind, opt.grid);
  res.measure.counts.assign(n, 0);
  for (const auto& part : parts)
    for (int c = 0; c < n; ++c) res.measure.counts[c] += part.counts[c];
  res.measure.total_count =
      std::accumulate(res.measure.counts.begin(), res.measure.counts.end(),
                      std::uint64_t{0});
  res.measure.weights = Eigen::VectorXd::Zero(n);
  if (res.measure.total_count > 0)
    for (int c = 0; c < n; ++c)
      res.measure.weights[c] =
          static_cast<double>(res.measure.counts[c]) / res.measure.total_count;
  res.sample = std::move(parts[0].sample);
  return res;
}

std::vector<std::uint64_t> stream_quotas(std::uint64_t n, int burn_in,
                                         int streams) {
  const std::uint64_t recorded =
      n > static_cast<std::uint64_t>(burn_in) ? n - burn_in : 0;
  std::vector<std::uint64_t> q(streams, recorded / streams);
  for (std::uint64_t s = 0; s < recorded % streams; ++s) ++q[s];
  return q;
}

}  // namespace

ChaosGameResult chaos_game_serial(const ClassicalIFS& ifs, const Point& x0,
                                  std::uint64_t n, std::uint64_t seed,
                                  const ChaosGameOptions& opt) {
  if (n < 1) throw std::invalid_argument("chaos_game: n must be >= 1");
  if (!space_contains(ifs.space.kind, x0))
    throw std::invalid_argument("chaos_game: x0 outside the phase space");
  const auto quotas = stream_quotas(n, opt.burn_in, opt.streams);
  std::vector<StreamResult> parts(opt.streams);
  for (int s = 0; s < opt.streams; ++s)
    parts[s] = run_stream(ifs, x0, quotas[s], seed, s, opt,
                          s == 0 ? opt.sample_cap : 0);
  return merge_streams(ifs, parts, opt);
}

ChaosGameResult chaos_game(const ClassicalIFS& ifs, const Point& x0,
                           std::uint64_t n, std::uint64_t seed,
                           const ChaosGameOptions& opt) {
  if (n < 1) throw std::invalid_argument("chaos_game: n must be >= 1");
  if (!space_contains(ifs.space.kind, x0))
    throw std::invalid_argument("chaos_game: x0 outside the phase space");
  const auto quotas = stream_quotas(n, opt.burn_in, opt.streams);
  std::vector<StreamResult> parts(opt.streams);
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
  for (int s = 0; s < opt.streams; ++s) {
    try {
      parts[s] = run_stream(ifs, x0, quotas[s], seed, s, opt,
                            s == 0 ? opt.sample_cap : 0);
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  return merge_streams(ifs, parts, opt);
}

// ---------------------------------------------------------------------------

EmpiricalMeasure push_measure(const ClassicalIFS& ifs,
                              const EmpiricalMeasure& mu) {
  EmpiricalMeasure out;
  out.space = mu.space;
  out.grid = mu.grid;
  out.weights = Eigen::VectorXd::Zero(mu.weights.size());
  const int k = ifs.k();
  for (int c = 0; c < mu.n_cells(); ++c) {
    const double w = mu.weights[c];
    if (w == 0.0) continue;
    const Point x = cell_center(mu.space, mu.grid, c);
    double pushed = 0.0;
    for (int i = 0; i < k; ++i) {
      // Last map takes the exact remainder so total mass is conserved.
      const double wi =
          (i + 1 == k) ? w - pushed : w * eval_prob(ifs.probs[i], x);
      pushed += wi;
      const Point y = apply_map(ifs.maps[i], x);
      out.weights[cell_index(mu.space, mu.grid, y)] += wi;
    }
  }
  return out;
}

Eigen::VectorXd density_nodes(int nodes) {
  Eigen::VectorXd x(nodes + 1);
  for (int i = 0; i <= nodes; ++i) x[i] = static_cast<double>(i) / nodes;
  return x;
}

double trapezoid(const Eigen::VectorXd& v) {
  const int m = static_cast<int>(v.size()) - 1;
  double s = 0.5 * (v[0] + v[m]);
  for (int i = 1; i < m; ++i) s += v[i];
  return s / m;
}

Eigen::VectorXd push_density(const ClassicalIFS& ifs,
                             const Eigen::VectorXd& gamma) {
  if (ifs.space.kind != SpaceKind::Interval)
    throw std::invalid_argument("push_density: defined on the interval only");
  for (const auto& f : ifs.maps)
    if (!map_is_invertible_1d(f))
      throw std::invalid_argument("push_density: map kind is not invertible");
  const int m = static_cast<int>(gamma.size()) - 1;
  const auto interp = [&](double u) {
    const double t = u * m;
    const int i = std::clamp(static_cast<int>(std::floor(t)), 0, m - 1);
    const double frac = t - i;
    return (1.0 - frac) * gamma[i] + frac * gamma[i + 1];
  };
  Eigen::VectorXd out = Eigen::VectorXd::Zero(m + 1);
  for (int j = 0; j <= m; ++j) {
    const double x = static_cast<double>(j) / m;
    for (int i = 0; i < ifs.k(); ++i) {
      const auto& f = std::get<Affine1D>(ifs.maps[i]);
      const double u = (x - f.b) / f.a;
      if (u < -1e-12 || u > 1.0 + 1e-12) continue;  // x outside f_i(Omega)
      const double uc = clamp01(u);
      out[j] += eval_prob(ifs.probs[i], Point(uc, 0, 0)) * interp(uc) / std::abs(f.a);
    }
  }
  return out;
}

DimensionFit box_counting_dimension(const EmpiricalMeasure& mu,
                                    const std::vector<int>& boxes_per_axis) {
  if (boxes_per_axis.size() < 3)
    throw std::invalid_argument("box_counting_dimension: need at least 3 scales");
  const bool two_d = mu.space != SpaceKind::Interval;
  const double threshold = 1e-9 * mu.weights.sum();
  DimensionFit fit;
  std::vector<double> lx, ly;
  for (int b : boxes_per_axis) {
    if (b < 1 || mu.grid % b != 0)
      throw std::invalid_argument("box_counting_dimension: boxes must divide the grid");
    const int factor = mu.grid / b;
    std::vector<char> occupied(two_d ? b * b : b, 0);
    for (int c = 0; c < mu.n_cells(); ++c) {
      if (mu.weights[c] <= threshold) continue;
      int box;
      if (two_d)
        box = (c / mu.grid / factor) * b + (c % mu.grid / factor);
      else
        box = c / factor;
      occupied[box] = 1;
    }
    const std::int64_t n =
        std::count(occupied.begin(), occupied.end(), char(1));
    fit.counts.emplace_back(b, n);
    lx.push_back(std::log(static_cast<double>(b)));
    ly.push_back(std::log(static_cast<double>(std::max<std::int64_t>(n, 1))));
  }
  const int s = static_cast<int>(lx.size());
  double mx = 0, my = 0;
  for (int i = 0; i < s; ++i) mx += lx[i], my += ly[i];
  mx /= s, my /= s;
  double sxx = 0, sxy = 0;
  for (int i = 0; i < s; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  fit.dimension = sxy / sxx;
  double rss = 0;
  for (int i = 0; i < s; ++i) {
    const double pred = my + fit.dimension * (lx[i] - mx);
    rss += (ly[i] - pred) * (ly[i] - pred);
  }
  fit.residual = std::sqrt(rss / s);
  return fit;
}

HyperbolicityReport classify_hyperbolic(const ClassicalIFS& ifs,
                                        int sample_budget, std::uint64_t seed) {
  Rng rng(seed);
  HyperbolicityReport rep;
  rep.lipschitz.assign(ifs.k(), 0.0);
  rep.pairs_sampled = sample_budget;
  for (int s = 0; s < sample_budget; ++s) {
    // Near pairs probe local slopes; pairs that straddle a jump of a
    // discontinuous map would read as arbitrarily large ratios instead.
    const Point x = uniform_point(ifs.space.kind, rng);
    const Point y = perturb_in_space(ifs.space.kind, x, 1e-6, rng);
    const double d = space_distance(ifs.space.kind, x, y);
    if (d < 1e-14) continue;
    for (int i = 0; i < ifs.k(); ++i) {
      const double di = space_distance(ifs.space.kind, apply_map(ifs.maps[i], x),
                                       apply_map(ifs.maps[i], y));
      rep.lipschitz[i] = std::max(rep.lipschitz[i], di / d);
    }
  }
  // Positivity needs the boundary probes random sampling may miss.
  std::vector<Point> probes;
  if (ifs.space.kind == SpaceKind::Interval) {
    for (int i = 0; i <= 100; ++i) probes.emplace_back(i / 100.0, 0, 0);
  } else if (ifs.space.kind == SpaceKind::Square) {
    for (int i = 0; i <= 10; ++i)
      for (int j = 0; j <= 10; ++j) probes.emplace_back(i / 10.0, j / 10.0, 0);
  } else {
    probes.emplace_back(0, 0, 1);
    probes.emplace_back(0, 0, -1);
    for (int i = 1; i < 10; ++i)
      for (int j = 0; j < 10; ++j)
        probes.push_back(sphere_point(i * M_PI / 10, j * kTwoPi / 10));
  }
  for (int s = 0; s < 200; ++s) probes.push_back(uniform_point(ifs.space.kind, rng));
  rep.min_prob = 1.0;
  for (const auto& x : probes)
    for (const auto& p : ifs.probs)
      rep.min_prob = std::min(rep.min_prob, eval_prob(p, x));
  rep.probs_positive = rep.min_prob > 1e-12;
  rep.hyperbolic =
      rep.probs_positive &&
      std::all_of(rep.lipschitz.begin(), rep.lipschitz.end(),
                  [](double l) { return l < 1.0; });
  return rep;
}

}  // namespace qifs
