#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "qifs/linalg.hpp"
#include "qifs/rng.hpp"

namespace qifs {

// Phase-space points are stored as Vector3d regardless of the space:
// interval uses component 0, the unit square components 0..1, the sphere a
// unit vector in R^3.
using Point = Eigen::Vector3d;

enum class SpaceKind { Interval, Square, Sphere };

struct PhaseSpace {
  SpaceKind kind = SpaceKind::Interval;
};

double space_distance(SpaceKind kind, const Point& a, const Point& b);
bool space_contains(SpaceKind kind, const Point& p, double eps = 1e-12);
Point sphere_point(double theta, double phi);

// ---------------------------------------------------------------------------
// Maps

struct Affine1D {
  double a = 1.0, b = 0.0;  // x -> a x + b
};
struct Affine2D {
  Eigen::Matrix2d m = Eigen::Matrix2d::Identity();
  Eigen::Vector2d c = Eigen::Vector2d::Zero();
};
struct SphereRotation {
  Point axis = Point::UnitZ();  // unit vector
  double angle = 0.0;           // radians
};
struct Tent {};       // 2x for x < 1/2, 2(1-x) otherwise
struct Bernoulli {};  // 2x mod 1
struct KickedTopClassical {
  // x-rotation by alpha followed by a z-rotation whose angle is beta times
  // the z coordinate of the rotated point.
  double alpha = 0.0, beta = 0.0;
};

using ClassicalMap =
    std::variant<Affine1D, Affine2D, SphereRotation, Tent, Bernoulli,
                 KickedTopClassical>;

Point apply_map(const ClassicalMap& f, const Point& x);
bool map_is_invertible_1d(const ClassicalMap& f);

// ---------------------------------------------------------------------------
// Probability functions

struct ConstantProb {
  double value = 1.0;
};
struct CoordinateProb {};           // p(x) = x            (interval)
struct OneMinusCoordinateProb {};   // p(x) = 1 - x        (interval)
struct LatitudePlusProb {};         // p = (1 + cos th)/2  (sphere)
struct LatitudeMinusProb {};        // p = (1 - cos th)/2  (sphere)

using ProbabilityFunction =
    std::variant<ConstantProb, CoordinateProb, OneMinusCoordinateProb,
                 LatitudePlusProb, LatitudeMinusProb>;

double eval_prob(const ProbabilityFunction& p, const Point& x);

// ---------------------------------------------------------------------------

struct ClassicalIFS {
  PhaseSpace space;
  std::vector<ClassicalMap> maps;
  std::vector<ProbabilityFunction> probs;

  int k() const { return static_cast<int>(maps.size()); }
  /// Throws unless probabilities sum to 1 (1e-12) at sampled points and map
  /// images stay inside the space.
  void validate(int samples = 10000, std::uint64_t seed = 1) const;
};

/// Grid histogram over the phase space; `grid` cells per axis, half-open
/// cells [l/M, (l+1)/M) with the right endpoint folded into the last cell.
struct EmpiricalMeasure {
  SpaceKind space = SpaceKind::Interval;
  int grid = 1;
  Eigen::VectorXd weights;              // normalized to total 1
  std::vector<std::uint64_t> counts;    // raw counts when sampled, else empty
  std::uint64_t total_count = 0;

  int n_cells() const { return static_cast<int>(weights.size()); }
  static EmpiricalMeasure uniform(SpaceKind kind, int grid);
  static EmpiricalMeasure point_mass(SpaceKind kind, int grid, const Point& x);
  /// Normalized Lebesgue cell masses (sin-theta weighted on the sphere).
  static EmpiricalMeasure lebesgue(SpaceKind kind, int grid);
};

int cell_index(SpaceKind kind, int grid, const Point& p);
Point cell_center(SpaceKind kind, int grid, int index);

// ---------------------------------------------------------------------------
// Operations

struct ChaosGameOptions {
  int burn_in = 100;
  int streams = 1;        // deterministic parallelism; result depends only on
                          // (seed, streams), not on thread count
  int grid = 100;
  std::size_t sample_cap = 1000;  // retained trajectory points (stream 0)
};

struct ChaosGameResult {
  std::vector<Point> sample;
  EmpiricalMeasure measure;
};

ChaosGameResult chaos_game(const ClassicalIFS& ifs, const Point& x0,
                           std::uint64_t n, std::uint64_t seed,
                           const ChaosGameOptions& opt = {});
/// Single-stream reference implementation (no OpenMP).
ChaosGameResult chaos_game_serial(const ClassicalIFS& ifs, const Point& x0,
                                  std::uint64_t n, std::uint64_t seed,
                                  const ChaosGameOptions& opt = {});

/// One Markov step on a grid measure: each cell's mass is pushed through
/// every map at the cell center, weighted by p_i there. First-order in 1/M;
/// total mass is preserved bit-exactly (the last map takes the remainder).
EmpiricalMeasure push_measure(const ClassicalIFS& ifs,
                              const EmpiricalMeasure& mu);

/// One step of the density evolution on [0,1] for invertible C^1 maps.
/// `gamma` holds node samples on the uniform grid 0..1 (size nodes+1 when
/// built from `density_nodes`); non-invertible map kinds are rejected.
Eigen::VectorXd push_density(const ClassicalIFS& ifs,
                             const Eigen::VectorXd& gamma);
Eigen::VectorXd density_nodes(int nodes);  // node coordinates incl. endpoints
double trapezoid(const Eigen::VectorXd& values);  // integral over [0,1]

struct DimensionFit {
  double dimension = 0.0;
  double residual = 0.0;  // RMS residual of the log-log fit
  std::vector<std::pair<int, std::int64_t>> counts;  // (boxes per axis, occupied)
};

/// Least-squares slope of log(occupied boxes) vs log(1/eps) over coarsenings
/// of the measure's grid; each entry of `boxes_per_axis` must divide grid.
DimensionFit box_counting_dimension(const EmpiricalMeasure& mu,
                                    const std::vector<int>& boxes_per_axis);

struct HyperbolicityReport {
  std::vector<double> lipschitz;  // sampled lower bounds, one per map
  double min_prob = 1.0;
  bool probs_positive = false;
  bool hyperbolic = false;        // empirical verdict
  int pairs_sampled = 0;
};

HyperbolicityReport classify_hyperbolic(const ClassicalIFS& ifs,
                                        int sample_budget = 10000,
                                        std::uint64_t seed = 7);

}  // namespace qifs
