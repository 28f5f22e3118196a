#include "qifs/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "qifs/invariant.hpp"
#include "qifs/spin.hpp"
#include "qifs/torus.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qifs {

namespace {

using std::filesystem::path;

void check_keys(const json& j, const std::vector<std::string>& allowed,
                const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
      throw ConfigError(where + ": unknown key '" + it.key() + "'");
}

double num_at(const json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("missing key '") + key + "'");
  if (!j.at(key).is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
  return j.at(key).get<double>();
}

int int_at(const json& j, const char* key) {
  const double v = num_at(j, key);
  if (v != std::floor(v)) throw ConfigError(std::string("'") + key + "' must be an integer");
  return static_cast<int>(v);
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// ---------------------------------------------------------------------------
// Artifact sink with the --format filter; manifest bookkeeping.

struct ArtifactSink {
  path dir;
  std::string format;
  std::string pgm_comment;
  std::vector<std::string> names;

  bool want(const std::string& ext) const { return format.empty() || format == ext; }

  void csv_measure(const std::string& name, const EmpiricalMeasure& mu) {
    if (!want("csv")) return;
    write_csv_measure(dir / name, mu);
    names.push_back(name);
  }
  void csv_grid(const std::string& name, const HusimiGrid& g) {
    if (!want("csv")) return;
    write_csv_grid(dir / name, g);
    names.push_back(name);
  }
  void csv_profile(const std::string& name, const std::string& label,
                   const Eigen::VectorXd& v) {
    if (!want("csv")) return;
    write_csv_profile(dir / name, label, v);
    names.push_back(name);
  }
  void csv_table(const std::string& name, const std::string& header,
                 const std::vector<std::vector<double>>& rows) {
    if (!want("csv")) return;
    std::string out = header + "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.17g", row[i]);
        out += buf;
        out += (i + 1 == row.size()) ? "\n" : ",";
      }
    }
    write_text(dir / name, out);
    names.push_back(name);
  }
  void pgm(const std::string& name, const Eigen::MatrixXd& values, bool binary) {
    if (!want("pgm")) return;
    PgmOptions po;
    po.binary = binary;
    po.comment = pgm_comment;
    write_pgm(dir / name, values, po);
    names.push_back(name);
    write_json(dir / (name + ".json"), pgm_sidecar(values, po));
    names.push_back(name + ".json");
  }
  void json_file(const std::string& name, const json& j) {
    if (!want("json")) return;
    write_json(dir / name, j);
    names.push_back(name);
  }
};

Eigen::MatrixXd measure_to_matrix(const EmpiricalMeasure& mu) {
  if (mu.space == SpaceKind::Interval) {
    Eigen::MatrixXd m(1, mu.grid);
    for (int c = 0; c < mu.grid; ++c) m(0, c) = mu.weights[c];
    return m;
  }
  Eigen::MatrixXd m(mu.grid, mu.grid);
  for (int ix = 0; ix < mu.grid; ++ix)
    for (int iy = 0; iy < mu.grid; ++iy) m(iy, ix) = mu.weights[ix * mu.grid + iy];
  return m;
}

// ---------------------------------------------------------------------------
// Config parsing

ClassicalMap map_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "affine1d") {
    check_keys(j, {"kind", "a", "b"}, "map affine1d");
    return Affine1D{num_at(j, "a"), num_at(j, "b")};
  }
  if (kind == "affine2d") {
    check_keys(j, {"kind", "m", "c"}, "map affine2d");
    Affine2D f;
    const auto& m = j.at("m");
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) f.m(r, c) = m.at(r).at(c).get<double>();
    f.c[0] = j.at("c").at(0).get<double>();
    f.c[1] = j.at("c").at(1).get<double>();
    return f;
  }
  if (kind == "rotation") {
    check_keys(j, {"kind", "axis", "angle"}, "map rotation");
    SphereRotation r;
    for (int i = 0; i < 3; ++i) r.axis[i] = j.at("axis").at(i).get<double>();
    r.axis.normalize();
    r.angle = num_at(j, "angle");
    return r;
  }
  if (kind == "tent") {
    check_keys(j, {"kind"}, "map tent");
    return Tent{};
  }
  if (kind == "bernoulli") {
    check_keys(j, {"kind"}, "map bernoulli");
    return Bernoulli{};
  }
  if (kind == "kicked-top") {
    check_keys(j, {"kind", "alpha", "beta"}, "map kicked-top");
    return KickedTopClassical{num_at(j, "alpha"), num_at(j, "beta")};
  }
  throw ConfigError("unknown map kind '" + kind + "'");
}

ProbabilityFunction prob_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "constant") {
    check_keys(j, {"kind", "value"}, "prob constant");
    return ConstantProb{num_at(j, "value")};
  }
  check_keys(j, {"kind"}, "prob " + kind);
  if (kind == "coordinate") return CoordinateProb{};
  if (kind == "one-minus-coordinate") return OneMinusCoordinateProb{};
  if (kind == "latitude-plus") return LatitudePlusProb{};
  if (kind == "latitude-minus") return LatitudeMinusProb{};
  throw ConfigError("unknown probability kind '" + kind + "'");
}

}  // namespace

ClassicalIFS ifs_from_json(const json& j) {
  check_keys(j, {"space", "maps", "probs"}, "ifs");
  ClassicalIFS ifs;
  const std::string space = j.at("space").get<std::string>();
  if (space == "interval")
    ifs.space.kind = SpaceKind::Interval;
  else if (space == "square")
    ifs.space.kind = SpaceKind::Square;
  else if (space == "sphere")
    ifs.space.kind = SpaceKind::Sphere;
  else
    throw ConfigError("unknown space '" + space + "'");
  for (const auto& m : j.at("maps")) ifs.maps.push_back(map_from_json(m));
  for (const auto& p : j.at("probs")) ifs.probs.push_back(prob_from_json(p));
  try {
    ifs.validate(2000, 1);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return ifs;
}

QuantumChannel channel_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  try {
    if (kind == "kraus") {
      check_keys(j, {"kind", "kraus"}, "channel kraus");
      std::vector<Mat> ks;
      for (const auto& m : j.at("kraus")) ks.push_back(matrix_from_json(m));
      return QuantumChannel::from_kraus(std::move(ks));
    }
    if (kind == "ref") {
      check_keys(j, {"kind", "probs", "unitaries"}, "channel ref");
      std::vector<double> probs = j.at("probs").get<std::vector<double>>();
      std::vector<Mat> us;
      for (const auto& m : j.at("unitaries")) us.push_back(matrix_from_json(m));
      return random_external_field(probs, us);
    }
    if (kind == "depolarizing") {
      check_keys(j, {"kind", "p"}, "channel depolarizing");
      return depolarizing(num_at(j, "p"));
    }
    if (kind == "ancilla") {
      check_keys(j, {"kind", "env-dim", "unitary"}, "channel ancilla");
      return ancilla_channel(matrix_from_json(j.at("unitary")), int_at(j, "env-dim"));
    }
    if (kind == "atomic") {
      check_keys(j, {"kind", "bz", "period", "pulse", "p"}, "channel atomic");
      return atomic_qifs(num_at(j, "bz"), num_at(j, "period"),
                         matrix_from_json(j.at("pulse")), num_at(j, "p"))
          .channel;
    }
    if (kind == "rotations") {
      check_keys(j, {"kind", "j", "theta1", "theta2"}, "channel rotations");
      const double spin = num_at(j, "j");
      return random_external_field(
          {0.5, 0.5}, {spin_rotation(Axis::Z, num_at(j, "theta1"), spin),
                       spin_rotation(Axis::X, num_at(j, "theta2"), spin)});
    }
    if (kind == "kicked-top-pair") {
      check_keys(j, {"kind", "j", "alpha", "beta", "delta", "p"},
                 "channel kicked-top-pair");
      const double spin = num_at(j, "j");
      const double p = j.contains("p") ? num_at(j, "p") : 0.5;
      return random_external_field(
          {1.0 - p, p},
          {kicked_top(num_at(j, "alpha"), num_at(j, "beta"), spin),
           kicked_top(num_at(j, "alpha"), num_at(j, "beta") + num_at(j, "delta"),
                      spin)});
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  throw ConfigError("unknown channel kind '" + kind + "'");
}

namespace {

struct ParsedQifs {
  std::optional<PureQIFS> pure;
  std::optional<MixedQIFS> mixed;
  std::optional<QuantumChannel> channel;  // set for homogeneous systems
  int dim = 0;
  double spin_j = 0.0;  // > 0 for spin systems (enables coherent initials)
};

ParsedQifs qifs_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  ParsedQifs q;
  if (kind == "channel") {
    check_keys(j, {"kind", "channel"}, "qifs channel");
    const json& cj = j.at("channel");
    QuantumChannel chan = channel_from_json(cj);
    const std::string ck = cj.at("kind").get<std::string>();
    if (ck == "rotations" || ck == "kicked-top-pair") q.spin_j = num_at(cj, "j");
    q.dim = chan.dim();
    try {
      HomogeneousQIFS h = HomogeneousQIFS::from_kraus(chan.kraus);
      q.pure = h.pure;
      q.mixed = h.as_mixed();
    } catch (const std::invalid_argument&) {
      // Non-invertible Kraus operators: trajectory sampling unavailable,
      // deterministic channel iteration still works.
    }
    q.channel = std::move(chan);
    return q;
  }
  if (kind == "homothety") {
    check_keys(j, {"kind", "dim", "targets", "probs"}, "qifs homothety");
    std::vector<MixedMap> maps;
    std::vector<MixedProb> probs;
    const auto pvals = j.at("probs").get<std::vector<double>>();
    const auto& targets = j.at("targets");
    if (pvals.size() != targets.size())
      throw ConfigError("homothety: targets/probs size mismatch");
    for (std::size_t i = 0; i < pvals.size(); ++i) {
      maps.push_back(Homothety{matrix_from_json(targets[i])});
      probs.push_back(ConstantQProb{pvals[i]});
    }
    q.mixed = MixedQIFS::make(std::move(maps), std::move(probs));
    q.dim = int_at(j, "dim");
    return q;
  }
  if (kind == "latitude") {
    check_keys(j, {"kind", "j", "theta1", "theta2"}, "qifs latitude");
    const double spin = num_at(j, "j");
    const AngularMomentum am = angular_momentum(spin);
    const int n = am.jz.rows();
    const Mat l1 = 0.5 * Mat::Identity(n, n) + am.jz / (2.0 * spin);
    const Mat l2 = Mat::Identity(n, n) - l1;
    const Mat u1 = spin_rotation(Axis::Z, num_at(j, "theta1"), spin);
    const Mat u2 = spin_rotation(Axis::X, num_at(j, "theta2"), spin);
    q.pure = PureQIFS::make({u1, u2}, {sqrt_psd(l1), sqrt_psd(l2)});
    q.mixed = MixedQIFS::make({ConjugateBy{u1}, ConjugateBy{u2}},
                              {OperatorProb{l1}, OperatorProb{l2}});
    q.dim = n;
    q.spin_j = spin;
    return q;
  }
  throw ConfigError("unknown qifs kind '" + kind + "'");
}

struct ParsedState {
  std::optional<Vec> ket;
  std::optional<Mat> rho;
};

ParsedState initial_from_json(const json& j, int dim, double spin_j) {
  ParsedState st;
  check_keys(j, {"basis", "ket", "matrix", "coherent", "mixed", "position"},
             "initial");
  if (j.contains("basis")) {
    Vec v = Vec::Zero(dim);
    const int k = j.at("basis").get<int>();
    if (k < 0 || k >= dim) throw ConfigError("initial basis index out of range");
    v[k] = 1.0;
    st.ket = v;
  } else if (j.contains("ket")) {
    st.ket = ket_from_json(j.at("ket"));
  } else if (j.contains("matrix")) {
    st.rho = matrix_from_json(j.at("matrix"));
  } else if (j.contains("coherent")) {
    const json& c = j.at("coherent");
    if (c.contains("theta")) {
      check_keys(c, {"theta", "phi"}, "initial coherent");
      if (spin_j <= 0) throw ConfigError("coherent initial requires a spin system");
      st.ket = spin_coherent(spin_j, num_at(c, "theta"), num_at(c, "phi"));
    } else {
      check_keys(c, {"q", "p"}, "initial coherent");
      st.ket = coherent_torus(num_at(c, "q"), num_at(c, "p"), dim);
    }
  } else if (j.contains("position")) {
    Vec v = Vec::Zero(dim);
    v[j.at("position").get<int>()] = 1.0;
    st.ket = v;
  } else if (j.contains("mixed")) {
    st.rho = Mat::Identity(dim, dim) / dim;
  } else {
    throw ConfigError("initial: expected basis/ket/matrix/coherent/mixed");
  }
  return st;
}

Point x0_from_json(const json& cfg, SpaceKind kind) {
  if (!cfg.contains("x0")) {
    switch (kind) {
      case SpaceKind::Interval: return Point(0.5, 0, 0);
      case SpaceKind::Square: return Point(0.5, 0.5, 0);
      case SpaceKind::Sphere: return Point(1, 0, 0);
    }
  }
  const auto& a = cfg.at("x0");
  Point x = Point::Zero();
  for (std::size_t i = 0; i < a.size() && i < 3; ++i) x[i] = a.at(i).get<double>();
  if (kind == SpaceKind::Sphere) x.normalize();
  if (!space_contains(kind, x))
    throw ConfigError("x0 lies outside the phase space");
  return x;
}

struct LineFit {
  double slope = 0.0, intercept = 0.0, r2 = 0.0;
};

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
  const int n = static_cast<int>(xs.size());
  LineFit f;
  if (n < 2) return f;
  double mx = 0, my = 0;
  for (int i = 0; i < n; ++i) mx += xs[i], my += ys[i];
  mx /= n, my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (int i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy > 0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return f;
}

// ---------------------------------------------------------------------------
// Experiment kinds

json run_chaos_game_exp(const json& cfg, ArtifactSink& sink) {
  check_keys(cfg,
             {"kind", "name", "seed", "ifs", "n", "grid", "burn-in", "streams",
              "x0", "sample-cap"},
             "chaos-game");
  const ClassicalIFS ifs = ifs_from_json(cfg.at("ifs"));
  ChaosGameOptions opt;
  opt.grid = int_at(cfg, "grid");
  if (cfg.contains("burn-in")) opt.burn_in = int_at(cfg, "burn-in");
  if (cfg.contains("streams")) opt.streams = int_at(cfg, "streams");
  if (cfg.contains("sample-cap")) opt.sample_cap = int_at(cfg, "sample-cap");
  const auto res = chaos_game(ifs, x0_from_json(cfg, ifs.space.kind),
                              static_cast<std::uint64_t>(num_at(cfg, "n")),
                              cfg.at("seed").get<std::uint64_t>(), opt);
  sink.csv_measure("histogram.csv", res.measure);
  sink.pgm("histogram.pgm", measure_to_matrix(res.measure), false);
  int nonzero = 0;
  for (int c = 0; c < res.measure.n_cells(); ++c)
    if (res.measure.counts[c] > 0) ++nonzero;
  return json{{"total-count", res.measure.total_count},
              {"nonzero-cells", nonzero}};
}

EmpiricalMeasure initial_measure(const json& cfg, const ClassicalIFS& ifs,
                                 int grid) {
  if (!cfg.contains("initial"))
    return EmpiricalMeasure::uniform(ifs.space.kind, grid);
  const json& init = cfg.at("initial");
  if (init.is_string()) {
    const std::string s = init.get<std::string>();
    if (s == "uniform") return EmpiricalMeasure::uniform(ifs.space.kind, grid);
    if (s == "lebesgue") return EmpiricalMeasure::lebesgue(ifs.space.kind, grid);
    throw ConfigError("unknown initial measure '" + s + "'");
  }
  check_keys(init, {"point"}, "initial measure");
  Point x = Point::Zero();
  const auto& a = init.at("point");
  for (std::size_t i = 0; i < a.size() && i < 3; ++i) x[i] = a.at(i).get<double>();
  return EmpiricalMeasure::point_mass(ifs.space.kind, grid, x);
}

json run_push_measure_exp(const json& cfg, ArtifactSink& sink) {
  check_keys(cfg, {"kind", "name", "seed", "ifs", "grid", "iterations", "initial"},
             "push-measure");
  const ClassicalIFS ifs = ifs_from_json(cfg.at("ifs"));
  const int grid = int_at(cfg, "grid");
  const int iters = int_at(cfg, "iterations");
  EmpiricalMeasure mu = initial_measure(cfg, ifs, grid);
  double last_change = 0.0;
  for (int i = 0; i < iters; ++i) {
    EmpiricalMeasure next = push_measure(ifs, mu);
    last_change = (next.weights - mu.weights).cwiseAbs().sum();
    mu = std::move(next);
  }
  sink.csv_measure("measure.csv", mu);
  sink.pgm("measure.pgm", measure_to_matrix(mu), false);
  return json{{"iterations", iters},
              {"last-l1-change", last_change},
              {"total-mass", mu.weights.sum()}};
}

json run_push_density_exp(const json& cfg, ArtifactSink& sink) {
  check_keys(cfg, {"kind", "name", "seed", "ifs", "nodes", "iterations"},
             "push-density");
  const ClassicalIFS ifs = ifs_from_json(cfg.at("ifs"));
  const int nodes = int_at(cfg, "nodes");
  const int iters = cfg.contains("iterations") ? int_at(cfg, "iterations") : 1;
  Eigen::VectorXd gamma = Eigen::VectorXd::Ones(nodes + 1);
  try {
    for (int i = 0; i < iters; ++i) gamma = push_density(ifs, gamma);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const Eigen::VectorXd xs = density_nodes(nodes);
  std::vector<std::vector<double>> rows;
  for (int i = 0; i <= nodes; ++i) rows.push_back({xs[i], gamma[i]});
  sink.csv_table("density.csv", "x,density", rows);
  return json{{"iterations", iters}, {"integral", trapezoid(gamma)}};
}

json run_dimension_exp(const json& cfg, ArtifactSink& sink) {
  check_keys(cfg,
             {"kind", "name", "seed", "ifs", "n", "grid", "burn-in", "streams",
              "x0", "sample-cap", "scales"},
             "dimension");
  const ClassicalIFS ifs = ifs_from_json(cfg.at("ifs"));
  ChaosGameOptions opt;
  opt.grid = int_at(cfg, "grid");
  if (cfg.contains("burn-in")) opt.burn_in = int_at(cfg, "burn-in");
  if (cfg.contains("streams")) opt.streams = int_at(cfg, "streams");
  const auto res = chaos_game(ifs, x0_from_json(cfg, ifs.space.kind),
                              static_cast<std::uint64_t>(num_at(cfg, "n")),
                              cfg.at("seed").get<std::uint64_t>(), opt);
  const auto scales = cfg.at("scales").get<std::vector<int>>();
  DimensionFit fit;
  try {
    fit = box_counting_dimension(res.measure, scales);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  sink.csv_measure("histogram.csv", res.measure);
  sink.pgm("histogram.pgm", measure_to_matrix(res.measure), false);
  json counts = json::array();
  for (const auto& [b, c] : fit.counts) counts.push_back({{"boxes", b}, {"occupied", c}});
  const json dim_report{{"dimension", fit.dimension},
                        {"residual", fit.residual},
                        {"counts", counts}};
  sink.json_file("dimension.json", dim_report);
  return dim_report;
}

json run_invariant_state_exp(const json& cfg, ArtifactSink& sink) {
  check_keys(cfg,
             {"kind", "name", "seed", "channel", "method", "tol", "max-steps"},
             "invariant-state");
  const QuantumChannel chan = channel_from_json(cfg.at("channel"));
  const std::string method =
      cfg.contains("method") ? cfg.at("method").get<std::string>() : "spectral";
  json report;
  if (method == "spectral") {
    const FixedStateReport rep = fixed_states(chan);
    report["multiplicity"] = rep.multiplicity;
    report["unique"] = rep.unique;
    report["residual"] = rep.residual;
    if (rep.state) sink.json_file("state.json", matrix_to_json(rep.state->matrix()));
  } else if (method == "power") {
    const double tol = cfg.contains("tol") ? num_at(cfg, "tol") : 1e-12;
    const int max_steps = cfg.contains("max-steps") ? int_at(cfg, "max-steps") : 10000;
    const auto rep = power_iteration(chan, DensityMatrix::maximally_mixed(chan.dim()),
                                     max_steps, tol);
    if (!rep.converged)
      throw ConvergenceError("power iteration did not converge");
    report["steps"] = rep.steps;
    report["converged"] = rep.converged;
    sink.json_file("state.json", matrix_to_json(rep.state.matrix()));
  } else {
    throw ConfigError("unknown method '" + method + "'");
  }
  report["trace-preserving"] = chan.trace_preserving == Flag::Yes;
  report["unital"] = chan.unital == Flag::Yes;
  sink.json_file("report.json", report);
  return report;
}

json run_uniqueness_exp(const json& cfg, ArtifactSink& sink) {
  check_keys(cfg, {"kind", "name", "seed", "unitaries", "probs"}, "uniqueness");
  std::vector<Mat> us;
  for (const auto& m : cfg.at("unitaries")) us.push_back(matrix_from_json(m));
  std::vector<double> probs = cfg.contains("probs")
                                  ? cfg.at("probs").get<std::vector<double>>()
                                  : std::vector<double>(us.size(), 1.0 / us.size());
  UniquenessVerdict v;
  CommutantReport com;
  try {
    v = uniqueness_verdict(probs, us);
    com = commutant(us);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  json blocks = json::array();
  for (const auto& b : com.blocks) blocks.push_back(b);
  const json report{{"unique", v.unique},
                    {"commutant-dimension", v.commutant_dimension},
                    {"fixed-multiplicity", v.fixed_multiplicity},
                    {"consistent", v.consistent},
                    {"reducible", com.reducible},
                    {"blocks", blocks}};
  sink.json_file("report.json", report);
  return report;
}

json run_trajectory_exp(const json& cfg, ArtifactSink& sink, bool barycenter_only) {
  check_keys(cfg,
             {"kind", "name", "seed", "qifs", "initial", "n", "burn-in", "curve",
              "reference"},
             "trajectory");
  const ParsedQifs q = qifs_from_json(cfg.at("qifs"));
  const ParsedState init = initial_from_json(cfg.at("initial"), q.dim, q.spin_j);
  const int n = int_at(cfg, "n");
  const int burn_in = cfg.contains("burn-in") ? int_at(cfg, "burn-in") : 100;
  const std::uint64_t seed = cfg.at("seed").get<std::uint64_t>();

  json report;
  DensityMatrix bary = DensityMatrix::maximally_mixed(q.dim);
  if (init.ket && q.pure) {
    const auto traj = qifs_trajectory(*q.pure, *init.ket, n, seed);
    bary = barycenter_estimate(traj, burn_in);
    if (!barycenter_only) {
      std::vector<std::vector<double>> rows;
      for (std::size_t t = 0; t < traj.size(); ++t)
        rows.push_back({static_cast<double>(t),
                        std::norm(traj[t].dot(*init.ket))});
      sink.csv_table("steps.csv", "step,overlap-with-initial", rows);
      sink.json_file("final_state.json", ket_to_json(traj.back()));
    }
  } else {
    if (!q.mixed) throw ConfigError("trajectory: QIFS has no mixed-state form");
    const Mat rho0 = init.rho ? *init.rho
                              : Mat((*init.ket) * init.ket->adjoint());
    const auto traj = qifs_trajectory(*q.mixed, rho0, n, seed);
    bary = barycenter_estimate(traj, burn_in);
    if (!barycenter_only) {
      std::vector<std::vector<double>> rows;
      for (std::size_t t = 0; t < traj.size(); ++t)
        rows.push_back({static_cast<double>(t),
                        (traj[t] * traj[t]).trace().real(),
                        von_neumann_entropy(traj[t])});
      sink.csv_table("steps.csv", "step,purity,entropy", rows);
      sink.json_file("final_state.json", matrix_to_json(traj.back()));
    }
  }
  sink.json_file("barycenter.json", matrix_to_json(bary.matrix()));
  report["steps"] = n;
  if (cfg.contains("reference")) {
    const Mat ref = matrix_from_json(cfg.at("reference"));
    report["barycenter-trace-distance-to-reference"] =
        trace_distance(bary.matrix(), ref);
  }

  // Deterministic channel iteration: distance to 1/N per step plus a
  // log-linear rate fit.
  if (cfg.contains("curve") && cfg.at("curve").get<bool>()) {
    if (!q.channel || q.channel->trace_preserving != Flag::Yes)
      throw ConfigError("curve requires a trace-preserving homogeneous QIFS");
    Mat rho = init.rho ? *init.rho : Mat((*init.ket) * init.ket->adjoint());
    const Mat mixed_state = Mat::Identity(q.dim, q.dim) / q.dim;
    std::vector<std::vector<double>> rows;
    std::vector<double> xs, ys;
    double max_increase = 0.0;
    double prev = trace_distance(rho, mixed_state);
    for (int t = 1; t <= n; ++t) {
      rho = q.channel->apply_raw(rho);
      const double d = trace_distance(rho, mixed_state);
      rows.push_back({static_cast<double>(t), d});
      max_increase = std::max(max_increase, d - prev);
      prev = d;
      if (d > 1e-13) {
        xs.push_back(t);
        ys.push_back(std::log(d));
      }
    }
    sink.csv_table("curve.csv", "step,trace-distance-to-mixed", rows);
    const LineFit fit = fit_line(xs, ys);
    report["curve"] = json{{"slope", fit.slope},
                           {"r2", fit.r2},
                           {"max-increase", max_increase},
                           {"non-increasing", max_increase <= 1e-10}};
  }
  sink.json_file("report.json", report);
  return report;
}

json state_from_json_or_named(const json& j, int dim, double spin_j, Mat* rho) {
  // Husimi experiments accept a matrix, named coherent/position states, or
  // the maximally mixed state.
  const ParsedState st = initial_from_json(j, dim, spin_j);
  *rho = st.rho ? *st.rho : Mat((*st.ket) * st.ket->adjoint());
  return json{};
}

json run_husimi_sphere_exp(const json& cfg, ArtifactSink& sink) {
  check_keys(cfg, {"kind", "name", "seed", "j", "state", "grid"}, "husimi-sphere");
  const double spin = num_at(cfg, "j");
  const SpinBasis basis(spin);
  Mat rho;
  state_from_json_or_named(cfg.at("state"), basis.n, spin, &rho);
  const int grid = int_at(cfg, "grid");
  const HusimiGrid g = husimi_sphere(rho, spin, grid, grid);
  sink.csv_grid("husimi.csv", g);
  sink.pgm("husimi.pgm", g.values, false);
  const json report{{"dim", g.dim}, {"max", g.values.maxCoeff()},
                    {"grid", grid}};
  sink.json_file("report.json", report);
  return report;
}

json run_husimi_torus_exp(const json& cfg, ArtifactSink& sink) {
  check_keys(cfg, {"kind", "name", "seed", "l", "state", "grid"}, "husimi-torus");
  const TorusBasis basis(int_at(cfg, "l"));
  Mat rho;
  state_from_json_or_named(cfg.at("state"), basis.n, 0.0, &rho);
  const int grid = int_at(cfg, "grid");
  const HusimiGrid g = husimi_torus(rho, grid);
  sink.csv_grid("husimi.csv", g);
  sink.pgm("husimi.pgm", g.values, false);
  const json report{{"dim", g.dim}, {"max", g.values.maxCoeff()},
                    {"grid", grid}};
  sink.json_file("report.json", report);
  return report;
}

json run_tartan_exp(const json& cfg, ArtifactSink& sink) {
  check_keys(cfg, {"kind", "name", "seed", "l", "mode", "grid", "tol", "max-steps"},
             "tartan");
  const int l = int_at(cfg, "l");
  const std::string mode_s =
      cfg.contains("mode") ? cfg.at("mode").get<std::string>() : "linear";
  TartanMode mode;
  if (mode_s == "linear")
    mode = TartanMode::LinearSpectral;
  else if (mode_s == "nonlinear")
    mode = TartanMode::NonlinearNormalized;
  else
    throw ConfigError("unknown tartan mode '" + mode_s + "'");
  const double tol = cfg.contains("tol") ? num_at(cfg, "tol") : 1e-10;
  const int max_steps = cfg.contains("max-steps") ? int_at(cfg, "max-steps") : 10000;
  const TartanOps ops = tartan_operators(l);
  TartanInvariantResult inv = [&] {
    try {
      return tartan_invariant(ops, mode, tol, max_steps);
    } catch (const std::runtime_error& e) {
      throw ConvergenceError(e.what());
    }
  }();
  if (!inv.converged) throw ConvergenceError("tartan iteration did not converge");
  const int grid = int_at(cfg, "grid");
  const HusimiGrid g = husimi_torus(inv.state.matrix(), grid);
  sink.json_file("state.json", matrix_to_json(inv.state.matrix()));
  sink.csv_grid("husimi.csv", g);
  sink.pgm("husimi.pgm", g.values, false);
  sink.csv_profile("profile_q.csv", "q-cell", g.col_profile());
  sink.csv_profile("profile_p.csv", "p-cell", g.row_profile());
  const json report{{"n", ops.n},
                    {"mode", mode_s},
                    {"leading-eigenvalue", inv.leading_eigenvalue},
                    {"residual", inv.residual},
                    {"steps", inv.steps},
                    {"excluded-mass", tartan_excluded_mass(g)}};
  sink.json_file("report.json", report);
  return report;
}

json run_barycenter_exp(const json& cfg, ArtifactSink& sink) {
  json c = cfg;
  c["kind"] = "trajectory";
  return run_trajectory_exp(c, sink, /*barycenter_only=*/true);
}

}  // namespace

// ---------------------------------------------------------------------------

RunOutcome run_experiment(const json& config, const path& out_dir,
                          const RunOptions& opt) {
  RunOutcome out;
  const auto t0 = std::chrono::steady_clock::now();
  json cfg = config;
  try {
#ifdef _OPENMP
    if (opt.threads > 0) omp_set_num_threads(opt.threads);
#endif
    if (!cfg.is_object()) throw ConfigError("config: expected a JSON object");
    if (opt.seed) cfg["seed"] = *opt.seed;
    if (!cfg.contains("seed")) cfg["seed"] = 12345;
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw std::ios_base::failure("cannot create output directory: " +
                                         out_dir.string());
    if (!cfg.contains("kind")) throw ConfigError("config: missing 'kind'");
    const std::string kind = cfg.at("kind").get<std::string>();

    ArtifactSink sink;
    sink.dir = out_dir;
    sink.format = opt.format;
    sink.pgm_comment = "config " + hex64(fnv1a64(cfg.dump()));

    json report;
    if (kind == "chaos-game")
      report = run_chaos_game_exp(cfg, sink);
    else if (kind == "push-measure")
      report = run_push_measure_exp(cfg, sink);
    else if (kind == "push-density")
      report = run_push_density_exp(cfg, sink);
    else if (kind == "dimension")
      report = run_dimension_exp(cfg, sink);
    else if (kind == "invariant-state")
      report = run_invariant_state_exp(cfg, sink);
    else if (kind == "uniqueness")
      report = run_uniqueness_exp(cfg, sink);
    else if (kind == "trajectory")
      report = run_trajectory_exp(cfg, sink, false);
    else if (kind == "barycenter")
      report = run_barycenter_exp(cfg, sink);
    else if (kind == "husimi-sphere")
      report = run_husimi_sphere_exp(cfg, sink);
    else if (kind == "husimi-torus")
      report = run_husimi_torus_exp(cfg, sink);
    else if (kind == "tartan")
      report = run_tartan_exp(cfg, sink);
    else if (kind == "compare-classical-quantum")
      throw ConfigError(
          "compare-classical-quantum runs through the compare entry point");
    else
      throw ConfigError("unknown experiment kind '" + kind + "'");

    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.manifest = json{{"config", cfg},
                        {"config-hash", hex64(fnv1a64(cfg.dump()))},
                        {"artifacts", sink.names},
                        {"duration-s", dt},
                        {"report", report},
                        {"version", std::string("qifs ") + QIFS_VERSION}};
    write_json(out_dir / "manifest.json", out.manifest);
    out.manifest["artifacts"].push_back("manifest.json");
  } catch (const ConfigError& e) {
    out.exit_code = kExitBadConfig;
    out.error = json{{"code", kExitBadConfig}, {"kind", "invalid-config"},
                     {"message", e.what()}};
  } catch (const json::exception& e) {
    out.exit_code = kExitBadConfig;
    out.error = json{{"code", kExitBadConfig}, {"kind", "invalid-config"},
                     {"message", e.what()}};
  } catch (const std::invalid_argument& e) {
    out.exit_code = kExitBadConfig;
    out.error = json{{"code", kExitBadConfig}, {"kind", "invalid-config"},
                     {"message", e.what()}};
  } catch (const ConvergenceError& e) {
    out.exit_code = kExitNoConvergence;
    out.error = json{{"code", kExitNoConvergence}, {"kind", "no-convergence"},
                     {"message", e.what()}};
  } catch (const std::ios_base::failure& e) {
    out.exit_code = kExitIoError;
    out.error = json{{"code", kExitIoError}, {"kind", "io-error"},
                     {"message", e.what()}};
  } catch (const std::filesystem::filesystem_error& e) {
    out.exit_code = kExitIoError;
    out.error = json{{"code", kExitIoError}, {"kind", "io-error"},
                     {"message", e.what()}};
  } catch (const std::exception& e) {
    out.exit_code = kExitNoConvergence;
    out.error = json{{"code", kExitNoConvergence}, {"kind", "numerical-error"},
                     {"message", e.what()}};
  }
  if (out.exit_code != kExitOk) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (!ec) {
      try {
        write_json(out_dir / "error.json", out.error);
      } catch (...) {
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Compare

namespace {

Eigen::MatrixXd coarsen(const Eigen::MatrixXd& m, int target) {
  if (m.cols() == target && (m.rows() == target || m.rows() == 1)) return m;
  const int fc = static_cast<int>(m.cols()) / target;
  const int tr = m.rows() == 1 ? 1 : target;
  const int fr = m.rows() == 1 ? 1 : static_cast<int>(m.rows()) / target;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(tr, target);
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      out(static_cast<int>(r) / fr, static_cast<int>(c) / fc) += m(r, c);
  return out;
}

EmpiricalMeasure classical_measure_for_compare(const json& cfg) {
  const std::string kind = cfg.at("kind").get<std::string>();
  json c = cfg;
  if (!c.contains("seed")) c["seed"] = 12345;
  if (kind == "chaos-game" || kind == "dimension") {
    const ClassicalIFS ifs = ifs_from_json(c.at("ifs"));
    ChaosGameOptions opt;
    opt.grid = int_at(c, "grid");
    if (c.contains("burn-in")) opt.burn_in = int_at(c, "burn-in");
    return chaos_game(ifs, x0_from_json(c, ifs.space.kind),
                      static_cast<std::uint64_t>(num_at(c, "n")),
                      c.at("seed").get<std::uint64_t>(), opt)
        .measure;
  }
  if (kind == "push-measure") {
    const ClassicalIFS ifs = ifs_from_json(c.at("ifs"));
    const int grid = int_at(c, "grid");
    EmpiricalMeasure mu = initial_measure(c, ifs, grid);
    for (int i = 0; i < int_at(c, "iterations"); ++i) mu = push_measure(ifs, mu);
    return mu;
  }
  throw ConfigError("compare: classical side must be chaos-game, dimension or push-measure");
}

struct QuantumSide {
  std::string label;
  Eigen::MatrixXd values;
};

std::vector<QuantumSide> quantum_sides_for_compare(const json& cfg) {
  const std::string kind = cfg.at("kind").get<std::string>();
  std::vector<QuantumSide> sides;
  if (kind == "tartan") {
    check_keys(cfg, {"kind", "name", "seed", "l", "ns", "mode", "grid", "tol",
                     "max-steps"},
               "compare tartan");
    std::vector<int> ns;
    if (cfg.contains("ns"))
      ns = cfg.at("ns").get<std::vector<int>>();
    else
      ns = {3 * int_at(cfg, "l")};
    const std::string mode_s =
        cfg.contains("mode") ? cfg.at("mode").get<std::string>() : "linear";
    const TartanMode mode = mode_s == "nonlinear" ? TartanMode::NonlinearNormalized
                                                  : TartanMode::LinearSpectral;
    const double tol = cfg.contains("tol") ? num_at(cfg, "tol") : 1e-10;
    const int max_steps =
        cfg.contains("max-steps") ? int_at(cfg, "max-steps") : 10000;
    const int grid = int_at(cfg, "grid");
    for (int n : ns) {
      if (n % 3 != 0) throw ConfigError("compare: tartan N must be divisible by 3");
      const TartanOps ops = tartan_operators(n / 3);
      const auto inv = tartan_invariant(ops, mode, tol, max_steps);
      sides.push_back({"N=" + std::to_string(n),
                       husimi_torus(inv.state.matrix(), grid).values});
    }
    return sides;
  }
  if (kind == "husimi-torus") {
    const TorusBasis basis(int_at(cfg, "l"));
    Mat rho;
    state_from_json_or_named(cfg.at("state"), basis.n, 0.0, &rho);
    sides.push_back({"N=" + std::to_string(basis.n),
                     husimi_torus(rho, int_at(cfg, "grid")).values});
    return sides;
  }
  // Classical config on the right-hand side is allowed (degenerate compare).
  sides.push_back({"classical", measure_to_matrix(classical_measure_for_compare(cfg))});
  return sides;
}

}  // namespace

RunOutcome run_compare(const json& classical_cfg, const json& quantum_cfg,
                       const path& out_dir, const RunOptions& opt) {
  RunOutcome out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
#ifdef _OPENMP
    if (opt.threads > 0) omp_set_num_threads(opt.threads);
#endif
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw std::ios_base::failure("cannot create output directory");

    const EmpiricalMeasure classical = classical_measure_for_compare(classical_cfg);
    Eigen::MatrixXd cm = measure_to_matrix(classical);
    const auto sides = quantum_sides_for_compare(quantum_cfg);

    json entries = json::array();
    for (const auto& side : sides) {
      const int common = static_cast<int>(
          std::min(cm.cols(), side.values.cols()));
      if (cm.cols() % common != 0 || side.values.cols() % common != 0)
        throw ConfigError("compare: grids are not divisor-aligned");
      Eigen::MatrixXd a = coarsen(cm, common);
      Eigen::MatrixXd b = coarsen(side.values, common);
      if (a.rows() != b.rows()) {
        // 1D vs 2D comparison collapses the 2D side to its column profile.
        if (a.rows() == 1) b = b.colwise().sum();
        if (b.rows() == 1) a = a.colwise().sum();
      }
      a /= a.sum();
      b /= b.sum();
      const double l1 = (a - b).cwiseAbs().sum();
      const Eigen::VectorXd pa = a.colwise().sum(), pb = b.colwise().sum();
      const double corr = pearson_correlation(pa, pb);
      // Classically excluded cells: where the classical measure vanishes.
      double excluded_quantum = 0.0, excluded_classical = 0.0;
      for (Eigen::Index r = 0; r < a.rows(); ++r)
        for (Eigen::Index c = 0; c < a.cols(); ++c)
          if (a(r, c) <= 1e-9) {
            excluded_quantum += b(r, c);
            excluded_classical += a(r, c);
          }
      entries.push_back(json{{"label", side.label},
                             {"resolution", common},
                             {"l1-distance", l1},
                             {"profile-correlation", corr},
                             {"classical-mass-on-excluded", excluded_classical},
                             {"quantum-mass-on-excluded", excluded_quantum}});
    }
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const json report{{"entries", entries}};
    out.manifest = json{{"config", json{{"classical", classical_cfg},
                                        {"quantum", quantum_cfg}}},
                        {"artifacts", {"report.json", "manifest.json"}},
                        {"duration-s", dt},
                        {"report", report},
                        {"version", std::string("qifs ") + QIFS_VERSION}};
    write_json(out_dir / "report.json", report);
    write_json(out_dir / "manifest.json", out.manifest);
  } catch (const ConfigError& e) {
    out.exit_code = kExitBadConfig;
    out.error = json{{"code", kExitBadConfig}, {"kind", "invalid-config"},
                     {"message", e.what()}};
  } catch (const json::exception& e) {
    out.exit_code = kExitBadConfig;
    out.error = json{{"code", kExitBadConfig}, {"kind", "invalid-config"},
                     {"message", e.what()}};
  } catch (const std::ios_base::failure& e) {
    out.exit_code = kExitIoError;
    out.error = json{{"code", kExitIoError}, {"kind", "io-error"},
                     {"message", e.what()}};
  } catch (const std::exception& e) {
    out.exit_code = kExitNoConvergence;
    out.error = json{{"code", kExitNoConvergence}, {"kind", "numerical-error"},
                     {"message", e.what()}};
  }
  return out;
}

// ---------------------------------------------------------------------------
// Presets

namespace {

json cantor_ifs_json() {
  return json{{"space", "interval"},
              {"maps",
               {{{"kind", "affine1d"}, {"a", 1.0 / 3.0}, {"b", 0.0}},
                {{"kind", "affine1d"}, {"a", 1.0 / 3.0}, {"b", 2.0 / 3.0}}}},
              {"probs",
               {{{"kind", "constant"}, {"value", 0.5}},
                {{"kind", "constant"}, {"value", 0.5}}}}};
}

json tartan_classical_ifs_json() {
  const json third{{1.0 / 3.0, 0.0}, {0.0, 1.0}};
  const json thirdy{{1.0, 0.0}, {0.0, 1.0 / 3.0}};
  return json{
      {"space", "square"},
      {"maps",
       {{{"kind", "affine2d"}, {"m", third}, {"c", {0.0, 0.0}}},
        {{"kind", "affine2d"}, {"m", third}, {"c", {2.0 / 3.0, 0.0}}},
        {{"kind", "affine2d"}, {"m", thirdy}, {"c", {0.0, 0.0}}},
        {{"kind", "affine2d"}, {"m", thirdy}, {"c", {0.0, 2.0 / 3.0}}}}},
      {"probs",
       {{{"kind", "constant"}, {"value", 0.25}},
        {{"kind", "constant"}, {"value", 0.25}},
        {{"kind", "constant"}, {"value", 0.25}},
        {{"kind", "constant"}, {"value", 0.25}}}}};
}

}  // namespace

json preset_config(const std::string& name) {
  const double pi = M_PI;
  if (name == "example-1")
    return json{{"kind", "dimension"},    {"name", "example-1-cantor"},
                {"seed", 101},            {"ifs", cantor_ifs_json()},
                {"n", 1000000},           {"grid", 729},
                {"x0", {0.5}},            {"scales", {3, 9, 27, 81, 243, 729}}};
  if (name == "example-2") {
    json ifs = cantor_ifs_json();
    ifs["probs"] = {{{"kind", "coordinate"}}, {{"kind", "one-minus-coordinate"}}};
    return json{{"kind", "dimension"},  {"name", "example-2-place-dependent"},
                {"seed", 102},          {"ifs", ifs},
                {"n", 1000000},         {"grid", 729},
                {"x0", {0.5}},          {"scales", {3, 9, 27, 81, 243, 729}}};
  }
  if (name == "example-3")
    return json{{"kind", "dimension"}, {"name", "example-3-tartan-classical"},
                {"seed", 103},         {"ifs", tartan_classical_ifs_json()},
                {"n", 1000000},        {"grid", 729},
                {"x0", {0.5, 0.5}},    {"scales", {3, 9, 27, 81, 243, 729}}};
  if (name == "example-4") {
    const double beta = 0.9;
    return json{{"kind", "chaos-game"},
                {"name", "example-4-sphere-rotations"},
                {"seed", 104},
                {"ifs",
                 json{{"space", "sphere"},
                      {"maps",
                       {{{"kind", "rotation"}, {"axis", {0.0, 0.0, 1.0}}, {"angle", 1.0}},
                        {{"kind", "rotation"},
                         {"axis", {std::sin(beta), 0.0, std::cos(beta)}},
                         {"angle", 2.2}}}},
                      {"probs",
                       {{{"kind", "constant"}, {"value", 0.5}},
                        {{"kind", "constant"}, {"value", 0.5}}}}}},
                {"n", 1000000},
                {"grid", 60},
                {"x0", {1.0, 0.0, 0.0}}};
  }
  if (name == "example-5")
    return json{{"kind", "chaos-game"},
                {"name", "example-5-tent-bernoulli"},
                {"seed", 105},
                {"ifs",
                 json{{"space", "interval"},
                      {"maps", {{{"kind", "tent"}}, {{"kind", "bernoulli"}}}},
                      {"probs",
                       {{{"kind", "constant"}, {"value", 0.5}},
                        {{"kind", "constant"}, {"value", 0.5}}}}}},
                {"n", 1000000},
                {"grid", 100},
                {"x0", {0.25}}};
  if (name == "example-6")
    return json{{"kind", "trajectory"},
                {"name", "example-6-pure-unitary"},
                {"seed", 106},
                {"qifs",
                 json{{"kind", "channel"},
                      {"channel", json{{"kind", "rotations"},
                                       {"j", 0.5},
                                       {"theta1", 1.0},
                                       {"theta2", 0.7}}}}},
                {"initial", json{{"basis", 0}}},
                {"n", 100000}};
  if (name == "example-7")
    return json{{"kind", "invariant-state"},
                {"name", "example-7-unitary-mixed"},
                {"seed", 107},
                {"channel", json{{"kind", "rotations"},
                                 {"j", 0.5},
                                 {"theta1", 1.0},
                                 {"theta2", 0.7}}},
                {"method", "spectral"}};
  if (name == "example-8") {
    Mat pulse = (pi / 3.0) * pauli(1);
    return json{{"kind", "invariant-state"},
                {"name", "example-8-atomic"},
                {"seed", 108},
                {"channel", json{{"kind", "atomic"},
                                 {"bz", 1.0},
                                 {"period", pi},
                                 {"pulse", matrix_to_json(pulse)},
                                 {"p", 0.5}}},
                {"method", "spectral"}};
  }
  if (name == "example-9") {
    Mat rho1 = Mat::Zero(2, 2), rho2 = Mat::Zero(2, 2);
    rho1(0, 0) = 1.0;
    rho2(1, 1) = 1.0;
    Mat mixed = 0.5 * Mat::Identity(2, 2);
    return json{{"kind", "barycenter"},
                {"name", "example-9-homothety"},
                {"seed", 109},
                {"qifs", json{{"kind", "homothety"},
                              {"dim", 2},
                              {"targets", {matrix_to_json(rho1), matrix_to_json(rho2)}},
                              {"probs", {0.5, 0.5}}}},
                {"initial", json{{"matrix", matrix_to_json(rho1)}}},
                {"n", 100000},
                {"reference", matrix_to_json(mixed)}};
  }
  if (name == "example-10")
    return json{{"kind", "invariant-state"},
                {"name", "example-10-depolarizing"},
                {"seed", 110},
                {"channel", json{{"kind", "depolarizing"}, {"p", 0.3}}},
                {"method", "spectral"}};
  if (name == "example-11")
    return json{{"kind", "invariant-state"},
                {"name", "example-11-spin2-rotations"},
                {"seed", 111},
                {"channel", json{{"kind", "rotations"},
                                 {"j", 2.0},
                                 {"theta1", 1.0},
                                 {"theta2", 0.7}}},
                {"method", "spectral"}};
  if (name == "example-12")
    return json{{"kind", "trajectory"},
                {"name", "example-12-latitude"},
                {"seed", 112},
                {"qifs", json{{"kind", "latitude"},
                              {"j", 10.0},
                              {"theta1", 1.0},
                              {"theta2", 0.7}}},
                {"initial", json{{"coherent", json{{"theta", 2.0}, {"phi", 0.8}}}}},
                {"n", 20000}};
  if (name == "example-13")
    return json{{"kind", "trajectory"},
                {"name", "example-13-kicked-top"},
                {"seed", 113},
                {"qifs",
                 json{{"kind", "channel"},
                      {"channel", json{{"kind", "kicked-top-pair"},
                                       {"j", 3.0},
                                       {"alpha", pi / 4.0},
                                       {"beta", 2.0},
                                       {"delta", 0.05},
                                       {"p", 0.5}}}}},
                {"initial", json{{"coherent", json{{"theta", 1.0}, {"phi", 0.5}}}}},
                {"n", 500},
                {"curve", true}};
  if (name == "example-14")
    return json{{"kind", "tartan"},     {"name", "example-14-quantum-tartan"},
                {"seed", 114},          {"l", 27},
                {"mode", "linear"},     {"grid", 54},
                {"tol", 1e-10},         {"max-steps", 20000}};
  throw ConfigError("unknown preset '" + name + "'");
}

std::vector<std::pair<std::string, std::string>> catalogue() {
  return {
      {"example-1",
       "Cantor IFS on [0,1]: two affine 1/3-contractions, p=1/2; chaos game, "
       "box dimension ~0.6309"},
      {"example-2",
       "Cantor maps with place-dependent p1(x)=x; non-uniform measure on the "
       "Cantor set"},
      {"example-3",
       "Four maps on the unit square contracting x or y by 1/3, p=1/4; tartan "
       "support, dimension ~1.2619"},
      {"example-4",
       "Random sphere rotations (z-axis angle 1.0, inclined axis angle 2.2); "
       "Lebesgue measure invariant"},
      {"example-5",
       "Tent + Bernoulli maps, p=1/2; Lebesgue measure on [0,1] invariant"},
      {"example-6",
       "Pure-state unitary QIFS (spin-1/2 rotations, theta1=1.0, theta2=0.7); "
       "trajectory and barycenter"},
      {"example-7",
       "Mixed-state casting of example-6; invariant state of the induced "
       "channel is 1/N"},
      {"example-8",
       "Randomly pulsed two-level atom: Floquet pair with pulse (pi/3)sigma1, "
       "p=1/2; unique invariant state 1/2"},
      {"example-9",
       "Homothety QIFS toward orthogonal projectors (ratio 1/3), p=1/2; "
       "barycenter (rho1+rho2)/2"},
      {"example-10",
       "Qubit depolarizing channel, p=0.3; unique invariant state 1/2, Bloch "
       "contraction 1-4p/3"},
      {"example-11",
       "Spin-2 rotation QIFS exp(i 1.0 Jz), exp(i 0.7 Jx), p=1/2; irreducible "
       "pair, invariant state 1/N"},
      {"example-12",
       "Latitude-weighted rotation QIFS, j=10: p1 = 1/2 + <Jz>/2j; pole state "
       "|j,j> invariant"},
      {"example-13",
       "Randomly kicked top, j=3, alpha=pi/4, beta=2, delta=0.05; exponential "
       "approach to 1/N"},
      {"example-14",
       "Quantum tartan, N=3L=81, linear-spectral mode; Husimi grid "
       "concentrates on a Cantor cross"},
  };
}

}  // namespace qifs
