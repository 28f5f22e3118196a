// Timing comparison between the serial reference kernels and their
// OpenMP counterparts: chaos-game sampling, Husimi grid evaluation,
// superoperator assembly.

#include <chrono>
#include <cstdio>

#include "qifs/channel.hpp"
#include "qifs/classical.hpp"
#include "qifs/invariant.hpp"
#include "qifs/sampling.hpp"
#include "qifs/spin.hpp"
#include "qifs/torus.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using clock_type = std::chrono::steady_clock;

template <typename F>
double time_best_of(int reps, F&& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = clock_type::now();
    fn();
    const double dt = std::chrono::duration<double>(clock_type::now() - t0).count();
    best = std::min(best, dt);
  }
  return best;
}

void report(const char* name, double serial_s, double parallel_s) {
  std::printf("%-28s serial %8.3f ms   parallel %8.3f ms   speedup %.2fx\n",
              name, serial_s * 1e3, parallel_s * 1e3, serial_s / parallel_s);
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP disabled; parallel kernels run serially\n");
#endif

  // Chaos game: Cantor IFS, 4 streams.
  {
    qifs::ClassicalIFS ifs;
    ifs.space.kind = qifs::SpaceKind::Interval;
    ifs.maps = {qifs::Affine1D{1.0 / 3.0, 0.0}, qifs::Affine1D{1.0 / 3.0, 2.0 / 3.0}};
    ifs.probs = {qifs::ConstantProb{0.5}, qifs::ConstantProb{0.5}};
    qifs::ChaosGameOptions opt;
    opt.grid = 729;
    opt.streams = 4;
    const qifs::Point x0(0.5, 0, 0);
    const double ts = time_best_of(
        3, [&] { qifs::chaos_game_serial(ifs, x0, 2000000, 7, opt); });
    const double tp =
        time_best_of(3, [&] { qifs::chaos_game(ifs, x0, 2000000, 7, opt); });
    report("chaos_game 2e6 steps", ts, tp);
  }

  // Husimi grid on the torus, N = 81, 54x54 cells.
  {
    const qifs::TartanOps ops = qifs::tartan_operators(27);
    const auto inv =
        qifs::tartan_invariant(ops, qifs::TartanMode::LinearSpectral, 1e-8, 5000);
    const qifs::Mat rho = inv.state.matrix();
    const double ts =
        time_best_of(3, [&] { qifs::husimi_torus_serial(rho, 54); });
    const double tp = time_best_of(3, [&] { qifs::husimi_torus(rho, 54); });
    report("husimi_torus N=81 M=54", ts, tp);
  }

  // Husimi grid on the sphere, j = 20, 64x64 cells.
  {
    const double j = 20.0;
    const qifs::SpinBasis basis(j);
    const qifs::Mat rho =
        qifs::Mat::Identity(basis.n, basis.n) / static_cast<double>(basis.n);
    const double ts =
        time_best_of(3, [&] { qifs::husimi_sphere_serial(rho, j, 64, 64); });
    const double tp = time_best_of(3, [&] { qifs::husimi_sphere(rho, j, 64, 64); });
    report("husimi_sphere j=20 64x64", ts, tp);
  }

  // Superoperator assembly, N = 24, four Kraus operators.
  {
    qifs::Rng rng(11);
    const auto kraus = qifs::random_kraus_set(24, 4, rng);
    const auto chan = qifs::QuantumChannel::from_kraus(kraus);
    const double ts =
        time_best_of(3, [&] { qifs::superoperator_of_serial(chan); });
    const double tp = time_best_of(3, [&] { qifs::superoperator_of(chan); });
    report("superoperator N=24 k=4", ts, tp);
  }

  return 0;
}
