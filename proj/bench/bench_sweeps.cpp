// Serial reference vs parallel sweep timings. Usage: bench_sweeps [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <algorithm>
#include <functional>
#include <string>

#include "levsim/sweeps.hpp"

using namespace levsim;

namespace {

double time_best(int repeats, const std::function<void()>& f) {
  double best = 1e300;
  for (int i = 0; i < repeats; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-28s serial %9.4f s   parallel %9.4f s   speedup %5.2fx\n", name, serial, parallel,
              serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::max(1, std::atoi(argv[1])) : 3;
  std::printf("threads: %d\n", sweep_threads());

  SystemConfig fig1;
  const auto model = evaluate_point(fig1, 0.8, RingMode::fixed_charge).model;
  const auto omega = linear_grid(-3.0, 3.0, 200001, model.coeffs.kappa);
  report("spectrum (200001 points)",
         time_best(repeats, [&] { reference::spectrum_sweep(model, omega); }),
         time_best(repeats, [&] { spectrum_sweep(model, omega); }));

  SystemConfig fig2;
  fig2.ring = RingSource::field(2.5e11);
  const auto detuning = linear_grid(0.01, 1.2, 200);
  for (auto mode : {RingMode::fixed_charge, RingMode::resonant}) {
    char name[64];
    std::snprintf(name, sizeof name, "entanglement %s (200)", std::string(to_string(mode)).c_str());
    report(name, time_best(repeats, [&] { reference::entanglement_sweep(fig2, detuning, mode); }),
           time_best(repeats, [&] { entanglement_sweep(fig2, detuning, mode); }));
  }

  const auto d_map = linear_grid(-1.5, 1.5, 41);
  const auto p_map = linear_grid(3e10, 1.5e11, 21);
  const ConfigSetter set = [](SystemConfig& c, double v) { c.ring = RingSource::field(v); };
  report("stability map (41x21)", time_best(repeats, [&] { reference::stability_map(fig1, d_map, p_map, set); }),
         time_best(repeats, [&] { stability_map(fig1, d_map, p_map, set); }));
  return 0;
}
