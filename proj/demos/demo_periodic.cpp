// Prints the two periodic examples: the circulant chord graph under the
// global model and the 6-vertex graph under the non-moralizing model.

#include "qswlab/qswlab.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

using namespace qswlab;

namespace {

void show(const char* title, const PeriodicityCase& c) {
  PeriodicSetup s = periodicity_setup(c);
  std::printf("%s: period %.6f\n", title, s.period);
  std::printf("  %-8s %-10s %s\n", "t", "P(v0)", "||rho_{t+T} - rho_t||_F");
  for (int i = 0; i <= 8; ++i) {
    const double t = s.period * i / 8.0;
    DensityMatrix a = evolve(s.walk.superoperator, s.initial, t);
    DensityMatrix b = evolve(s.walk.superoperator, s.initial, t + s.period);
    std::printf("  %-8.4f %-10.6f %.2e\n", t, s.walk.distribution(a.matrix())[0], (b.matrix() - a.matrix()).norm());
  }
}

}  // namespace

int main(int argc, char** argv) {
  const double omega = argc > 1 ? std::strtod(argv[1], nullptr) : 0.5;
  try {
    show("circulant_chord_graph(2), global", {PeriodicityKind::circulant, 2, omega});
    show("fig6, non-moralizing", {PeriodicityKind::nonmoralizing_fig6, 2, omega});
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
