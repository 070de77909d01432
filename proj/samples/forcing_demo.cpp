// Solves the Bratu problem with several forcing strategies and prints the
// iteration counts and the forcing terms each one chose.

#include <cstdio>

#include "inewton/inewton.hpp"

int main() {
  using namespace inewton;
  const NonlinearProblem bratu = problems::bratu2d(32, 5.0);
  ForcingConfig fcfg;
  NewtonConfig ncfg;
  ncfg.rtol = 1e-10;
  KrylovConfig kcfg;

  std::printf("%-12s %6s %6s  %s\n", "strategy", "outer", "inner", "eta per outer iteration");
  for (const char* label : {"fixed:1e-6", "fixed:1e-2", "ew1", "ew2", "botti", "inex1steep", "inex2steep"}) {
    const NewtonReport rep = solve(bratu, bratu.initial_guess, parse_strategy(label), fcfg, ncfg, kcfg);
    std::printf("%-12s %6d %6d ", label, rep.total_outer, rep.total_inner);
    for (const auto& it : rep.iterations) std::printf(" %.1e", it.eta_used);
    std::printf("%s\n", rep.converged ? "" : "  (not converged)");
  }
  return 0;
}
