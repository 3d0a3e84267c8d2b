// Compare the second-order energy with a Numerov solve for a few states.
#include <cstdio>

#include "yukawa/yukawa.hpp"

int main() {
  const yukawa::PhysicalContext ctx(1.0, 0.5, 16.0, 0.2);
  for (const auto s : {yukawa::StateLabel(0, 0), yukawa::StateLabel(1, 0), yukawa::StateLabel(0, 1),
                       yukawa::StateLabel(1, 1)}) {
    const double pert = yukawa::total_energy(ctx, s).total;
    const auto sol = yukawa::solve_bound_state(ctx, s.ell, s.n);
    std::printf("%-3s perturbative %12.6f  numerov %12.6f  diff %10.2e\n", yukawa::spectroscopic_label(s).c_str(),
                pert, sol.energy, pert - sol.energy);
  }
}
