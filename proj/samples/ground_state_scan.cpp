// Perturbative 1s energy against screening, hbar = m = A = 1.
#include <cstdio>

#include "yukawa/yukawa.hpp"

int main() {
  const yukawa::StateLabel ground(0, 0);
  std::printf("%8s %14s %14s %14s\n", "alpha", "epsilon+shift", "de1+de2", "total");
  for (double alpha : {0.0, 0.01, 0.02, 0.05, 0.1, 0.2}) {
    const yukawa::PhysicalContext ctx(1.0, 1.0, 1.0, alpha);
    const auto e = yukawa::total_energy(ctx, ground);
    std::printf("%8.3f %14.8f %14.8f %14.8f\n", alpha, e.epsilon + e.constant_shift, e.de1 + e.de2, e.total);
  }
}
