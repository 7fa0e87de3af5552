#pragma once

namespace skyrme::variational {

// Regularized potential:
//   F(psi) = -3 psi^2 (1 - psi^2/2)   for |psi| < 1,
//   F(psi) = 0                        for |psi| >= sqrt(2),
// bridged monotonically from -3/2 to 0 on 1 <= |psi| <= sqrt(2).
// The inner branch has F'(+-1) = 0, so any bridge with vanishing end
// slopes joins C^1. The minimizer never leaves |psi| <= 1, which makes
// results independent of the bridge choice; a second bridge is kept
// around so tests can demonstrate that.
enum class Bridge { QuinticStep, CubicStep };

struct Potential {
  Bridge bridge = Bridge::QuinticStep;

  double F(double psi) const;
  double dF(double psi) const;
  double d2F(double psi) const;
};

}  // namespace skyrme::variational
