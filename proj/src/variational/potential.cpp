#include "variational/potential.hpp"

#include <cmath>

namespace skyrme::variational {

namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kSpan = kSqrt2 - 1.0;

// s runs 0 at |psi| = sqrt(2) to 1 at |psi| = 1.
inline double sval(double a) { return (kSqrt2 - a) / kSpan; }

inline double step(Bridge b, double s) {
  return b == Bridge::QuinticStep ? s * s * s * (6.0 * s * s - 15.0 * s + 10.0)
                                  : s * s * (3.0 - 2.0 * s);
}

inline double step_d(Bridge b, double s) {
  return b == Bridge::QuinticStep ? 30.0 * s * s * (s - 1.0) * (s - 1.0)
                                  : 6.0 * s * (1.0 - s);
}

inline double step_d2(Bridge b, double s) {
  return b == Bridge::QuinticStep ? 60.0 * s * (s - 1.0) * (2.0 * s - 1.0)
                                  : 6.0 - 12.0 * s;
}

}  // namespace

double Potential::F(double psi) const {
  const double a = std::abs(psi);
  if (a < 1.0) return -3.0 * psi * psi * (1.0 - 0.5 * psi * psi);
  if (a >= kSqrt2) return 0.0;
  return -1.5 * step(bridge, sval(a));
}

double Potential::dF(double psi) const {
  const double a = std::abs(psi);
  if (a < 1.0) return -6.0 * psi + 6.0 * psi * psi * psi;
  if (a >= kSqrt2) return 0.0;
  const double dsda = -1.0 / kSpan;
  const double sign = psi >= 0.0 ? 1.0 : -1.0;
  return -1.5 * step_d(bridge, sval(a)) * dsda * sign;
}

double Potential::d2F(double psi) const {
  const double a = std::abs(psi);
  if (a < 1.0) return -6.0 + 18.0 * psi * psi;
  if (a >= kSqrt2) return 0.0;
  return -1.5 * step_d2(bridge, sval(a)) / (kSpan * kSpan);
}

}  // namespace skyrme::variational
