#pragma once

#include "otto/cycle.hpp"

namespace otto {

// Solve x * tanh(x) = y for the non-negative root.  Strictly increasing on
// x >= 0, so the root is unique.  Validity: y >= 0 and finite, tolerance in
// (0, 1e-3]; convergence to |x tanh x - y| <= tol * max(1, y).
double inverse_xtanh(double y, double tol = 1e-12);

// Lower bound csch^2( g(sigma/2) ) on the squared relative fluctuation of
// any current, where g is the inverse of x*tanh(x).  Strictly decreasing in
// sigma; +inf at sigma = 0 (every finite ratio trivially exceeds it there);
// negative sigma is rejected.
double tur_bound(double sigma);

struct TurEvaluation {
  double sigma = 0.0;     // entropy production per cycle, clamped at 0
  double bound = 0.0;     // tur_bound(sigma)
  double observed = 0.0;  // var_W / mean_W^2
  double slack = 0.0;     // observed - bound
  bool satisfied = false; // slack >= -1e-10
};

inline constexpr double kTurSlackTol = 1e-10;

// Evaluate the work-fluctuation bound for one cycle.  Throws
// undefined_error when mean_W = 0 (the observed ratio does not exist).
// Entropy production is clamped to [0, inf) before the bound is evaluated
// so that -1e-16-level rounding cannot masquerade as a violation.
TurEvaluation verify_tur(const EngineParams& p);

}  // namespace otto
