#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace otto {

// Neumaier-compensated accumulator: keeps long sums of mixed-sign terms
// accurate to a few ulps of the true total regardless of cancellation order.
struct NeumaierSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::fabs(sum) >= std::fabs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }

  double value() const { return sum + comp; }
};

// 17 significant digits round-trip any IEEE-754 double exactly, so text
// output produced with this is bit-reproducible.
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace otto
