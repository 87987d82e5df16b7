#pragma once

#include <array>

namespace otto {

// Two exchange-coupled spin-1/2 particles in a common longitudinal field h.
// Working basis, fixed once for the whole code base:
//   0 : both spins up      E = +h   (magnetization slope +1)
//   1 : symmetric zero     E =  0   (slope 0, field-independent)
//   2 : antisymmetric zero E = -J   (slope 0, field-independent)
//   3 : both spins down    E = -h   (slope -1)
// Levels 1 and 2 never move with the field; level 2 carries the coupling.
inline constexpr int kLevels = 4;
inline constexpr std::array<double, kLevels> kFieldSlopes = {+1.0, 0.0, 0.0, -1.0};
inline constexpr int kIdleLevel = 2;

std::array<double, kLevels> energies(double h, double J);

// One equilibrium state.  z is the closed-form partition function
// 1 + e^{beta J} + 2 cosh(beta h) and may overflow to +inf at extreme
// beta; log_z is always finite and populations are computed with the
// dominant exponent factored out, so they stay exact down to T ~ 1e-6.
struct ThermalPoint {
  double beta = 0.0;
  double h = 0.0;
  double J = 0.0;
  double x = 0.0;  // beta * h
  std::array<double, kLevels> populations{};
  double z = 0.0;
  double log_z = 0.0;
};

ThermalPoint thermal_point(double beta, double h, double J);

struct MagneticObservables {
  double mean_M = 0.0;   // population-weighted magnetization, p3 - p0
  double var_M = 0.0;    // second central moment of the magnetization
  double chi = 0.0;      // isothermal susceptibility, beta * var_M
  double idle_pop = 0.0; // population of the coupled field-independent level
};

MagneticObservables magnetic_observables(const ThermalPoint& tp);

// -log(z)/beta, evaluated from log_z so it survives z overflow.
double free_energy(const ThermalPoint& tp);

}  // namespace otto
