#pragma once

#include <optional>

namespace otto {

// Four-stroke cycle: equilibrate with the cold bath (T_c) at field h_i,
// quench the field to h_f, equilibrate with the hot bath (T_h) at h_f,
// quench back to h_i.  The field-independent levels make the quenches
// population-preserving, so every mean and variance below is exact.
//
// Sign conventions: work > 0 is done ON the working medium, heat > 0 flows
// INTO the medium.  An engine therefore has mean_W < 0.
struct EngineParams {
  EngineParams(double J, double h_i, double h_f, double T_c, double T_h);

  double J;
  double h_i;
  double h_f;
  double T_c;
  double T_h;

  double delta_h() const { return h_f - h_i; }
  double beta_c() const { return 1.0 / T_c; }
  double beta_h() const { return 1.0 / T_h; }
};

// Operating regime by the signs of mean work and the bath heats.
// The decision table (W = mean work on the medium, Q_hotter / Q_colder =
// heat drawn from whichever bath is actually hotter / colder):
//
//   |W| <= 1e-14                      -> Degenerate (sign of W is noise)
//   W < 0, T_h >= T_c                 -> Engine
//   W < 0, T_h <  T_c                 -> CounterRotatingEngine
//   W > 0, Q_colder > 0               -> Refrigerator (pumps the cold bath)
//   W > 0, Q_colder <= 0, Q_hotter > 0 -> Accelerator (boosts hot->cold flow)
//   W > 0, both heats <= 0            -> Heater (work dumped into both baths)
//
// The first law forbids W > 0 with both heats positive, so the table is
// exhaustive.
enum class Regime {
  Engine,
  CounterRotatingEngine,
  Refrigerator,
  Accelerator,
  Heater,
  Degenerate,
};

inline constexpr double kDegenerateWorkBand = 1e-14;

const char* to_string(Regime r);

struct MeanWork {
  double W1 = 0.0;  // compression stroke h_i -> h_f after cold equilibration
  double W2 = 0.0;  // expansion stroke h_f -> h_i after hot equilibration
  double W = 0.0;   // cycle total W1 + W2
};

struct WorkVariance {
  double var_W1 = 0.0;
  double var_W2 = 0.0;
  double var_W = 0.0;  // the strokes sample independent equilibria: no cross term
};

struct MeanHeat {
  double Qh = 0.0;  // from the bath coupled at h_f
  double Qc = 0.0;  // from the bath coupled at h_i
};

struct Efficiency {
  // -W/Qh in the closed form eta_0 / (1 + (J/h_f) * Omega); empty when the
  // hot-stroke heat vanishes so the ratio does not exist.
  std::optional<double> eta_th;
  double eta_0 = 0.0;  // uncoupled value 1 - h_i/h_f
  double eta_C = 0.0;  // Carnot value 1 - min(T)/max(T)
  // Idle-level population shift divided by the magnetization shift; empty
  // when the magnetization shift is zero.
  std::optional<double> Omega;
};

MeanWork mean_work(const EngineParams& p);
WorkVariance work_variance(const EngineParams& p);
MeanHeat mean_heat(const EngineParams& p);
Efficiency efficiency(const EngineParams& p);

// Total entropy dumped into the two baths over one cycle,
// -Qh/T_h - Qc/T_c.  Non-negative for every valid parameter set.
double entropy_production(const EngineParams& p);

Regime classify_regime(const EngineParams& p);

// -W divided by the heat drawn from whichever bath is hotter.  Equal to
// eta_th when T_h >= T_c; in counter-rotating operation (T_c > T_h) the
// roles swap and this is -W/Qc.  Empty when that heat vanishes.  This is
// the ratio bounded by eta_C whenever entropy production is positive.
std::optional<double> hot_bath_efficiency(const EngineParams& p);

// Everything a scan cell needs, computed in one pass.
struct CycleObservables {
  double mean_W1 = 0.0, mean_W2 = 0.0, mean_W = 0.0;
  double var_W1 = 0.0, var_W2 = 0.0, var_W = 0.0;
  double mean_Qh = 0.0, mean_Qc = 0.0;
  double eta_0 = 0.0, eta_C = 0.0;
  std::optional<double> eta_th;
  std::optional<double> Omega;
  double mean_Sigma = 0.0;
  std::optional<double> rel_fluct_W;  // sqrt(var_W)/|mean_W|; empty at mean_W = 0
  Regime regime = Regime::Degenerate;
};

CycleObservables cycle_observables(const EngineParams& p);

// Exact T_h -> inf, T_c -> 0 limits (hot populations uniform, cold medium
// in its ground state).  Requires 0 <= J < h_i < h_f so the cold ground
// state is the fully aligned level.
struct AsymptoticLimits {
  double mean_W = 0.0;
  double var_W = 0.0;
  double cov_W = 0.0;       // cross-covariance of the two stroke works
  double rel_fluct_W = 0.0; // always 1/sqrt(2) in this limit
  double eta_th = 0.0;
  double var_eta = 0.0;     // variance of the scaled efficiency -W/<Qh>
};

AsymptoticLimits asymptotic_limits(double J, double h_i, double h_f);

}  // namespace otto
