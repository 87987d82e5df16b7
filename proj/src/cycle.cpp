#include "otto/cycle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "otto/errors.hpp"

namespace otto {

namespace {

// sinh(beta h)/Z, cosh(beta h)/Z and e^{beta J}/Z for
// Z = 1 + e^{beta J} + 2 cosh(beta h), with the dominant exponent factored
// out so the ratios stay exact for beta up to ~1e6.  This is the cycle
// module's own closed-form route; the generic population route lives in
// spectrum and the tests pin the two against each other.
struct GibbsRatios {
  double sinh_z;        // sinh(beta h) / Z
  double cosh_z;        // cosh(beta h) / Z
  double idle_z;        // e^{beta J} / Z, population of the coupled idle level
  double zero_z;        // 1 / Z, population of the uncoupled idle level
  double m_deficit;     // 1 - mean magnetization, exact complement
  double idle_deficit;  // 1 - idle_z, exact complement
};

GibbsRatios gibbsRatios(double beta, double h, double J) {
  const double x = beta * h;
  const double bj = beta * J;
  const double m = std::max({0.0, bj, std::fabs(x)});
  const double ep = std::exp(x - m);
  const double en = std::exp(-x - m);
  const double e0 = std::exp(-m);
  const double ej = std::exp(bj - m);
  const double z = e0 + ej + ep + en;
  // The two complements are sums of raw exponentials, so they keep full
  // relative accuracy when they are exponentially small -- the regime where
  // 1 - (ep - en)/z and 1 - ej/z would round away entirely.
  return {0.5 * (ep - en) / z, 0.5 * (ep + en) / z, ej / z, e0 / z,
          (e0 + ej + 2.0 * en) / z, (e0 + ep + en) / z};
}

double meanM(const GibbsRatios& g) {
  return 2.0 * g.sinh_z;
}

// 2 cosh_z - 4 sinh_z^2 rearranged into non-negative products,
// (p0+p3)(p1+p2) + 4 p0 p3 with p0 p3 = 1/Z^2, keeping full relative
// accuracy when the variance is exponentially small at large beta.
double varM(const GibbsRatios& g) {
  return 2.0 * g.cosh_z * (g.zero_z + g.idle_z) + 4.0 * g.zero_z * g.zero_z;
}

// Difference of two bath magnetizations.  When both saturate towards 1
// their direct difference loses everything to rounding; the deficits
// 1 - M are then exponentially small with full relative accuracy, and
// M_b - M_a = deficit_a - deficit_b exactly.
double deltaM(const GibbsRatios& a, const GibbsRatios& b) {
  if (a.m_deficit < 0.1 && b.m_deficit < 0.1) return a.m_deficit - b.m_deficit;
  return meanM(b) - meanM(a);
}

// Same complement trick for the coupled idle populations.
double deltaIdle(const GibbsRatios& a, const GibbsRatios& b) {
  if (a.idle_deficit < 0.1 && b.idle_deficit < 0.1)
    return a.idle_deficit - b.idle_deficit;
  return b.idle_z - a.idle_z;
}

}  // namespace

EngineParams::EngineParams(double J_, double h_i_, double h_f_, double T_c_, double T_h_)
    : J(J_), h_i(h_i_), h_f(h_f_), T_c(T_c_), T_h(T_h_) {
  std::string bad;
  auto flag = [&bad](bool ok, const char* name) {
    if (ok) return;
    if (!bad.empty()) bad += ",";
    bad += name;
  };
  flag(std::isfinite(J), "J");
  flag(std::isfinite(h_i) && h_i > 0.0, "h_i");
  flag(std::isfinite(h_f) && h_f > 0.0, "h_f");
  flag(std::isfinite(T_c) && T_c > 0.0, "T_c");
  flag(std::isfinite(T_h) && T_h > 0.0, "T_h");
  if (bad.empty() && h_i == h_f) bad = "h_i,h_f (field endpoints must differ)";
  if (!bad.empty()) throw validation_error("EngineParams: invalid " + bad);
}

const char* to_string(Regime r) {
  switch (r) {
    case Regime::Engine: return "engine";
    case Regime::CounterRotatingEngine: return "counter_rotating_engine";
    case Regime::Refrigerator: return "refrigerator";
    case Regime::Accelerator: return "accelerator";
    case Regime::Heater: return "heater";
    case Regime::Degenerate: return "degenerate";
  }
  return "unknown";
}

MeanWork mean_work(const EngineParams& p) {
  const double dh = p.delta_h();
  const auto gc = gibbsRatios(p.beta_c(), p.h_i, p.J);
  const auto gh = gibbsRatios(p.beta_h(), p.h_f, p.J);
  MeanWork w;
  w.W1 = -dh * meanM(gc);  // quench dE/dh = -M per level, populations frozen
  w.W2 = +dh * meanM(gh);
  w.W = dh * deltaM(gc, gh);
  return w;
}

WorkVariance work_variance(const EngineParams& p) {
  const double dh2 = p.delta_h() * p.delta_h();
  const auto gc = gibbsRatios(p.beta_c(), p.h_i, p.J);
  const auto gh = gibbsRatios(p.beta_h(), p.h_f, p.J);
  WorkVariance v;
  v.var_W1 = dh2 * varM(gc);
  v.var_W2 = dh2 * varM(gh);
  v.var_W = v.var_W1 + v.var_W2;
  return v;
}

MeanHeat mean_heat(const EngineParams& p) {
  const auto gc = gibbsRatios(p.beta_c(), p.h_i, p.J);
  const auto gh = gibbsRatios(p.beta_h(), p.h_f, p.J);
  const double W = mean_work(p).W;
  MeanHeat q;
  // Energy balance of the hot stroke: the field term is tied to the mean
  // work, the coupling term to the idle-level population shift.
  q.Qh = p.J * deltaIdle(gh, gc) - (p.h_f / p.delta_h()) * W;
  q.Qc = -W - q.Qh;
  return q;
}

Efficiency efficiency(const EngineParams& p) {
  Efficiency e;
  e.eta_0 = 1.0 - p.h_i / p.h_f;
  e.eta_C = 1.0 - std::min(p.T_c, p.T_h) / std::max(p.T_c, p.T_h);
  const auto gc = gibbsRatios(p.beta_c(), p.h_i, p.J);
  const auto gh = gibbsRatios(p.beta_h(), p.h_f, p.J);
  const double dM = deltaM(gc, gh);
  if (dM != 0.0) e.Omega = deltaIdle(gc, gh) / dM;
  const double Qh = mean_heat(p).Qh;
  if (Qh != 0.0) {
    // -W/Qh reduced to the coupling-corrected form; when the magnetization
    // shift vanishes the numerator -W is exactly zero.
    e.eta_th = e.Omega ? e.eta_0 / (1.0 + (p.J / p.h_f) * *e.Omega) : 0.0;
  }
  return e;
}

double entropy_production(const EngineParams& p) {
  const auto q = mean_heat(p);
  return -p.beta_h() * q.Qh - p.beta_c() * q.Qc;
}

Regime classify_regime(const EngineParams& p) {
  const double W = mean_work(p).W;
  if (std::fabs(W) <= kDegenerateWorkBand) return Regime::Degenerate;
  if (W < 0.0)
    return p.T_h >= p.T_c ? Regime::Engine : Regime::CounterRotatingEngine;
  const auto q = mean_heat(p);
  const double q_hotter = p.T_h >= p.T_c ? q.Qh : q.Qc;
  const double q_colder = p.T_h >= p.T_c ? q.Qc : q.Qh;
  if (q_colder > 0.0) return Regime::Refrigerator;
  if (q_hotter > 0.0) return Regime::Accelerator;
  return Regime::Heater;
}

std::optional<double> hot_bath_efficiency(const EngineParams& p) {
  const auto q = mean_heat(p);
  const double q_hotter = p.T_h >= p.T_c ? q.Qh : q.Qc;
  if (q_hotter == 0.0) return std::nullopt;
  return -mean_work(p).W / q_hotter;
}

CycleObservables cycle_observables(const EngineParams& p) {
  CycleObservables o;
  const auto w = mean_work(p);
  const auto v = work_variance(p);
  const auto q = mean_heat(p);
  const auto e = efficiency(p);
  o.mean_W1 = w.W1;
  o.mean_W2 = w.W2;
  o.mean_W = w.W;
  o.var_W1 = v.var_W1;
  o.var_W2 = v.var_W2;
  o.var_W = v.var_W;
  o.mean_Qh = q.Qh;
  o.mean_Qc = q.Qc;
  o.eta_0 = e.eta_0;
  o.eta_C = e.eta_C;
  o.eta_th = e.eta_th;
  o.Omega = e.Omega;
  o.mean_Sigma = entropy_production(p);
  if (w.W != 0.0) o.rel_fluct_W = std::sqrt(v.var_W) / std::fabs(w.W);
  o.regime = classify_regime(p);
  return o;
}

AsymptoticLimits asymptotic_limits(double J, double h_i, double h_f) {
  std::string bad;
  if (!std::isfinite(J) || !std::isfinite(h_i) || !std::isfinite(h_f))
    bad = "J,h_i,h_f (must be finite)";
  else if (!(0.0 <= J && J < h_i && h_i < h_f))
    bad = "J,h_i,h_f (need 0 <= J < h_i < h_f)";
  if (!bad.empty()) throw validation_error("asymptotic_limits: invalid " + bad);

  // T_c -> 0: the cold medium collapses onto the aligned ground state
  // (guaranteed by J < h_i), so the cold stroke contributes neither
  // fluctuations nor idle-level population.  T_h -> inf: uniform hot
  // populations, mean magnetization 0, magnetization variance 1/2,
  // idle-level population 1/4.
  const double dh = h_f - h_i;
  AsymptoticLimits a;
  a.mean_W = -dh;
  a.var_W = 0.5 * dh * dh;
  a.cov_W = 0.0;
  a.rel_fluct_W = 1.0 / std::sqrt(2.0);
  const double qh = h_f - 0.25 * J;  // limiting mean hot-stroke heat
  a.eta_th = dh / qh;
  a.var_eta = a.var_W / (qh * qh);
  return a;
}

}  // namespace otto
