#include "otto/scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <thread>

#include "otto/errors.hpp"
#include "otto/numeric.hpp"

namespace otto {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void set_param(FixedParams& fp, ScanParam which, double value) {
  switch (which) {
    case ScanParam::T_c: fp.T_c = value; break;
    case ScanParam::T_h: fp.T_h = value; break;
    case ScanParam::J: fp.J = value; break;
  }
}

bool has_param(const FixedParams& fp, ScanParam which) {
  switch (which) {
    case ScanParam::T_c: return fp.T_c.has_value();
    case ScanParam::T_h: return fp.T_h.has_value();
    case ScanParam::J: return fp.J.has_value();
  }
  return false;
}

EngineParams make_params(const FixedParams& fp) {
  return EngineParams(*fp.J, *fp.h_i, *fp.h_f, *fp.T_c, *fp.T_h);
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

void fill_cell(ScanCell& c, const EngineParams& p) {
  c.obs = cycle_observables(p);
  if (c.obs.mean_W != 0.0) c.tur = verify_tur(p);
  const double q_hotter = p.T_h >= p.T_c ? c.obs.mean_Qh : c.obs.mean_Qc;
  const bool work_out = c.obs.regime == Regime::Engine ||
                        c.obs.regime == Regime::CounterRotatingEngine;
  c.engine = work_out && q_hotter > 0.0;
  c.anomalous = work_out && !(q_hotter > 0.0);
}

ScanGrid evaluate(const ScanSpec& spec) {
  validate_spec(spec);
  ScanGrid g;
  g.spec = spec;
  g.axis1_values = axis_values(*spec.axis1);
  if (spec.axis2) g.axis2_values = axis_values(*spec.axis2);
  const int cols = g.cols();
  const std::size_t total =
      g.axis1_values.size() * static_cast<std::size_t>(cols);
  g.cells.resize(total);

  auto work = [&g, &spec, cols](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      ScanCell& c = g.cells[k];
      c.a1 = g.axis1_values[k / cols];
      c.a2 = spec.axis2 ? g.axis2_values[k % cols] : 0.0;
      FixedParams fp = spec.fixed;
      set_param(fp, spec.axis1->param, c.a1);
      if (spec.axis2) set_param(fp, spec.axis2->param, c.a2);
      fill_cell(c, make_params(fp));
    }
  };

  unsigned nt = scan_thread_count();
  if (total < 256) nt = 1;
  nt = static_cast<unsigned>(
      std::min<std::size_t>(nt, total > 0 ? total : 1));
  if (nt <= 1) {
    work(0, total);
    return g;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(nt);
  const std::size_t chunk = (total + nt - 1) / nt;
  for (unsigned t = 0; t < nt; ++t) {
    const std::size_t b = t * chunk;
    const std::size_t e = std::min(total, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&work, &errors, t, b, e] {
      try {
        work(b, e);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& ep : errors)
    if (ep) std::rethrow_exception(ep);
  return g;
}

std::optional<double> objective_value(Objective obj, const CycleObservables& o) {
  switch (obj) {
    case Objective::MeanW: return o.mean_W;
    case Objective::AbsMeanW: return std::fabs(o.mean_W);
    case Objective::RelFluctW: return o.rel_fluct_W;
    case Objective::EtaTh: return o.eta_th;
  }
  return std::nullopt;
}

}  // namespace

const char* to_string(ScanParam p) {
  switch (p) {
    case ScanParam::T_c: return "T_c";
    case ScanParam::T_h: return "T_h";
    case ScanParam::J: return "J";
  }
  return "unknown";
}

ScanParam scan_param_from_name(const std::string& name) {
  if (name == "T_c" || name == "Tc") return ScanParam::T_c;
  if (name == "T_h" || name == "Th") return ScanParam::T_h;
  if (name == "J") return ScanParam::J;
  throw validation_error("unknown scan parameter '" + name +
                         "' (valid: T_c, T_h, J)");
}

const char* to_string(Objective o) {
  switch (o) {
    case Objective::MeanW: return "mean_W";
    case Objective::AbsMeanW: return "abs_mean_W";
    case Objective::RelFluctW: return "rel_fluct_W";
    case Objective::EtaTh: return "eta_th";
  }
  return "unknown";
}

Objective objective_from_name(const std::string& name) {
  if (name == "mean_W") return Objective::MeanW;
  if (name == "abs_mean_W") return Objective::AbsMeanW;
  if (name == "rel_fluct_W") return Objective::RelFluctW;
  if (name == "eta_th") return Objective::EtaTh;
  throw validation_error("unknown objective '" + name +
                         "' (valid: mean_W, abs_mean_W, rel_fluct_W, eta_th)");
}

void validate_spec(const ScanSpec& spec) {
  std::vector<std::string> issues;

  if (!spec.axis1 && spec.axis2) issues.push_back("axis2 set without axis1");
  if (!spec.axis1 && !spec.axis2) issues.push_back("no axis given");

  auto check_axis = [&issues](const Axis& ax, const char* label) {
    const std::string l = label;
    if (ax.points < 2) issues.push_back(l + ": points must be >= 2");
    if (!std::isfinite(ax.min) || !std::isfinite(ax.max) || !(ax.min < ax.max))
      issues.push_back(l + ": need finite min < max");
    if (ax.spacing == Spacing::Log && ax.param == ScanParam::J)
      issues.push_back(l + ": log spacing is limited to temperature axes");
    const bool is_temp =
        ax.param == ScanParam::T_c || ax.param == ScanParam::T_h;
    if (is_temp && !(ax.min > 0.0))
      issues.push_back(l + ": temperature axis needs min > 0");
    if (ax.spacing == Spacing::Log && !(ax.min > 0.0))
      issues.push_back(l + ": log spacing needs min > 0");
  };
  if (spec.axis1) check_axis(*spec.axis1, "axis1");
  if (spec.axis2) check_axis(*spec.axis2, "axis2");

  // Each sweepable parameter must be covered exactly once by fixed + axes;
  // the field endpoints can only come from fixed.
  for (ScanParam p : {ScanParam::T_c, ScanParam::T_h, ScanParam::J}) {
    int cnt = has_param(spec.fixed, p) ? 1 : 0;
    if (spec.axis1 && spec.axis1->param == p) ++cnt;
    if (spec.axis2 && spec.axis2->param == p) ++cnt;
    if (cnt == 0)
      issues.push_back(std::string(to_string(p)) + ": not covered by fixed values or axes");
    if (cnt > 1)
      issues.push_back(std::string(to_string(p)) + ": covered more than once");
  }
  if (!spec.fixed.h_i) issues.push_back("h_i: missing fixed value");
  if (!spec.fixed.h_f) issues.push_back("h_f: missing fixed value");

  auto check_fixed = [&issues](const std::optional<double>& v, const char* name,
                               bool positive) {
    if (!v) return;
    if (!std::isfinite(*v) || (positive && !(*v > 0.0)))
      issues.push_back(std::string(name) + ": fixed value invalid");
  };
  check_fixed(spec.fixed.J, "J", false);
  check_fixed(spec.fixed.h_i, "h_i", true);
  check_fixed(spec.fixed.h_f, "h_f", true);
  check_fixed(spec.fixed.T_c, "T_c", true);
  check_fixed(spec.fixed.T_h, "T_h", true);
  if (spec.fixed.h_i && spec.fixed.h_f && *spec.fixed.h_i == *spec.fixed.h_f)
    issues.push_back("h_i,h_f: field endpoints must differ");

  for (const auto& q : spec.quantities)
    if (!is_known_quantity(q)) issues.push_back("unknown quantity '" + q + "'");

  if (!issues.empty())
    throw validation_error("scan spec invalid: " + join(issues, "; "));
}

std::vector<double> axis_values(const Axis& axis) {
  std::vector<double> v(axis.points);
  const int n = axis.points;
  const double lmin = axis.spacing == Spacing::Log ? std::log(axis.min) : 0.0;
  const double lmax = axis.spacing == Spacing::Log ? std::log(axis.max) : 0.0;
  for (int i = 0; i < n; ++i) {
    if (i == 0) {
      v[i] = axis.min;
    } else if (i == n - 1) {
      v[i] = axis.max;
    } else {
      // t survives grid doubling exactly: (2i)/(2n-2) rounds to the same
      // double as i/(n-1), so refined grids contain the coarse points.
      const double t = static_cast<double>(i) / static_cast<double>(n - 1);
      v[i] = axis.spacing == Spacing::Log ? std::exp(lmin + t * (lmax - lmin))
                                          : axis.min + t * (axis.max - axis.min);
    }
  }
  return v;
}

ScanGrid run_grid(const ScanSpec& spec) {
  if (!spec.axis1 || !spec.axis2)
    throw validation_error("run_grid: two axes required");
  return evaluate(spec);
}

ScanGrid run_line(const ScanSpec& spec) {
  if (!spec.axis1 || spec.axis2)
    throw validation_error("run_line: exactly one axis required");
  return evaluate(spec);
}

ScanCell evaluate_cell(const EngineParams& p) {
  ScanCell c;
  fill_cell(c, p);
  return c;
}

std::map<std::string, std::size_t> regime_census(const ScanGrid& g) {
  std::map<std::string, std::size_t> census;
  for (Regime r : {Regime::Engine, Regime::CounterRotatingEngine,
                   Regime::Refrigerator, Regime::Accelerator, Regime::Heater,
                   Regime::Degenerate})
    census[to_string(r)] = 0;
  census["engine_flag"] = 0;
  census["anomalous_flag"] = 0;
  for (const auto& c : g.cells) {
    ++census[to_string(c.obs.regime)];
    if (c.engine) ++census["engine_flag"];
    if (c.anomalous) ++census["anomalous_flag"];
  }
  return census;
}

std::vector<std::vector<std::size_t>> engine_components(const ScanGrid& g) {
  const int rows = g.rows(), cols = g.cols();
  const std::size_t total = g.cells.size();
  std::vector<char> seen(total, 0);
  std::vector<std::vector<std::size_t>> comps;
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < total; ++s) {
    if (seen[s] || !g.cells[s].engine) continue;
    std::vector<std::size_t> comp;
    stack.assign(1, s);
    seen[s] = 1;
    while (!stack.empty()) {
      const std::size_t k = stack.back();
      stack.pop_back();
      comp.push_back(k);
      const int i = static_cast<int>(k) / cols;
      const int j = static_cast<int>(k) % cols;
      const int di[4] = {-1, 1, 0, 0};
      const int dj[4] = {0, 0, -1, 1};
      for (int d = 0; d < 4; ++d) {
        const int ni = i + di[d], nj = j + dj[d];
        if (ni < 0 || ni >= rows || nj < 0 || nj >= cols) continue;
        const std::size_t nk = static_cast<std::size_t>(ni) * cols + nj;
        if (seen[nk] || !g.cells[nk].engine) continue;
        seen[nk] = 1;
        stack.push_back(nk);
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  std::sort(comps.begin(), comps.end(),
            [](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
              if (a.size() != b.size()) return a.size() > b.size();
              return a.front() < b.front();
            });
  return comps;
}

ExtremumResult find_extremum(Objective obj, Direction dir, Interval iv,
                             const FixedParams& fixed, double tol) {
  std::vector<std::string> issues;
  if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || !(iv.lo < iv.hi))
    issues.push_back("interval: need finite lo < hi");
  const bool is_temp = iv.param == ScanParam::T_c || iv.param == ScanParam::T_h;
  if (is_temp && !(iv.lo > 0.0))
    issues.push_back("interval: temperature parameter needs lo > 0");
  if (!(tol > 0.0) || !std::isfinite(tol))
    issues.push_back("tol: must be finite and > 0");
  if (has_param(fixed, iv.param))
    issues.push_back(std::string(to_string(iv.param)) +
                     ": both swept and fixed");
  for (ScanParam p : {ScanParam::T_c, ScanParam::T_h, ScanParam::J})
    if (p != iv.param && !has_param(fixed, p))
      issues.push_back(std::string(to_string(p)) + ": missing fixed value");
  if (!fixed.h_i) issues.push_back("h_i: missing fixed value");
  if (!fixed.h_f) issues.push_back("h_f: missing fixed value");
  if (!issues.empty())
    throw validation_error("find_extremum: " + join(issues, "; "));

  // Score to minimize; undefined objectives never win.
  auto score_at = [&](double x) -> double {
    FixedParams fp = fixed;
    set_param(fp, iv.param, x);
    const auto o = cycle_observables(make_params(fp));
    const auto v = objective_value(obj, o);
    if (!v) return kInf;
    return dir == Direction::Maximize ? -*v : *v;
  };

  constexpr int kCoarse = 129;
  std::vector<double> xs(kCoarse), fs(kCoarse);
  for (int i = 0; i < kCoarse; ++i) {
    const double t = static_cast<double>(i) / (kCoarse - 1);
    xs[i] = i == 0 ? iv.lo : (i == kCoarse - 1 ? iv.hi : iv.lo + t * (iv.hi - iv.lo));
    fs[i] = score_at(xs[i]);
  }
  int k = 0;
  for (int i = 1; i < kCoarse; ++i)
    if (fs[i] < fs[k]) k = i;
  if (!std::isfinite(fs[k]))
    throw undefined_error("find_extremum: objective undefined on the whole interval");

  double best_x = xs[k], best_f = fs[k];
  double a = xs[std::max(0, k - 1)];
  double b = xs[std::min(kCoarse - 1, k + 1)];
  const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = score_at(c), fd = score_at(d);
  auto consider = [&](double x, double f) {
    if (f < best_f) { best_f = f; best_x = x; }
  };
  consider(c, fc);
  consider(d, fd);
  int guard = 0;
  while (b - a > tol && ++guard < 400) {
    if (fc <= fd) {
      b = d; d = c; fd = fc;
      c = b - invphi * (b - a);
      fc = score_at(c);
      consider(c, fc);
    } else {
      a = c; c = d; fc = fd;
      d = a + invphi * (b - a);
      fd = score_at(d);
      consider(d, fd);
    }
  }

  ExtremumResult r;
  r.objective = obj;
  r.direction = dir;
  r.param = iv.param;
  r.arg = best_x;
  r.value = dir == Direction::Maximize ? -best_f : best_f;
  r.bracket = b - a;
  return r;
}

unsigned scan_thread_count() {
  if (const char* env = std::getenv("OTTO_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1)
      return static_cast<unsigned>(std::min(v, 64L));
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? hc : 1;
}

const std::vector<std::string>& default_quantities() {
  static const std::vector<std::string> names = {
      "mean_W1", "mean_W2", "mean_W", "var_W1", "var_W2", "var_W",
      "mean_Qh", "mean_Qc", "eta_0", "eta_C", "eta_th", "Omega",
      "mean_Sigma", "rel_fluct_W", "regime", "engine", "anomalous",
      "tur_bound", "tur_observed", "tur_slack", "tur_satisfied",
  };
  return names;
}

bool is_known_quantity(const std::string& name) {
  const auto& names = default_quantities();
  return std::find(names.begin(), names.end(), name) != names.end();
}

std::string quantity_value(const ScanCell& c, const std::string& name) {
  auto opt = [](const std::optional<double>& v) {
    return v ? fmt17(*v) : std::string();
  };
  if (name == "mean_W1") return fmt17(c.obs.mean_W1);
  if (name == "mean_W2") return fmt17(c.obs.mean_W2);
  if (name == "mean_W") return fmt17(c.obs.mean_W);
  if (name == "var_W1") return fmt17(c.obs.var_W1);
  if (name == "var_W2") return fmt17(c.obs.var_W2);
  if (name == "var_W") return fmt17(c.obs.var_W);
  if (name == "mean_Qh") return fmt17(c.obs.mean_Qh);
  if (name == "mean_Qc") return fmt17(c.obs.mean_Qc);
  if (name == "eta_0") return fmt17(c.obs.eta_0);
  if (name == "eta_C") return fmt17(c.obs.eta_C);
  if (name == "eta_th") return opt(c.obs.eta_th);
  if (name == "Omega") return opt(c.obs.Omega);
  if (name == "mean_Sigma") return fmt17(c.obs.mean_Sigma);
  if (name == "rel_fluct_W") return opt(c.obs.rel_fluct_W);
  if (name == "regime") return to_string(c.obs.regime);
  if (name == "engine") return c.engine ? "1" : "0";
  if (name == "anomalous") return c.anomalous ? "1" : "0";
  if (name == "tur_bound") return c.tur ? fmt17(c.tur->bound) : std::string();
  if (name == "tur_observed") return c.tur ? fmt17(c.tur->observed) : std::string();
  if (name == "tur_slack") return c.tur ? fmt17(c.tur->slack) : std::string();
  if (name == "tur_satisfied")
    return c.tur ? (c.tur->satisfied ? "1" : "0") : std::string();
  throw validation_error("unknown quantity '" + name + "'");
}

}  // namespace otto
