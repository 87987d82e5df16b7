#include "otto/cli.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "otto/csv.hpp"
#include "otto/errors.hpp"
#include "otto/numeric.hpp"
#include "otto/presets.hpp"
#include "otto/scan.hpp"
#include "otto/tpm.hpp"
#include "otto/version.hpp"

namespace otto {

namespace {

struct OutputOpts {
  std::string path;
  std::string format = "csv";
};

void add_output_opts(CLI::App* sub, OutputOpts& o) {
  sub->add_option("-o,--output", o.path, "write to this file instead of stdout");
  sub->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"csv", "pretty"}));
}

void emit(const Table& t, const OutputOpts& o, std::ostream& out,
          std::ostream& err) {
  std::ofstream file;
  std::ostream* os = &out;
  if (!o.path.empty()) {
    file.open(o.path, std::ios::binary);
    if (!file)
      throw validation_error("cannot open output file '" + o.path + "'");
    os = &file;
  }
  if (o.format == "pretty") {
    err << "warning: pretty output is for reading only; CSV is the stable "
           "interface\n";
    write_pretty(*os, t);
  } else {
    write_csv(*os, t);
  }
}

// The five cycle parameters as flags.  `require_all` turns missing flags
// into exit-code-2 errors naming the flag; otherwise presence is left to
// the caller to interpret (e.g. preset vs. explicit parameters).
struct ParamFlags {
  double J = 0.0, h_i = 0.0, h_f = 0.0, T_c = 0.0, T_h = 0.0;
  CLI::Option *oJ = nullptr, *ohi = nullptr, *ohf = nullptr, *oTc = nullptr,
              *oTh = nullptr;

  void attach(CLI::App* sub) {
    oJ = sub->add_option("--J", J, "exchange coupling");
    ohi = sub->add_option("--hi", h_i, "field during cold-bath contact");
    ohf = sub->add_option("--hf", h_f, "field during hot-bath contact");
    oTc = sub->add_option("--Tc", T_c, "cold bath temperature");
    oTh = sub->add_option("--Th", T_h, "hot bath temperature");
  }

  int given() const {
    return (oJ->count() ? 1 : 0) + (ohi->count() ? 1 : 0) +
           (ohf->count() ? 1 : 0) + (oTc->count() ? 1 : 0) +
           (oTh->count() ? 1 : 0);
  }

  void require_all() const {
    std::string missing;
    auto need = [&missing](const CLI::Option* o, const char* name) {
      if (o->count()) return;
      if (!missing.empty()) missing += ", ";
      missing += name;
    };
    need(oJ, "--J");
    need(ohi, "--hi");
    need(ohf, "--hf");
    need(oTc, "--Tc");
    need(oTh, "--Th");
    if (!missing.empty())
      throw validation_error("missing required flag(s): " + missing);
  }

  EngineParams params() const { return EngineParams(J, h_i, h_f, T_c, T_h); }
};

EngineParams preset_or_params(const std::string& preset, const ParamFlags& pf) {
  if (!preset.empty()) {
    if (pf.given() > 0)
      throw validation_error(
          "--preset and explicit cycle parameters are mutually exclusive");
    const PointPreset* pp = find_point_preset(preset);
    if (!pp) {
      std::string names;
      for (const auto& p : point_presets()) {
        if (!names.empty()) names += ", ";
        names += p.name;
      }
      throw validation_error("unknown point preset '" + preset +
                             "'; available: " + names);
    }
    return EngineParams(pp->J, pp->h_i, pp->h_f, pp->T_c, pp->T_h);
  }
  pf.require_all();
  return pf.params();
}

std::vector<std::string> split_csv_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, ',')) out.push_back(item);
  return out;
}

std::string scan_preset_names() {
  std::string names;
  for (const auto& p : scan_presets()) {
    if (!names.empty()) names += ", ";
    names += p.name;
  }
  return names;
}

void list_presets(std::ostream& os, bool show) {
  for (const auto& p : scan_presets()) {
    os << p.name << "  " << p.description
       << (p.approx_ranges ? " [ranges approximate]" : "") << "\n";
    if (show) {
      for (const auto& [k, v] : scan_spec_header(p.spec))
        os << "  " << k << "=" << v << "\n";
    }
  }
  os << "\npoint presets (distribution/sample):\n";
  for (const auto& p : point_presets()) {
    os << p.name << "  " << p.description << "\n";
    if (show) {
      os << "  J=" << fmt17(p.J) << "\n  h_i=" << fmt17(p.h_i)
         << "\n  h_f=" << fmt17(p.h_f) << "\n  T_c=" << fmt17(p.T_c)
         << "\n  T_h=" << fmt17(p.T_h) << "\n";
    }
  }
}

// Custom axis flags for `scan` (used when no preset is named).
struct AxisFlags {
  std::string param;
  double min = 0.0, max = 0.0;
  int points = 0;
  bool log_spacing = false;
  CLI::Option* oparam = nullptr;

  void attach(CLI::App* sub, const char* prefix) {
    const std::string p = prefix;
    oparam = sub->add_option("--" + p + "-param", param,
                             "swept parameter: T_c, T_h or J");
    sub->add_option("--" + p + "-min", min, "axis minimum");
    sub->add_option("--" + p + "-max", max, "axis maximum");
    sub->add_option("--" + p + "-points", points, "number of grid points");
    sub->add_flag("--" + p + "-log", log_spacing,
                  "logarithmic spacing (temperatures only)");
  }

  bool used() const { return oparam->count() > 0; }

  Axis axis() const {
    Axis a;
    a.param = scan_param_from_name(param);
    a.min = min;
    a.max = max;
    a.points = points;
    a.spacing = log_spacing ? Spacing::Log : Spacing::Linear;
    return a;
  }
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{
      "otto -- exact statistics of a two-spin quantum Otto cycle\n"
      "Scans honour the OTTO_THREADS environment variable; results are "
      "bitwise independent of the thread count."};
  app.set_version_flag("--version", std::string("otto ") + kToolVersion +
                                        " presets " + kPresetVersion);
  app.require_subcommand(0, 1);

  // ---- observables ----
  auto* obs_cmd = app.add_subcommand(
      "observables", "all per-cycle means, variances and labels at one point");
  ParamFlags obs_pf;
  obs_pf.attach(obs_cmd);
  OutputOpts obs_out;
  add_output_opts(obs_cmd, obs_out);

  // ---- distribution ----
  auto* dist_cmd = app.add_subcommand(
      "distribution", "exact trajectory distributions at one point");
  ParamFlags dist_pf;
  dist_pf.attach(dist_cmd);
  std::string dist_which = "work";
  dist_cmd
      ->add_option("--which", dist_which,
                   "work, eta-scaled, eta-stochastic or joint")
      ->check(CLI::IsMember({"work", "eta-scaled", "eta-stochastic", "joint"}));
  std::string dist_preset;
  dist_cmd->add_option("--preset", dist_preset, "named point preset");
  OutputOpts dist_out;
  add_output_opts(dist_cmd, dist_out);

  // ---- scan ----
  auto* scan_cmd = app.add_subcommand(
      "scan", "sweep 1 or 2 parameters over a grid (named preset or custom)");
  std::string scan_preset;
  scan_cmd->add_option("--preset", scan_preset,
                       "preset name, or 'list' to enumerate presets");
  bool scan_show = false;
  scan_cmd->add_flag("--show", scan_show,
                     "with --preset list: include full grid definitions");
  ParamFlags scan_pf;
  scan_pf.attach(scan_cmd);
  AxisFlags ax1, ax2;
  ax1.attach(scan_cmd, "axis1");
  ax2.attach(scan_cmd, "axis2");
  std::string scan_quantities;
  scan_cmd->add_option("--quantities", scan_quantities,
                       "comma-separated output columns (default: all)");
  OutputOpts scan_out;
  add_output_opts(scan_cmd, scan_out);

  // ---- limits ----
  auto* lim_cmd = app.add_subcommand(
      "limits", "exact T_h->inf, T_c->0 values (needs 0 <= J < h_i < h_f)");
  double lim_J = 0.0, lim_hi = 0.0, lim_hf = 0.0;
  lim_cmd->add_option("--J", lim_J, "exchange coupling")->required();
  lim_cmd->add_option("--hi", lim_hi, "field during cold-bath contact")->required();
  lim_cmd->add_option("--hf", lim_hf, "field during hot-bath contact")->required();
  OutputOpts lim_out;
  add_output_opts(lim_cmd, lim_out);

  // ---- extremum ----
  auto* ext_cmd = app.add_subcommand(
      "extremum", "optimize one quantity over a parameter interval");
  std::string ext_objective;
  ext_cmd
      ->add_option("--objective", ext_objective,
                   "mean_W, abs_mean_W, rel_fluct_W or eta_th")
      ->required();
  std::string ext_direction = "min";
  ext_cmd->add_option("--direction", ext_direction, "min or max")
      ->check(CLI::IsMember({"min", "max"}));
  std::string ext_param;
  ext_cmd->add_option("--param", ext_param, "swept parameter: T_c, T_h or J")
      ->required();
  double ext_lo = 0.0, ext_hi = 0.0, ext_tol = 1e-6;
  ext_cmd->add_option("--min", ext_lo, "interval lower end")->required();
  ext_cmd->add_option("--max", ext_hi, "interval upper end")->required();
  ext_cmd->add_option("--tol", ext_tol, "argument tolerance");
  ParamFlags ext_pf;
  ext_pf.attach(ext_cmd);
  OutputOpts ext_out;
  add_output_opts(ext_cmd, ext_out);

  // ---- sample ----
  auto* samp_cmd = app.add_subcommand(
      "sample", "Monte Carlo trajectory frequencies next to exact weights");
  ParamFlags samp_pf;
  samp_pf.attach(samp_cmd);
  std::string samp_preset;
  samp_cmd->add_option("--preset", samp_preset, "named point preset");
  std::uint64_t samp_count = 0, samp_seed = 0;
  samp_cmd->add_option("--count", samp_count, "number of draws")->required();
  samp_cmd->add_option("--seed", samp_seed, "stream seed")->required();
  OutputOpts samp_out;
  add_output_opts(samp_cmd, samp_out);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion& e) {
    out << e.what() << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (obs_cmd->parsed()) {
      obs_pf.require_all();
      emit(observables_table(obs_pf.params()), obs_out, out, err);
      return 0;
    }

    if (dist_cmd->parsed()) {
      const EngineParams p = preset_or_params(dist_preset, dist_pf);
      const auto td = enumerate_trajectories(p);
      if (dist_which == "joint") {
        emit(trajectory_table(td, {}), dist_out, out, err);
        return 0;
      }
      DiscreteDistribution d;
      if (dist_which == "work")
        d = work_distribution(td);
      else if (dist_which == "eta-scaled")
        d = scaled_efficiency_distribution(td);
      else
        d = stochastic_efficiency_distribution(td);
      emit(distribution_table(d, p, dist_which), dist_out, out, err);
      return 0;
    }

    if (scan_cmd->parsed()) {
      if (scan_preset == "list") {
        list_presets(out, scan_show);
        return 0;
      }
      ScanSpec spec;
      KvList extra;
      if (!scan_preset.empty()) {
        if (ax1.used() || ax2.used() || scan_pf.given() > 0)
          throw validation_error(
              "--preset and custom axis/fixed flags are mutually exclusive");
        const ScanPreset* sp = find_scan_preset(scan_preset);
        if (!sp)
          throw validation_error("unknown preset '" + scan_preset +
                                 "'; available: " + scan_preset_names() +
                                 " (or 'list')");
        spec = sp->spec;
        extra.emplace_back("preset", sp->name);
        extra.emplace_back("preset_description", sp->description);
        extra.emplace_back("approx_ranges", sp->approx_ranges ? "1" : "0");
      } else {
        if (!ax1.used())
          throw validation_error(
              "either --preset or --axis1-param/... must be given");
        spec.axis1 = ax1.axis();
        if (ax2.used()) spec.axis2 = ax2.axis();
        if (scan_pf.oJ->count()) spec.fixed.J = scan_pf.J;
        if (scan_pf.ohi->count()) spec.fixed.h_i = scan_pf.h_i;
        if (scan_pf.ohf->count()) spec.fixed.h_f = scan_pf.h_f;
        if (scan_pf.oTc->count()) spec.fixed.T_c = scan_pf.T_c;
        if (scan_pf.oTh->count()) spec.fixed.T_h = scan_pf.T_h;
        extra.emplace_back("preset", "custom");
      }
      if (!scan_quantities.empty())
        spec.quantities = split_csv_list(scan_quantities);

      validate_spec(spec);
      const std::size_t cells =
          static_cast<std::size_t>(spec.axis1->points) *
          (spec.axis2 ? static_cast<std::size_t>(spec.axis2->points) : 1u);
      err << "scan: " << cells << " cells\n";
      const ScanGrid g = spec.axis2 ? run_grid(spec) : run_line(spec);
      emit(grid_table(g, extra), scan_out, out, err);
      return 0;
    }

    if (lim_cmd->parsed()) {
      const auto a = asymptotic_limits(lim_J, lim_hi, lim_hf);
      Table t;
      t.header = tool_header();
      t.header.emplace_back("J", fmt17(lim_J));
      t.header.emplace_back("h_i", fmt17(lim_hi));
      t.header.emplace_back("h_f", fmt17(lim_hf));
      t.columns = {"mean_W_inf", "var_W_inf",      "cov_W_inf",
                   "rel_fluct_W_inf", "eta_th_inf", "var_eta_inf"};
      t.rows.push_back({fmt17(a.mean_W), fmt17(a.var_W), fmt17(a.cov_W),
                        fmt17(a.rel_fluct_W), fmt17(a.eta_th),
                        fmt17(a.var_eta)});
      emit(t, lim_out, out, err);
      return 0;
    }

    if (ext_cmd->parsed()) {
      Interval iv;
      iv.param = scan_param_from_name(ext_param);
      iv.lo = ext_lo;
      iv.hi = ext_hi;
      FixedParams fixed;
      if (ext_pf.oJ->count()) fixed.J = ext_pf.J;
      if (ext_pf.ohi->count()) fixed.h_i = ext_pf.h_i;
      if (ext_pf.ohf->count()) fixed.h_f = ext_pf.h_f;
      if (ext_pf.oTc->count()) fixed.T_c = ext_pf.T_c;
      if (ext_pf.oTh->count()) fixed.T_h = ext_pf.T_h;
      const auto r = find_extremum(
          objective_from_name(ext_objective),
          ext_direction == "max" ? Direction::Maximize : Direction::Minimize,
          iv, fixed, ext_tol);
      Table t;
      t.header = tool_header();
      const auto sk = scan_spec_header(ScanSpec{fixed, {}, {}, {}});
      t.header.insert(t.header.end(), sk.begin(), sk.end());
      t.columns = {"objective", "direction", "param", "arg", "value", "bracket"};
      t.rows.push_back({to_string(r.objective),
                        r.direction == Direction::Maximize ? "max" : "min",
                        to_string(r.param), fmt17(r.arg), fmt17(r.value),
                        fmt17(r.bracket)});
      emit(t, ext_out, out, err);
      return 0;
    }

    if (samp_cmd->parsed()) {
      const EngineParams p = preset_or_params(samp_preset, samp_pf);
      const auto exact = enumerate_trajectories(p);
      const auto emp = sample_trajectories(p, samp_count, samp_seed);
      KvList extra = {{"count", std::to_string(samp_count)},
                      {"seed", std::to_string(samp_seed)}};
      emit(trajectory_table(emp, extra, &exact), samp_out, out, err);
      return 0;
    }
  } catch (const validation_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const undefined_error& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }

  out << app.help();
  return 2;
}

}  // namespace otto
