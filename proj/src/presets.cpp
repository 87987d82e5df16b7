#include "otto/presets.hpp"

namespace otto {

namespace {

// All presets share the field protocol h_i = 3, h_f = 4 (bare efficiency
// 1/4) and sweep the coupling and the two bath temperatures around it.

ScanSpec bath_grid(double J, double th_max, double tc_max) {
  ScanSpec s;
  s.fixed.J = J;
  s.fixed.h_i = 3.0;
  s.fixed.h_f = 4.0;
  s.axis1 = Axis{ScanParam::T_h, 0.05, th_max, 101, Spacing::Linear};
  s.axis2 = Axis{ScanParam::T_c, 0.05, tc_max, 101, Spacing::Linear};
  return s;
}

ScanSpec coupling_line(double T_h, double T_c) {
  ScanSpec s;
  s.fixed.h_i = 3.0;
  s.fixed.h_f = 4.0;
  s.fixed.T_h = T_h;
  s.fixed.T_c = T_c;
  s.axis1 = Axis{ScanParam::J, 0.0, 2.99, 300, Spacing::Linear};
  return s;
}

ScanSpec cold_line(double J, double T_h) {
  ScanSpec s;
  s.fixed.J = J;
  s.fixed.h_i = 3.0;
  s.fixed.h_f = 4.0;
  s.fixed.T_h = T_h;
  s.axis1 = Axis{ScanParam::T_c, 1e-2, 1e2, 301, Spacing::Log};
  return s;
}

std::vector<ScanPreset> build_scan_presets() {
  std::vector<ScanPreset> v;
  auto add = [&v](const char* name, const char* desc, ScanSpec spec) {
    v.push_back(ScanPreset{name, desc, true, std::move(spec)});
  };

  // Regime maps over the two bath temperatures at increasing coupling.
  add("fig1a", "regime map over (T_h, T_c), uncoupled J=0", bath_grid(0.0, 20.0, 10.0));
  add("fig1b", "regime map over (T_h, T_c), J=2", bath_grid(2.0, 20.0, 10.0));
  add("fig1c", "regime map over (T_h, T_c), J=5 (engine region splits)", bath_grid(5.0, 20.0, 10.0));
  add("fig1d", "regime map over (T_h, T_c), J=10 (engine region splits)", bath_grid(10.0, 20.0, 10.0));

  // Work output against hot temperature and coupling at a cold cold bath.
  {
    ScanSpec s;
    s.fixed.h_i = 3.0;
    s.fixed.h_f = 4.0;
    s.fixed.T_c = 0.1;
    s.axis1 = Axis{ScanParam::T_h, 1e-2, 10.0, 101, Spacing::Log};
    s.axis2 = Axis{ScanParam::J, 0.0, 3.0, 61, Spacing::Linear};
    add("fig2", "mean work over (T_h, J) at T_c=0.1", std::move(s));
  }

  // Relative work fluctuation against coupling at fixed baths.
  add("fig3a", "work statistics vs J at T_h=100, T_c=0.5", coupling_line(100.0, 0.5));
  add("fig3b", "work statistics vs J at T_h=5, T_c=1", coupling_line(5.0, 1.0));
  add("fig3c", "work statistics vs J at T_h=5, T_c=0.1", coupling_line(5.0, 0.1));
  add("fig3d", "work statistics vs J at T_h=5, T_c=0.01", coupling_line(5.0, 0.01));

  // Strong coupling (J > h_i): work against the cold temperature.
  add("fig4a", "mean work vs T_c at J=4.01, T_h=100", cold_line(4.01, 100.0));
  add("fig4b", "mean work vs T_c at J=4.5, T_h=100", cold_line(4.5, 100.0));
  add("fig4c", "mean work vs T_c at J=6, T_h=100", cold_line(6.0, 100.0));
  add("fig4d", "mean work vs T_c at J=4.01, T_h=1e-4", cold_line(4.01, 1e-4));
  add("fig4e", "mean work vs T_c at J=4.5, T_h=1e-4", cold_line(4.5, 1e-4));
  add("fig4f", "mean work vs T_c at J=6, T_h=1e-4", cold_line(6.0, 1e-4));

  // Entropy production maps near the diagonal T_h = T_c.
  add("fig5a", "entropy production over (T_h, T_c), J=0", bath_grid(0.0, 5.0, 5.0));
  add("fig5b", "entropy production over (T_h, T_c), J=2", bath_grid(2.0, 5.0, 5.0));
  add("fig5c", "entropy production over (T_h, T_c), J=5", bath_grid(5.0, 5.0, 5.0));
  add("fig5d", "entropy production over (T_h, T_c), J=10", bath_grid(10.0, 5.0, 5.0));

  // Relative-fluctuation maps on the fig1 grids.
  add("fig6a", "relative work fluctuation over (T_h, T_c), J=0", bath_grid(0.0, 20.0, 10.0));
  add("fig6b", "relative work fluctuation over (T_h, T_c), J=2", bath_grid(2.0, 20.0, 10.0));
  add("fig6c", "relative work fluctuation over (T_h, T_c), J=5", bath_grid(5.0, 20.0, 10.0));
  add("fig6d", "relative work fluctuation over (T_h, T_c), J=10", bath_grid(10.0, 20.0, 10.0));

  // Efficiency against coupling at fixed baths.
  add("fig7a", "efficiency vs J at T_h=100, T_c=1e-3", coupling_line(100.0, 1e-3));
  add("fig7b", "efficiency vs J at T_h=100, T_c=0.5", coupling_line(100.0, 0.5));
  add("fig7c", "efficiency vs J at T_h=5, T_c=1", coupling_line(5.0, 1.0));
  add("fig7d", "efficiency vs J at T_h=5, T_c=0.1", coupling_line(5.0, 0.1));
  add("fig7e", "efficiency vs J at T_h=5, T_c=0.01", coupling_line(5.0, 0.01));

  // Efficiency maps on the fig1 grids (fig8a uses the fig9 coupling).
  add("fig8a", "efficiency over (T_h, T_c), J=1.5", bath_grid(1.5, 20.0, 10.0));
  add("fig8b", "efficiency over (T_h, T_c), J=2", bath_grid(2.0, 20.0, 10.0));
  add("fig8c", "efficiency over (T_h, T_c), J=5", bath_grid(5.0, 20.0, 10.0));
  add("fig8d", "efficiency over (T_h, T_c), J=10", bath_grid(10.0, 20.0, 10.0));

  // Fluctuation bound sweep: cold temperature down to 1e-6 at T_h=20.
  {
    ScanSpec s;
    s.fixed.h_i = 3.0;
    s.fixed.h_f = 4.0;
    s.fixed.T_h = 20.0;
    s.axis1 = Axis{ScanParam::T_c, 1e-6, 10.0, 241, Spacing::Log};
    s.axis2 = Axis{ScanParam::J, 0.0, 2.0, 3, Spacing::Linear};
    add("fig10", "fluctuation bound vs T_c at T_h=20, J in {0,1,2}", std::move(s));
  }

  // Entropy-production maps revisited at the wide fig1 ranges.
  add("fig11a", "entropy production over (T_h, T_c), J=2", bath_grid(2.0, 20.0, 10.0));
  add("fig11b", "entropy production over (T_h, T_c), J=5", bath_grid(5.0, 20.0, 10.0));

  return v;
}

}  // namespace

const std::vector<ScanPreset>& scan_presets() {
  static const std::vector<ScanPreset> presets = build_scan_presets();
  return presets;
}

const ScanPreset* find_scan_preset(const std::string& name) {
  for (const auto& p : scan_presets())
    if (p.name == name) return &p;
  return nullptr;
}

const std::vector<PointPreset>& point_presets() {
  static const std::vector<PointPreset> presets = {
      {"fig9-top", "efficiency distribution point: J=1.5, h 3->4, T_c=1, T_h=20",
       1.5, 3.0, 4.0, 1.0, 20.0},
      {"fig9-bottom", "efficiency distribution point: J=1.5, h 3->4, T_c=5, T_h=20",
       1.5, 3.0, 4.0, 5.0, 20.0},
  };
  return presets;
}

const PointPreset* find_point_preset(const std::string& name) {
  for (const auto& p : point_presets())
    if (p.name == name) return &p;
  return nullptr;
}

}  // namespace otto
