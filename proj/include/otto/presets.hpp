#pragma once

#include <string>
#include <vector>

#include "otto/scan.hpp"

namespace otto {

// A named, versioned scan configuration.  Presets whose axis ranges were
// chosen merely to frame the interesting region (rather than being exact
// requirements) carry approx_ranges = true, and the CSV header says so.
// kPresetVersion in version.hpp is bumped whenever any preset changes.
struct ScanPreset {
  std::string name;
  std::string description;
  bool approx_ranges = true;
  ScanSpec spec;
};

const std::vector<ScanPreset>& scan_presets();

// Null when no preset has that name.
const ScanPreset* find_scan_preset(const std::string& name);

// Single-point cycle configurations used for trajectory distributions.
struct PointPreset {
  std::string name;
  std::string description;
  double J = 0.0, h_i = 0.0, h_f = 0.0, T_c = 0.0, T_h = 0.0;
};

const std::vector<PointPreset>& point_presets();
const PointPreset* find_point_preset(const std::string& name);

}  // namespace otto
