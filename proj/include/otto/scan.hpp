#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "otto/cycle.hpp"
#include "otto/tur.hpp"

namespace otto {

// Parameters a scan axis may sweep.  Fields are swept indirectly by fixing
// h_i/h_f per scan, so only the three bath/coupling knobs are axes.
enum class ScanParam { T_c, T_h, J };

const char* to_string(ScanParam p);
ScanParam scan_param_from_name(const std::string& name);

enum class Spacing { Linear, Log };

struct Axis {
  ScanParam param = ScanParam::T_c;
  double min = 0.0;
  double max = 0.0;
  int points = 0;  // >= 2
  Spacing spacing = Spacing::Linear;
};

// Cycle parameters held constant over the whole scan.  Together with the
// axes these must cover J, h_i, h_f, T_c, T_h exactly once each.
struct FixedParams {
  std::optional<double> J, h_i, h_f, T_c, T_h;
};

struct ScanSpec {
  FixedParams fixed;
  std::optional<Axis> axis1, axis2;
  // Output column names from the quantity registry; empty selects the full
  // default set.
  std::vector<std::string> quantities;
};

// Throws validation_error naming every offending field.  Log spacing is
// restricted to the temperature axes (J sweeps cross zero).
void validate_spec(const ScanSpec& spec);

// The i-th of n grid values is built from the ratio t = i/(n-1) alone, so a
// refined axis with 2n-1 points reproduces the original n doubles exactly.
std::vector<double> axis_values(const Axis& axis);

struct ScanCell {
  double a1 = 0.0;  // axis1 coordinate
  double a2 = 0.0;  // axis2 coordinate (0 for line scans)
  CycleObservables obs;
  std::optional<TurEvaluation> tur;  // absent where mean_W = 0
  // Work is extracted and heat actually flows in from the hotter bath.
  bool engine = false;
  // Work-extracting regime whose hotter-bath heat is not positive; flagged
  // instead of being silently counted as an engine.  Never set in practice:
  // the degenerate band already absorbs these cells.
  bool anomalous = false;
};

// Row-major over (axis1, axis2); line scans have cols() == 1.
struct ScanGrid {
  ScanSpec spec;
  std::vector<double> axis1_values;
  std::vector<double> axis2_values;  // empty for line scans
  std::vector<ScanCell> cells;

  int rows() const { return static_cast<int>(axis1_values.size()); }
  int cols() const {
    return axis2_values.empty() ? 1 : static_cast<int>(axis2_values.size());
  }
  const ScanCell& at(int i, int j) const { return cells[i * cols() + j]; }
};

// Two axes required.  Cells are written by index and every cell depends
// only on its own coordinates, so output is bitwise identical for any
// thread count.
ScanGrid run_grid(const ScanSpec& spec);

// Exactly one axis required.
ScanGrid run_line(const ScanSpec& spec);

// One cell evaluated outside any grid (axis coordinates left at 0); the
// single-point CLI summary and the tests share this with the grid path.
ScanCell evaluate_cell(const EngineParams& p);

// Cell count per regime label, plus "engine" and "anomalous" flag totals.
std::map<std::string, std::size_t> regime_census(const ScanGrid& g);

// Connected components of the engine mask under 4-neighbour adjacency,
// as sorted cell-index lists, largest component first.
std::vector<std::vector<std::size_t>> engine_components(const ScanGrid& g);

enum class Objective { MeanW, AbsMeanW, RelFluctW, EtaTh };
enum class Direction { Minimize, Maximize };

const char* to_string(Objective o);
Objective objective_from_name(const std::string& name);

struct Interval {
  ScanParam param = ScanParam::J;
  double lo = 0.0;
  double hi = 0.0;
};

struct ExtremumResult {
  Objective objective = Objective::MeanW;
  Direction direction = Direction::Minimize;
  ScanParam param = ScanParam::J;
  double arg = 0.0;
  double value = 0.0;
  double bracket = 0.0;  // width of the final search bracket
};

// Coarse 129-point pass to bracket the best cell, then golden-section
// refinement down to `tol` in the argument.  Cells where the objective is
// undefined are treated as +inf (never optimal); if it is undefined on the
// whole coarse grid, throws undefined_error.
ExtremumResult find_extremum(Objective obj, Direction dir, Interval iv,
                             const FixedParams& fixed, double tol = 1e-6);

// Worker count: OTTO_THREADS (clamped to [1, 64]) if set and parseable,
// else hardware concurrency, else 1.
unsigned scan_thread_count();

// Quantity registry: column names and their per-cell serialization
// (17 significant digits; empty string where a value is undefined).
const std::vector<std::string>& default_quantities();
bool is_known_quantity(const std::string& name);
std::string quantity_value(const ScanCell& c, const std::string& name);

}  // namespace otto
