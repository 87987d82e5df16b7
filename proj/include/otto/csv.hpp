#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "otto/scan.hpp"
#include "otto/tpm.hpp"

namespace otto {

// Key/value lines rendered as "# key=value" above the column header.  No
// timestamps or hostnames ever appear here: identical invocations must
// produce identical bytes.
using KvList = std::vector<std::pair<std::string, std::string>>;

struct Table {
  KvList header;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

// CSV is the stable machine interface; the pretty renderer is for eyes
// only and carries no compatibility promise.
void write_csv(std::ostream& os, const Table& t);
void write_pretty(std::ostream& os, const Table& t);

KvList tool_header();
KvList params_header(const EngineParams& p);

// Fixed parameters and axis geometry of a scan as header lines; also used
// to dump preset definitions verbatim.
KvList scan_spec_header(const ScanSpec& spec);

// One row per grid cell: axis coordinates first, then the requested
// quantities (spec.quantities, or the full default set when empty).
Table grid_table(const ScanGrid& g, const KvList& extra_header);

// Single-point summary: every default quantity for one parameter set.
Table observables_table(const EngineParams& p);

// value/probability rows of a collapsed distribution; the header carries
// the undefined and divergent masses and the efficiency reference values.
Table distribution_table(const DiscreteDistribution& d, const EngineParams& p,
                         const std::string& which);

// All 16 (n, l) outcomes.  When `exact` is non-null its probabilities are
// added as a second column (used to put sampled frequencies side by side
// with the exact weights).
Table trajectory_table(const TrajectoryDistribution& td, const KvList& extra,
                       const TrajectoryDistribution* exact = nullptr);

}  // namespace otto
