#include "otto/csv.hpp"

#include <algorithm>
#include <ostream>

#include "otto/numeric.hpp"
#include "otto/version.hpp"

namespace otto {

namespace {

const char* spacing_name(Spacing s) {
  return s == Spacing::Log ? "log" : "linear";
}

void axis_header(KvList& kv, const Axis& ax, const char* label) {
  const std::string l = label;
  kv.emplace_back(l + "_param", to_string(ax.param));
  kv.emplace_back(l + "_min", fmt17(ax.min));
  kv.emplace_back(l + "_max", fmt17(ax.max));
  kv.emplace_back(l + "_points", std::to_string(ax.points));
  kv.emplace_back(l + "_spacing", spacing_name(ax.spacing));
}

void fixed_header(KvList& kv, const FixedParams& fp) {
  auto put = [&kv](const char* name, const std::optional<double>& v) {
    if (v) kv.emplace_back(name, fmt17(*v));
  };
  put("J", fp.J);
  put("h_i", fp.h_i);
  put("h_f", fp.h_f);
  put("T_c", fp.T_c);
  put("T_h", fp.T_h);
}

}  // namespace

void write_csv(std::ostream& os, const Table& t) {
  for (const auto& [k, v] : t.header) os << "# " << k << "=" << v << "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) os << ",";
    os << t.columns[i];
  }
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ",";
      os << row[i];
    }
    os << "\n";
  }
}

void write_pretty(std::ostream& os, const Table& t) {
  for (const auto& [k, v] : t.header) os << "# " << k << " = " << v << "\n";
  std::vector<std::size_t> width(t.columns.size(), 0);
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    width[i] = t.columns[i].size();
  for (const auto& row : t.rows)
    for (std::size_t i = 0; i < row.size() && i < width.size(); ++i)
      width[i] = std::max(width[i], row[i].size());
  auto line = [&os, &width](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os << "  ";
      os << cells[i];
      for (std::size_t pad = cells[i].size(); pad < width[i]; ++pad) os << ' ';
    }
    os << "\n";
  };
  line(t.columns);
  for (const auto& row : t.rows) line(row);
}

KvList tool_header() {
  return {{"tool", "otto"},
          {"tool_version", kToolVersion},
          {"preset_version", kPresetVersion}};
}

KvList params_header(const EngineParams& p) {
  return {{"J", fmt17(p.J)},
          {"h_i", fmt17(p.h_i)},
          {"h_f", fmt17(p.h_f)},
          {"T_c", fmt17(p.T_c)},
          {"T_h", fmt17(p.T_h)}};
}

KvList scan_spec_header(const ScanSpec& spec) {
  KvList kv;
  fixed_header(kv, spec.fixed);
  if (spec.axis1) axis_header(kv, *spec.axis1, "axis1");
  if (spec.axis2) axis_header(kv, *spec.axis2, "axis2");
  return kv;
}

Table grid_table(const ScanGrid& g, const KvList& extra_header) {
  Table t;
  t.header = tool_header();
  t.header.insert(t.header.end(), extra_header.begin(), extra_header.end());
  const auto sk = scan_spec_header(g.spec);
  t.header.insert(t.header.end(), sk.begin(), sk.end());

  const auto& quantities =
      g.spec.quantities.empty() ? default_quantities() : g.spec.quantities;
  t.columns.push_back(to_string(g.spec.axis1->param));
  if (g.spec.axis2) t.columns.push_back(to_string(g.spec.axis2->param));
  t.columns.insert(t.columns.end(), quantities.begin(), quantities.end());

  t.rows.reserve(g.cells.size());
  for (const auto& c : g.cells) {
    std::vector<std::string> row;
    row.reserve(t.columns.size());
    row.push_back(fmt17(c.a1));
    if (g.spec.axis2) row.push_back(fmt17(c.a2));
    for (const auto& q : quantities) row.push_back(quantity_value(c, q));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table observables_table(const EngineParams& p) {
  Table t;
  t.header = tool_header();
  const auto pk = params_header(p);
  t.header.insert(t.header.end(), pk.begin(), pk.end());
  t.columns = default_quantities();
  const ScanCell c = evaluate_cell(p);
  std::vector<std::string> row;
  row.reserve(t.columns.size());
  for (const auto& q : t.columns) row.push_back(quantity_value(c, q));
  t.rows.push_back(std::move(row));
  return t;
}

Table distribution_table(const DiscreteDistribution& d, const EngineParams& p,
                         const std::string& which) {
  Table t;
  t.header = tool_header();
  t.header.emplace_back("distribution", which);
  const auto pk = params_header(p);
  t.header.insert(t.header.end(), pk.begin(), pk.end());
  const auto e = efficiency(p);
  t.header.emplace_back("eta_0", fmt17(e.eta_0));
  t.header.emplace_back("eta_th", e.eta_th ? fmt17(*e.eta_th) : std::string());
  t.header.emplace_back("eta_C", fmt17(e.eta_C));
  t.header.emplace_back("undefined_mass", fmt17(d.undefined_mass));
  t.header.emplace_back("divergent_mass", fmt17(d.divergent_mass));
  t.columns = {"value", "prob"};
  for (const auto& a : d.atoms)
    t.rows.push_back({fmt17(a.value), fmt17(a.prob)});
  return t;
}

Table trajectory_table(const TrajectoryDistribution& td, const KvList& extra,
                       const TrajectoryDistribution* exact) {
  Table t;
  t.header = tool_header();
  const auto pk = params_header(td.params);
  t.header.insert(t.header.end(), pk.begin(), pk.end());
  t.header.insert(t.header.end(), extra.begin(), extra.end());
  t.columns = {"n", "l", "W1", "Qh", "W2", "prob"};
  if (exact) t.columns.push_back("prob_exact");
  for (std::size_t k = 0; k < td.atoms.size(); ++k) {
    const auto& a = td.atoms[k];
    std::vector<std::string> row = {std::to_string(a.n), std::to_string(a.l),
                                    fmt17(a.W1), fmt17(a.Qh), fmt17(a.W2),
                                    fmt17(a.prob)};
    if (exact) row.push_back(fmt17(exact->atoms[k].prob));
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace otto
