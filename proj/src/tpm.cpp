#include "otto/tpm.hpp"

#include <algorithm>
#include <cmath>

#include "otto/errors.hpp"
#include "otto/numeric.hpp"
#include "otto/rng.hpp"

namespace otto {

namespace {

// Fill the per-outcome energy bookkeeping shared by the exact and the
// sampled distribution.
void fill_energies(const EngineParams& p, TrajectoryDistribution& td) {
  const auto Ei = energies(p.h_i, p.J);
  const auto Ef = energies(p.h_f, p.J);
  for (int n = 0; n < kLevels; ++n) {
    for (int l = 0; l < kLevels; ++l) {
      auto& a = td.atoms[n * kLevels + l];
      a.n = n;
      a.l = l;
      a.W1 = Ef[n] - Ei[n];
      a.Qh = Ef[l] - Ef[n];
      a.W2 = Ei[l] - Ef[l];
    }
  }
}

// Sort by value, then merge runs of values closer than kAtomMergeTol.
DiscreteDistribution collapse(std::vector<DistributionAtom> raw) {
  std::sort(raw.begin(), raw.end(),
            [](const DistributionAtom& a, const DistributionAtom& b) {
              return a.value < b.value;
            });
  DiscreteDistribution d;
  for (const auto& a : raw) {
    if (!d.atoms.empty() && a.value - d.atoms.back().value <= kAtomMergeTol)
      d.atoms.back().prob += a.prob;
    else
      d.atoms.push_back(a);
  }
  return d;
}

}  // namespace

TrajectoryDistribution enumerate_trajectories(const EngineParams& params) {
  TrajectoryDistribution td{params, {}};
  fill_energies(params, td);
  const auto cold = thermal_point(params.beta_c(), params.h_i, params.J);
  const auto hot = thermal_point(params.beta_h(), params.h_f, params.J);
  for (auto& a : td.atoms)
    a.prob = cold.populations[a.n] * hot.populations[a.l];
  return td;
}

TrajectoryDistribution sample_trajectories(const EngineParams& params,
                                           std::uint64_t count,
                                           std::uint64_t seed) {
  if (count == 0) throw validation_error("sample_trajectories: count must be >= 1");
  TrajectoryDistribution td{params, {}};
  fill_energies(params, td);

  const auto cold = thermal_point(params.beta_c(), params.h_i, params.J);
  const auto hot = thermal_point(params.beta_h(), params.h_f, params.J);
  std::array<double, kLevels> ccum{}, hcum{};
  double cs = 0.0, hs = 0.0;
  for (int n = 0; n < kLevels; ++n) {
    cs += cold.populations[n];
    hs += hot.populations[n];
    ccum[n] = cs;
    hcum[n] = hs;
  }
  // Inverse-CDF pick; the final level absorbs any rounding slack in the
  // cumulative sum.
  auto pick = [](const std::array<double, kLevels>& cum, double u) {
    for (int k = 0; k + 1 < kLevels; ++k)
      if (u < cum[k]) return k;
    return kLevels - 1;
  };

  std::array<std::uint64_t, kLevels * kLevels> hits{};
  for (std::uint64_t i = 0; i < count; ++i) {
    const int n = pick(ccum, rng_unit_at(seed, 2 * i));
    const int l = pick(hcum, rng_unit_at(seed, 2 * i + 1));
    ++hits[n * kLevels + l];
  }
  for (int k = 0; k < kLevels * kLevels; ++k)
    td.atoms[k].prob = static_cast<double>(hits[k]) / static_cast<double>(count);
  return td;
}

DiscreteDistribution work_distribution(const TrajectoryDistribution& td) {
  std::vector<DistributionAtom> raw;
  raw.reserve(td.atoms.size());
  for (const auto& a : td.atoms) raw.push_back({a.W1 + a.W2, a.prob});
  return collapse(std::move(raw));
}

DiscreteDistribution scaled_efficiency_distribution(const TrajectoryDistribution& td) {
  const double qh = mean_heat(td.params).Qh;
  if (qh == 0.0)
    throw undefined_error(
        "scaled_efficiency_distribution: mean hot-stroke heat is zero");
  std::vector<DistributionAtom> raw;
  raw.reserve(td.atoms.size());
  for (const auto& a : td.atoms) raw.push_back({-(a.W1 + a.W2) / qh, a.prob});
  return collapse(std::move(raw));
}

DiscreteDistribution stochastic_efficiency_distribution(const TrajectoryDistribution& td) {
  std::vector<DistributionAtom> raw;
  raw.reserve(td.atoms.size());
  double undefined = 0.0, divergent = 0.0;
  for (const auto& a : td.atoms) {
    const double w = a.W1 + a.W2;
    if (a.Qh == 0.0) {
      (w == 0.0 ? undefined : divergent) += a.prob;
      continue;
    }
    raw.push_back({-w / a.Qh, a.prob});
  }
  auto d = collapse(std::move(raw));
  d.undefined_mass = undefined;
  d.divergent_mass = divergent;
  return d;
}

double distribution_moments(const DiscreteDistribution& d, int order) {
  if (order < 1) throw validation_error("distribution_moments: order must be >= 1");
  if (d.undefined_mass > 0.0 || d.divergent_mass > 0.0)
    throw undefined_error(
        "distribution_moments: distribution carries undefined or divergent mass");
  NeumaierSum s;
  for (const auto& a : d.atoms) s.add(a.prob * std::pow(a.value, order));
  return s.value();
}

}  // namespace otto
