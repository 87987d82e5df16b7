#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "otto/cycle.hpp"
#include "otto/spectrum.hpp"

namespace otto {

// One projective-measurement outcome: level n found after cold
// equilibration at h_i, level l found after hot equilibration at h_f.
// The quenches preserve level populations, so (n, l) fixes every energy
// exchange of the cycle.
struct TrajectoryAtom {
  int n = 0;
  int l = 0;
  double W1 = 0.0;   // quench h_i -> h_f in level n
  double Qh = 0.0;   // hot-bath jump n -> l at fixed h_f
  double W2 = 0.0;   // quench h_f -> h_i in level l
  double prob = 0.0;
};

// All 16 outcomes, ordered by (n, l) row-major.
struct TrajectoryDistribution {
  EngineParams params;
  std::array<TrajectoryAtom, kLevels * kLevels> atoms;
};

TrajectoryDistribution enumerate_trajectories(const EngineParams& params);

// Same layout with probabilities replaced by empirical frequencies from
// `count` independent draws.  Draw i consumes stream indices 2i and 2i+1
// (cold level, then hot level), so results are independent of threading
// and identical for identical (params, count, seed).
TrajectoryDistribution sample_trajectories(const EngineParams& params,
                                           std::uint64_t count,
                                           std::uint64_t seed);

struct DistributionAtom {
  double value = 0.0;
  double prob = 0.0;
};

// A scalar functional of the trajectory, collapsed to its distinct values.
// Atoms are sorted by value; values closer than 1e-12 are merged with
// their probabilities added, so equal-by-construction outcomes (e.g. the
// same net work reached through different levels) appear once.
struct DiscreteDistribution {
  std::vector<DistributionAtom> atoms;
  double undefined_mass = 0.0;  // outcomes where the functional is 0/0
  double divergent_mass = 0.0;  // outcomes with zero denominator, nonzero numerator
};

inline constexpr double kAtomMergeTol = 1e-12;

// Net work W1 + W2.  Support is contained in {-2,-1,0,1,2} * delta_h.
DiscreteDistribution work_distribution(const TrajectoryDistribution& td);

// -(W1+W2) / <Qh>: stochastic work against the *mean* hot heat.  Defined
// for every trajectory, but requires <Qh> != 0 (throws undefined_error
// otherwise).  Its mean is exactly -<W>/<Qh>.
DiscreteDistribution scaled_efficiency_distribution(const TrajectoryDistribution& td);

// -(W1+W2) / Qh with the trajectory's own heat in the denominator.
// Trajectories with Qh = 0 carry no defined value: those with W = 0 are
// accumulated in undefined_mass, those with W != 0 in divergent_mass.
DiscreteDistribution stochastic_efficiency_distribution(const TrajectoryDistribution& td);

// E[value^order] (order >= 1).  Throws undefined_error if any probability
// mass escaped to undefined or divergent outcomes.
double distribution_moments(const DiscreteDistribution& d, int order);

}  // namespace otto
