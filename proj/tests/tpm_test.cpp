#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "otto/errors.hpp"
#include "otto/numeric.hpp"
#include "otto/tpm.hpp"
#include "support/frozen.hpp"
#include "support/oracle.hpp"

using namespace otto;

namespace {

EngineParams ref() {
  return EngineParams(frozen::kRefJ, frozen::kRefHi, frozen::kRefHf,
                      frozen::kRefTc, frozen::kRefTh);
}

double mass(const DiscreteDistribution& d) {
  NeumaierSum s;
  for (const auto& a : d.atoms) s.add(a.prob);
  s.add(d.undefined_mass);
  s.add(d.divergent_mass);
  return s.value();
}

// centered moments straight off the trajectory atoms
struct PairMoments {
  double mean_W1 = 0.0, mean_W2 = 0.0, cov = 0.0;
};

PairMoments pair_moments(const TrajectoryDistribution& td) {
  PairMoments m;
  NeumaierSum s1, s2;
  for (const auto& a : td.atoms) {
    s1.add(a.prob * a.W1);
    s2.add(a.prob * a.W2);
  }
  m.mean_W1 = s1.value();
  m.mean_W2 = s2.value();
  NeumaierSum sc;
  for (const auto& a : td.atoms)
    sc.add(a.prob * (a.W1 - m.mean_W1) * (a.W2 - m.mean_W2));
  m.cov = sc.value();
  return m;
}

}  // namespace

TEST_CASE("atom layout and per-level bookkeeping") {
  const auto td = enumerate_trajectories(ref());
  REQUIRE(td.atoms.size() == 16);
  for (int n = 0; n < 4; ++n) {
    for (int l = 0; l < 4; ++l) {
      const auto& a = td.atoms[n * 4 + l];
      CHECK(a.n == n);
      CHECK(a.l == l);
      CHECK(a.prob >= 0.0);
      // field-independent levels contribute exactly zero quench work
      if (n == 1 || n == 2) CHECK(a.W1 == 0.0);
      if (l == 1 || l == 2) CHECK(a.W2 == 0.0);
      // per-trajectory first law: net energy change equals W1 + Qh + W2
      CHECK(a.W1 + a.Qh + a.W2 ==
            doctest::Approx(energies(td.params.h_i, td.params.J)[l] -
                            energies(td.params.h_i, td.params.J)[n])
                .epsilon(1e-14));
    }
  }
  CHECK(td.atoms[15].prob == doctest::Approx(frozen::kRefP33).epsilon(1e-14));
}

TEST_CASE("work distribution at the reference point") {
  const auto d = work_distribution(enumerate_trajectories(ref()));
  REQUIRE(d.atoms.size() == 5);
  CHECK(d.undefined_mass == 0.0);
  CHECK(d.divergent_mass == 0.0);
  const double dh = 1.0;
  CHECK(d.atoms[0].value == doctest::Approx(-2.0 * dh).epsilon(1e-15));
  CHECK(d.atoms[1].value == doctest::Approx(-1.0 * dh).epsilon(1e-15));
  CHECK(std::fabs(d.atoms[2].value) <= 1e-15);
  CHECK(d.atoms[3].value == doctest::Approx(+1.0 * dh).epsilon(1e-15));
  CHECK(d.atoms[4].value == doctest::Approx(+2.0 * dh).epsilon(1e-15));
  CHECK(d.atoms[0].prob == doctest::Approx(frozen::kRefPWm2).epsilon(1e-13));
  CHECK(d.atoms[1].prob == doctest::Approx(frozen::kRefPWm1).epsilon(1e-13));
  CHECK(d.atoms[2].prob == doctest::Approx(frozen::kRefPW0).epsilon(1e-13));
  CHECK(d.atoms[3].prob == doctest::Approx(frozen::kRefPWp1).epsilon(1e-13));
  CHECK(d.atoms[4].prob == doctest::Approx(frozen::kRefPWp2).epsilon(1e-13));
  CHECK(std::fabs(mass(d) - 1.0) <= 1e-12);
}

TEST_CASE("enumeration moments match closed forms and the naive oracle") {
  const std::uint64_t seed = 0x7ea70001;
  for (int k = 0; k < 300; ++k) {
    const auto ps = oracle::random_params(seed, k);
    const EngineParams p(ps.J, ps.h_i, ps.h_f, ps.T_c, ps.T_h);
    const auto td = enumerate_trajectories(p);
    const auto d = work_distribution(td);

    // support never exceeds the five field-swing multiples
    CHECK(d.atoms.size() <= 5);
    CHECK(std::fabs(mass(d) - 1.0) <= 1e-12);
    for (const auto& a : d.atoms)
      CHECK(std::fabs(a.value) <= 2.0 * p.delta_h() + 1e-9);

    const double m1 = distribution_moments(d, 1);
    const double m2 = distribution_moments(d, 2);
    const auto w = mean_work(p);
    const auto v = work_variance(p);
    CHECK(oracle::close(m1, w.W, 1e-12, 1e-14));
    CHECK(oracle::close(m2 - m1 * m1, v.var_W, 1e-12, 1e-14));

    const auto om = oracle::enumerate(ps.J, ps.h_i, ps.h_f, ps.T_c, ps.T_h);
    CHECK(oracle::close(m1, om.mean_W, 1e-12, 1e-14));

    // the two stroke works are uncorrelated: different equilibria
    const auto pm = pair_moments(td);
    CHECK(std::fabs(pm.cov) <= 1e-14);
    CHECK(oracle::close(pm.mean_W1, w.W1, 1e-12, 1e-14));
    CHECK(oracle::close(pm.mean_W2, w.W2, 1e-12, 1e-14));
  }
}

TEST_CASE("scaled efficiency distribution") {
  const auto td = enumerate_trajectories(ref());
  const auto d = scaled_efficiency_distribution(td);
  CHECK(d.atoms.size() <= 5);
  CHECK(d.undefined_mass == 0.0);
  CHECK(d.divergent_mass == 0.0);
  CHECK(std::fabs(mass(d) - 1.0) <= 1e-12);

  // mean is exactly the mean-work efficiency, relative variance matches
  // the work's relative variance
  const double m1 = distribution_moments(d, 1);
  CHECK(m1 == doctest::Approx(frozen::kRefEta).epsilon(1e-12));
  const double m2 = distribution_moments(d, 2);
  const double var_eta = m2 - m1 * m1;
  const double expected =
      frozen::kRefVarW / (frozen::kRefQh * frozen::kRefQh);
  CHECK(var_eta == doctest::Approx(expected).epsilon(1e-12));

  // zero mean heat: the scaling does not exist
  CHECK_THROWS_AS(
      scaled_efficiency_distribution(
          enumerate_trajectories(EngineParams(0.0, 3.0, 4.0, 3.0, 4.0))),
      undefined_error);
}

TEST_CASE("stochastic efficiency distribution splits off singular mass") {
  // distinct hot-side energies: only diagonal outcomes have Qh = 0, and
  // those all carry W = 0
  {
    const auto td = enumerate_trajectories(ref());
    const auto d = stochastic_efficiency_distribution(td);
    CHECK(d.divergent_mass == 0.0);
    double diag = 0.0;
    for (int n = 0; n < 4; ++n) diag += td.atoms[n * 4 + n].prob;
    CHECK(d.undefined_mass == doctest::Approx(diag).epsilon(1e-14));
    CHECK(std::fabs(mass(d) - 1.0) <= 1e-12);
    CHECK_THROWS_AS(distribution_moments(d, 1), undefined_error);
  }
  // J = h_f makes levels 2 and 3 degenerate at the hot field: those
  // cross-outcomes have Qh = 0 with W != 0, i.e. divergent ratios
  {
    const auto td = enumerate_trajectories(EngineParams(4.0, 3.0, 4.0, 1.0, 5.0));
    const auto d = stochastic_efficiency_distribution(td);
    const double expected_divergent =
        td.atoms[2 * 4 + 3].prob + td.atoms[3 * 4 + 2].prob;
    CHECK(d.divergent_mass == doctest::Approx(expected_divergent).epsilon(1e-14));
    CHECK(d.divergent_mass > 0.0);
    CHECK(std::fabs(mass(d) - 1.0) <= 1e-12);
    CHECK_THROWS_AS(distribution_moments(d, 2), undefined_error);
  }
}

TEST_CASE("merging keeps values distinct and conserves probability") {
  const std::uint64_t seed = 0x7ea70002;
  for (int k = 0; k < 200; ++k) {
    const auto ps = oracle::random_params(seed, k);
    const EngineParams p(ps.J, ps.h_i, ps.h_f, ps.T_c, ps.T_h);
    const auto td = enumerate_trajectories(p);
    const auto dw = work_distribution(td);
    const auto ds = stochastic_efficiency_distribution(td);
    for (const auto* d : {&dw, &ds}) {
      for (std::size_t i = 1; i < d->atoms.size(); ++i)
        CHECK(d->atoms[i].value - d->atoms[i - 1].value > kAtomMergeTol);
      CHECK(std::fabs(mass(*d) - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("moment validation") {
  const auto d = work_distribution(enumerate_trajectories(ref()));
  CHECK_THROWS_AS(distribution_moments(d, 0), validation_error);
  CHECK_THROWS_AS(distribution_moments(d, -2), validation_error);
  CHECK(distribution_moments(d, 1) ==
        doctest::Approx(frozen::kRefW).epsilon(1e-13));
}

TEST_CASE("sampling is deterministic and converges") {
  const auto p = ref();
  const auto a = sample_trajectories(p, 20000, 42);
  const auto b = sample_trajectories(p, 20000, 42);
  for (int k = 0; k < 16; ++k) CHECK(a.atoms[k].prob == b.atoms[k].prob);

  const auto c = sample_trajectories(p, 20000, 43);
  bool any_diff = false;
  for (int k = 0; k < 16; ++k)
    if (a.atoms[k].prob != c.atoms[k].prob) any_diff = true;
  CHECK(any_diff);

  double total = 0.0;
  for (const auto& atom : a.atoms) total += atom.prob;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

  // empirical work mean within 5 standard errors of the exact value
  const double emp_W = distribution_moments(work_distribution(a), 1);
  const double se = std::sqrt(frozen::kRefVarW / 20000.0);
  CHECK(std::fabs(emp_W - frozen::kRefW) <= 5.0 * se);

  CHECK_THROWS_AS(sample_trajectories(p, 0, 1), validation_error);
}

TEST_CASE("sampled frequencies pass a goodness-of-fit test") {
  const auto p = ref();
  const std::uint64_t n = 100000;
  const auto emp = sample_trajectories(p, n, 7);
  const auto exact = enumerate_trajectories(p);
  double chi2 = 0.0;
  for (int k = 0; k < 16; ++k) {
    const double expected = exact.atoms[k].prob * static_cast<double>(n);
    const double observed = emp.atoms[k].prob * static_cast<double>(n);
    chi2 += (observed - expected) * (observed - expected) / expected;
  }
  CHECK(chi2 < frozen::kChi2Crit15);
}
