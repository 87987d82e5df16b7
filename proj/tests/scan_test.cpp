#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <string>

#include "otto/errors.hpp"
#include "otto/presets.hpp"
#include "otto/scan.hpp"
#include "support/frozen.hpp"

using namespace otto;

namespace {

ScanSpec small_grid_spec() {
  ScanSpec s;
  s.fixed.J = 2.0;
  s.fixed.h_i = 3.0;
  s.fixed.h_f = 4.0;
  s.axis1 = Axis{ScanParam::T_h, 0.5, 20.0, 11, Spacing::Linear};
  s.axis2 = Axis{ScanParam::T_c, 0.5, 10.0, 11, Spacing::Linear};
  return s;
}

}  // namespace

TEST_CASE("axis values: endpoints exact, refinement reproduces the grid") {
  const Axis lin{ScanParam::T_h, 0.05, 20.0, 101, Spacing::Linear};
  const auto v = axis_values(lin);
  REQUIRE(v.size() == 101);
  CHECK(v.front() == 0.05);
  CHECK(v.back() == 20.0);
  for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i] > v[i - 1]);

  Axis fine = lin;
  fine.points = 201;  // 2n-1
  const auto w = axis_values(fine);
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(w[2 * i] == v[i]);

  const Axis lg{ScanParam::T_c, 1e-6, 10.0, 241, Spacing::Log};
  const auto lv = axis_values(lg);
  CHECK(lv.front() == 1e-6);
  CHECK(lv.back() == 10.0);
  for (std::size_t i = 1; i < lv.size(); ++i) CHECK(lv[i] > lv[i - 1]);
  Axis lg2 = lg;
  lg2.points = 481;
  const auto lw = axis_values(lg2);
  for (std::size_t i = 0; i < lv.size(); ++i) CHECK(lw[2 * i] == lv[i]);
}

TEST_CASE("spec validation names every offending field") {
  ScanSpec s = small_grid_spec();
  CHECK_NOTHROW(validate_spec(s));

  SUBCASE("missing field endpoint") {
    s.fixed.h_i.reset();
    CHECK_THROWS_WITH_AS(validate_spec(s), doctest::Contains("h_i"),
                         validation_error);
  }
  SUBCASE("parameter covered twice") {
    s.fixed.T_h = 5.0;
    CHECK_THROWS_WITH_AS(validate_spec(s), doctest::Contains("covered more than once"),
                         validation_error);
  }
  SUBCASE("parameter not covered") {
    s.axis2.reset();
    CHECK_THROWS_WITH_AS(validate_spec(s), doctest::Contains("T_c"),
                         validation_error);
  }
  SUBCASE("log spacing on the coupling axis") {
    s.axis2 = Axis{ScanParam::J, 0.1, 2.0, 11, Spacing::Log};
    s.fixed.T_c = 1.0;
    CHECK_THROWS_WITH_AS(validate_spec(s), doctest::Contains("log spacing"),
                         validation_error);
  }
  SUBCASE("non-positive temperature axis") {
    s.axis2->min = 0.0;
    CHECK_THROWS_WITH_AS(validate_spec(s), doctest::Contains("min > 0"),
                         validation_error);
  }
  SUBCASE("too few points") {
    s.axis1->points = 1;
    CHECK_THROWS_WITH_AS(validate_spec(s), doctest::Contains("points"),
                         validation_error);
  }
  SUBCASE("inverted range") {
    s.axis1->min = 30.0;
    CHECK_THROWS_WITH_AS(validate_spec(s), doctest::Contains("min < max"),
                         validation_error);
  }
  SUBCASE("unknown quantity") {
    s.quantities = {"mean_W", "bogus"};
    CHECK_THROWS_WITH_AS(validate_spec(s), doctest::Contains("bogus"),
                         validation_error);
  }
  SUBCASE("multiple issues reported together") {
    s.fixed.h_i.reset();
    s.quantities = {"bogus"};
    try {
      validate_spec(s);
      FAIL("expected validation_error");
    } catch (const validation_error& e) {
      const std::string msg = e.what();
      CHECK(msg.find("h_i") != std::string::npos);
      CHECK(msg.find("bogus") != std::string::npos);
    }
  }
}

TEST_CASE("grid and line shape requirements") {
  ScanSpec s = small_grid_spec();
  CHECK_NOTHROW(run_grid(s));
  CHECK_THROWS_AS(run_line(s), validation_error);
  s.axis2.reset();
  s.fixed.T_c = 1.0;
  CHECK_NOTHROW(run_line(s));
  CHECK_THROWS_AS(run_grid(s), validation_error);
}

TEST_CASE("grid cells agree with direct evaluation") {
  const auto g = run_grid(small_grid_spec());
  REQUIRE(g.rows() == 11);
  REQUIRE(g.cols() == 11);
  REQUIRE(g.cells.size() == 121);
  for (int i = 0; i < g.rows(); i += 3) {
    for (int j = 0; j < g.cols(); j += 3) {
      const auto& c = g.at(i, j);
      CHECK(c.a1 == g.axis1_values[i]);
      CHECK(c.a2 == g.axis2_values[j]);
      const EngineParams p(2.0, 3.0, 4.0, c.a2, c.a1);
      const auto o = cycle_observables(p);
      CHECK(c.obs.mean_W == o.mean_W);  // identical code path: bitwise equal
      CHECK(c.obs.var_W == o.var_W);
      CHECK(c.obs.mean_Qh == o.mean_Qh);
      CHECK(c.obs.mean_Sigma == o.mean_Sigma);
      CHECK(c.obs.regime == o.regime);
      const auto d = evaluate_cell(p);
      CHECK(d.obs.mean_W == c.obs.mean_W);
      CHECK(d.engine == c.engine);
      if (o.mean_W != 0.0) {
        REQUIRE(c.tur.has_value());
        CHECK(c.tur->slack == verify_tur(p).slack);
      }
    }
  }
}

TEST_CASE("results are bitwise identical for any thread count") {
  ScanSpec s = small_grid_spec();
  s.axis1->points = 64;
  s.axis2->points = 64;  // 4096 cells: the threaded path engages

  setenv("OTTO_THREADS", "1", 1);
  const auto g1 = run_grid(s);
  setenv("OTTO_THREADS", "7", 1);
  const auto g7 = run_grid(s);
  unsetenv("OTTO_THREADS");

  REQUIRE(g1.cells.size() == g7.cells.size());
  for (std::size_t k = 0; k < g1.cells.size(); ++k) {
    const auto& a = g1.cells[k];
    const auto& b = g7.cells[k];
    CHECK(a.a1 == b.a1);
    CHECK(a.a2 == b.a2);
    CHECK(a.obs.mean_W == b.obs.mean_W);
    CHECK(a.obs.var_W == b.obs.var_W);
    CHECK(a.obs.mean_Qh == b.obs.mean_Qh);
    CHECK(a.obs.mean_Sigma == b.obs.mean_Sigma);
    CHECK(a.obs.regime == b.obs.regime);
    CHECK(a.engine == b.engine);
    CHECK(a.tur.has_value() == b.tur.has_value());
    if (a.tur) {
      CHECK(a.tur->bound == b.tur->bound);
      CHECK(a.tur->slack == b.tur->slack);
    }
  }
}

TEST_CASE("doubling a grid never flips labels at shared points") {
  ScanSpec coarse = small_grid_spec();
  ScanSpec fine = coarse;
  fine.axis1->points = 2 * coarse.axis1->points - 1;
  fine.axis2->points = 2 * coarse.axis2->points - 1;
  const auto gc = run_grid(coarse);
  const auto gf = run_grid(fine);
  for (int i = 0; i < gc.rows(); ++i) {
    for (int j = 0; j < gc.cols(); ++j) {
      const auto& a = gc.at(i, j);
      const auto& b = gf.at(2 * i, 2 * j);
      REQUIRE(a.a1 == b.a1);
      REQUIRE(a.a2 == b.a2);
      CHECK(a.obs.regime == b.obs.regime);
      CHECK(a.engine == b.engine);
      CHECK(a.obs.mean_W == b.obs.mean_W);
    }
  }
}

TEST_CASE("census counts add up") {
  const auto g = run_grid(small_grid_spec());
  const auto census = regime_census(g);
  std::size_t regime_total = 0;
  for (Regime r : {Regime::Engine, Regime::CounterRotatingEngine,
                   Regime::Refrigerator, Regime::Accelerator, Regime::Heater,
                   Regime::Degenerate})
    regime_total += census.at(to_string(r));
  CHECK(regime_total == g.cells.size());
  CHECK(census.at("engine_flag") <= census.at("engine") +
                                        census.at("counter_rotating_engine"));
  CHECK(census.at("anomalous_flag") == 0);
}

TEST_CASE("engine components: synthetic masks") {
  ScanGrid g;
  g.axis1_values = {0.0, 1.0, 2.0, 3.0};
  g.axis2_values = {0.0, 1.0, 2.0, 3.0};
  g.cells.resize(16);
  auto set = [&g](int i, int j) { g.cells[i * 4 + j].engine = true; };

  SUBCASE("no engine cells") { CHECK(engine_components(g).empty()); }

  SUBCASE("one L-shaped component") {
    set(0, 0);
    set(1, 0);
    set(1, 1);
    const auto comps = engine_components(g);
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].size() == 3);
  }

  SUBCASE("diagonal contact does not connect") {
    set(0, 0);
    set(1, 1);
    const auto comps = engine_components(g);
    REQUIRE(comps.size() == 2);
    CHECK(comps[0].size() == 1);
    CHECK(comps[1].size() == 1);
  }

  SUBCASE("two blobs, largest first") {
    set(0, 0);
    set(0, 1);
    set(1, 0);
    set(3, 3);
    const auto comps = engine_components(g);
    REQUIRE(comps.size() == 2);
    CHECK(comps[0].size() == 3);
    CHECK(comps[1].size() == 1);
    CHECK(comps[1][0] == 15);
  }
}

TEST_CASE("presets are valid and discoverable") {
  const auto& presets = scan_presets();
  CHECK(presets.size() >= 30);
  for (const auto& p : presets) {
    CAPTURE(p.name);
    CHECK_NOTHROW(validate_spec(p.spec));
    CHECK(!p.description.empty());
    CHECK(p.approx_ranges);
    CHECK(find_scan_preset(p.name) == &p);
  }
  CHECK(find_scan_preset("fig1a") != nullptr);
  CHECK(find_scan_preset("fig10") != nullptr);
  CHECK(find_scan_preset("nope") == nullptr);

  REQUIRE(point_presets().size() == 2);
  CHECK(find_point_preset("fig9-top") != nullptr);
  CHECK(find_point_preset("fig9-bottom") != nullptr);
  CHECK(find_point_preset("fig9-top")->T_c == frozen::kTopTc);
  CHECK(find_point_preset("fig9-bottom")->T_c == frozen::kBotTc);
  CHECK(find_point_preset("fig9-middle") == nullptr);
}

TEST_CASE("extremum: known minima and maxima") {
  // relative work fluctuation has an interior minimum in the coupling
  {
    FixedParams fixed;
    fixed.h_i = 3.0;
    fixed.h_f = 4.0;
    fixed.T_h = 5.0;
    fixed.T_c = 0.01;
    const auto r =
        find_extremum(Objective::RelFluctW, Direction::Minimize,
                      Interval{ScanParam::J, 0.0, 2.999}, fixed, 1e-6);
    CHECK(r.bracket <= 1e-6);
    CHECK(r.arg == doctest::Approx(2.91476542).epsilon(1e-4));
    CHECK(r.value == doctest::Approx(0.91818528).epsilon(1e-6));
    CHECK(r.value < 1.0);
  }
  // efficiency grows with coupling toward the interval edge here
  {
    FixedParams fixed;
    fixed.h_i = 3.0;
    fixed.h_f = 4.0;
    fixed.T_h = 100.0;
    fixed.T_c = 1e-3;
    const auto r =
        find_extremum(Objective::EtaTh, Direction::Maximize,
                      Interval{ScanParam::J, 0.0, 2.99}, fixed, 1e-6);
    CHECK(r.arg > 2.9);
    CHECK(r.value > 0.25);  // beats the uncoupled efficiency
  }
  // mean work over the cold temperature at strong coupling
  {
    FixedParams fixed;
    fixed.J = 4.5;
    fixed.h_i = 3.0;
    fixed.h_f = 4.0;
    fixed.T_h = 100.0;
    const auto r =
        find_extremum(Objective::MeanW, Direction::Minimize,
                      Interval{ScanParam::T_c, 1e-2, 1e2}, fixed, 1e-6);
    CHECK(r.value < -0.2);
    CHECK(r.arg > 1e-2);
    CHECK(r.arg < 1e2);
  }
}

TEST_CASE("extremum validation") {
  FixedParams fixed;
  fixed.h_i = 3.0;
  fixed.h_f = 4.0;
  fixed.T_h = 5.0;
  fixed.T_c = 0.01;
  // swept parameter also fixed
  fixed.J = 1.0;
  CHECK_THROWS_WITH_AS(
      find_extremum(Objective::MeanW, Direction::Minimize,
                    Interval{ScanParam::J, 0.0, 2.0}, fixed, 1e-6),
      doctest::Contains("both swept and fixed"), validation_error);
  fixed.J.reset();
  // missing fixed value
  fixed.T_h.reset();
  CHECK_THROWS_WITH_AS(
      find_extremum(Objective::MeanW, Direction::Minimize,
                    Interval{ScanParam::J, 0.0, 2.0}, fixed, 1e-6),
      doctest::Contains("T_h"), validation_error);
  fixed.T_h = 5.0;
  // inverted interval and bad tolerance
  CHECK_THROWS_AS(find_extremum(Objective::MeanW, Direction::Minimize,
                                Interval{ScanParam::J, 2.0, 1.0}, fixed, 1e-6),
                  validation_error);
  CHECK_THROWS_AS(find_extremum(Objective::MeanW, Direction::Minimize,
                                Interval{ScanParam::J, 0.0, 2.0}, fixed, 0.0),
                  validation_error);
  // temperature interval must stay positive
  CHECK_THROWS_AS(find_extremum(Objective::MeanW, Direction::Minimize,
                                Interval{ScanParam::T_h, 0.0, 2.0},
                                FixedParams{1.0, 3.0, 4.0, 0.01, {}}, 1e-6),
                  validation_error);
}

TEST_CASE("objective and parameter names round-trip") {
  CHECK(objective_from_name("mean_W") == Objective::MeanW);
  CHECK(objective_from_name("abs_mean_W") == Objective::AbsMeanW);
  CHECK(objective_from_name("rel_fluct_W") == Objective::RelFluctW);
  CHECK(objective_from_name("eta_th") == Objective::EtaTh);
  CHECK_THROWS_AS(objective_from_name("bogus"), validation_error);
  CHECK(scan_param_from_name("T_c") == ScanParam::T_c);
  CHECK(scan_param_from_name("T_h") == ScanParam::T_h);
  CHECK(scan_param_from_name("J") == ScanParam::J);
  CHECK_THROWS_AS(scan_param_from_name("j"), validation_error);
  CHECK(std::string(to_string(ScanParam::T_c)) == "T_c");
  CHECK(std::string(to_string(Objective::RelFluctW)) == "rel_fluct_W");
}

TEST_CASE("quantity registry and serialization") {
  const auto& names = default_quantities();
  CHECK(names.size() == 21);
  for (const auto& n : names) CHECK(is_known_quantity(n));
  CHECK(!is_known_quantity("bogus"));

  // a live engine point: everything defined
  const auto live = evaluate_cell(EngineParams(2.0, 3.0, 4.0, 1.0, 5.0));
  CHECK(quantity_value(live, "regime") == "engine");
  CHECK(quantity_value(live, "engine") == "1");
  CHECK(quantity_value(live, "anomalous") == "0");
  CHECK(!quantity_value(live, "mean_W").empty());
  CHECK(!quantity_value(live, "eta_th").empty());
  CHECK(!quantity_value(live, "tur_bound").empty());
  CHECK(quantity_value(live, "tur_satisfied") == "1");

  // a degenerate point: optional quantities serialize as empty fields
  const auto dead = evaluate_cell(EngineParams(0.0, 3.0, 4.0, 3.0, 4.0));
  CHECK(quantity_value(dead, "regime") == "degenerate");
  CHECK(quantity_value(dead, "engine") == "0");
  CHECK(quantity_value(dead, "eta_th").empty());
  CHECK(quantity_value(dead, "rel_fluct_W").empty());
  CHECK(quantity_value(dead, "tur_bound").empty());
  CHECK(quantity_value(dead, "tur_satisfied").empty());

  CHECK_THROWS_AS(quantity_value(live, "bogus"), validation_error);
}

TEST_CASE("thread count override") {
  setenv("OTTO_THREADS", "3", 1);
  CHECK(scan_thread_count() == 3);
  setenv("OTTO_THREADS", "99", 1);
  CHECK(scan_thread_count() == 64);  // clamped
  setenv("OTTO_THREADS", "0", 1);
  CHECK(scan_thread_count() >= 1);  // invalid: fall back
  setenv("OTTO_THREADS", "abc", 1);
  CHECK(scan_thread_count() >= 1);
  unsetenv("OTTO_THREADS");
  CHECK(scan_thread_count() >= 1);
}
