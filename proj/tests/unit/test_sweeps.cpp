#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <cstring>

#include "levsim/config.hpp"
#include "levsim/sweeps.hpp"

using namespace levsim;

namespace {

StateSpaceModel fig1_model() {
  const auto p = evaluate_point(SystemConfig{}, 0.8, RingMode::fixed_charge);
  return p.model;
}

bool same(const std::optional<double>& a, const std::optional<double>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || std::memcmp(&*a, &*b, sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("parallel spectrum sweep is bitwise identical to the serial loop") {
  const auto m = fig1_model();
  const auto grid = linear_grid(-3, 3, 20001, m.coeffs.kappa);
  const auto par = spectrum_sweep(m, grid);
  const auto ser = reference::spectrum_sweep(m, grid);
  REQUIRE(par.size() == ser.size());
  std::size_t diff = 0;
  for (std::size_t i = 0; i < par.size(); ++i) {
    if (std::memcmp(&par[i].S_XX, &ser[i].S_XX, sizeof(double)) != 0 ||
        std::memcmp(&par[i].S_YY, &ser[i].S_YY, sizeof(double)) != 0 || par[i].omega != ser[i].omega)
      ++diff;
  }
  CHECK(diff == 0);
}

TEST_CASE("parallel entanglement sweep matches the serial loop") {
  SystemConfig c;
  c.ring = RingSource::field(2.5e11);
  const auto grid = linear_grid(0.01, 1.2, 200);
  for (auto mode : {RingMode::fixed_charge, RingMode::resonant}) {
    const auto par = entanglement_sweep(c, grid, mode);
    const auto ser = reference::entanglement_sweep(c, grid, mode);
    REQUIRE(par.size() == ser.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
      CHECK(same(par[i].E_n, ser[i].E_n));
      CHECK(same(par[i].x_s, ser[i].x_s));
      CHECK(same(par[i].Q_used, ser[i].Q_used));
      CHECK(par[i].status == ser[i].status);
      CHECK(par[i].delta0_over_kappa == grid[i]);
    }
  }
}

TEST_CASE("parallel stability map matches the serial loop") {
  const SystemConfig c;
  const auto dgrid = linear_grid(-1.5, 1.5, 31);
  const auto pgrid = linear_grid(1.0, 2.0, 7);
  auto set = [](SystemConfig& s, double v) { set_numeric_key(s, "input_power_mw", v); };
  const auto par = stability_map(c, dgrid, pgrid, set);
  const auto ser = reference::stability_map(c, dgrid, pgrid, set);
  REQUIRE(par.size() == dgrid.size() * pgrid.size());
  REQUIRE(par.size() == ser.size());
  for (std::size_t i = 0; i < par.size(); ++i) {
    CHECK(par[i].delta0_over_kappa == dgrid[i / pgrid.size()]);
    CHECK(par[i].param == pgrid[i % pgrid.size()]);
    CHECK(same(par[i].S1, ser[i].S1));
    CHECK(same(par[i].S2, ser[i].S2));
    CHECK(same(par[i].max_real_over_kappa, ser[i].max_real_over_kappa));
    CHECK(par[i].status == ser[i].status);
  }
}

TEST_CASE("stability verdicts agree across the map") {
  const SystemConfig c;
  const auto dgrid = linear_grid(-1.5, 1.5, 61);
  const std::vector<double> pgrid{1.0};
  const auto cells = stability_map(c, dgrid, pgrid, [](SystemConfig& s, double v) {
    set_numeric_key(s, "input_power_mw", v);
  });
  int evaluated = 0, disagree = 0;
  for (const auto& cell : cells) {
    if (cell.status != "ok") continue;
    ++evaluated;
    if (*cell.rh == Verdict::marginal) continue;
    if ((*cell.rh == Verdict::stable) != *cell.eigen_stable) ++disagree;
  }
  CHECK(evaluated > 30);
  CHECK(disagree == 0);
}

TEST_CASE("SIM_THREADS caps the thread count") {
  const char* old = std::getenv("SIM_THREADS");
  const std::string saved = old ? old : "";
  setenv("SIM_THREADS", "1", 1);
  CHECK(sweep_threads() == 1);
  setenv("SIM_THREADS", "garbage", 1);
  CHECK(sweep_threads() >= 1);
  setenv("SIM_THREADS", "-4", 1);
  CHECK(sweep_threads() >= 1);

  // results do not depend on the count
  const auto m = fig1_model();
  const auto grid = linear_grid(-2, 2, 999, m.coeffs.kappa);
  setenv("SIM_THREADS", "1", 1);
  const auto one = spectrum_sweep(m, grid);
  setenv("SIM_THREADS", "3", 1);
  const auto three = spectrum_sweep(m, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK(one[i].S_XX == three[i].S_XX);

  if (old) setenv("SIM_THREADS", saved.c_str(), 1);
  else unsetenv("SIM_THREADS");
}

TEST_CASE("bad points become row statuses") {
  SystemConfig c;
  const std::vector<double> grid{-0.8, 0.8};
  const auto rows = entanglement_sweep(c, grid, RingMode::fixed_charge);
  CHECK(rows[0].status == "AllRootsUnstable");
  CHECK(!rows[0].E_n);
  CHECK(rows[1].status == "ok");
  CHECK(rows[1].E_n.has_value());

  const auto cells = stability_map(c, grid, std::vector<double>{5e6}, [](SystemConfig& s, double v) {
    set_numeric_key(s, "ring_field_v_m", v * 1e6);
  });
  for (const auto& cell : cells) {
    CHECK(cell.status == "NoRootInInterval");
    CHECK(!cell.S1);
  }
}

TEST_CASE("spectrum rows are even on a symmetric grid") {
  const auto m = fig1_model();
  const auto grid = linear_grid(-3, 3, 3001, m.coeffs.kappa);
  const auto t = spectrum_sweep(m, grid);
  for (std::size_t i = 0; i < grid.size() / 2; ++i) {
    const auto& a = t[i];
    const auto& b = t[grid.size() - 1 - i];
    CHECK(std::abs(a.S_XX - b.S_XX) < 1e-12 * a.S_XX);
    CHECK(std::abs(a.S_YY - b.S_YY) < 1e-12 * a.S_YY);
  }
}

TEST_CASE("spectrum_sweep_rows keeps going past failures") {
  const auto m = fig1_model();
  const std::vector<double> grid{0.0, 1e3, 1e6};
  const auto rows = spectrum_sweep_rows(m, grid);
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) CHECK(r.status == "ok");
}
