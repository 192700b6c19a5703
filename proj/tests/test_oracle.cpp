#include <catch_amalgamated.hpp>

#include "bephaz/gibbs.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

using namespace bephaz;

TEST_CASE("oracle reproduces the conjugate posterior when c = 0") {
  Grid grid(2, 2);
  auto prior = BepPrior::constant(1.5, 2.5, 1, 1, 0, grid);
  SufficientStats stats(grid);
  stats.deaths(1, 1) = 2;
  stats.at_risk(1, 1) = 9;
  stats.deaths(2, 2) = 1;
  stats.at_risk(2, 2) = 4;
  auto exact = test_oracle::enumerate_posterior(prior, grid, stats);
  CHECK(exact.n_configurations == 1);
  CHECK(exact.e_pi(1, 1) == Catch::Approx((1.5 + 2) / (4.0 + 9)).margin(1e-14));
  CHECK(exact.e_pi(2, 2) == Catch::Approx((1.5 + 1) / (4.0 + 4)).margin(1e-14));
  CHECK(exact.e_pi(1, 2) == Catch::Approx(1.5 / 4.0).margin(1e-14));
  for (int x = 1; x <= 2; ++x)
    for (int t = 1; t <= 2; ++t) CHECK(exact.e_upsilon(x, t) == 0.0);
}

TEST_CASE("oracle matches prior moments with no data") {
  // with c > 0 but r = m = 0, every hazard keeps its Be(a,b) marginal mean
  Grid grid(2, 2);
  auto prior = BepPrior::constant(2.0, 3.0, 1, 1, 1, grid);
  auto exact = test_oracle::enumerate_posterior(prior, grid, SufficientStats(grid));
  CHECK(exact.n_configurations == 16);
  for (int x = 1; x <= 2; ++x) {
    for (int t = 1; t <= 2; ++t) {
      CHECK(exact.e_pi(x, t) == Catch::Approx(0.4).margin(1e-12));
      CHECK(exact.e_upsilon(x, t) == Catch::Approx(prior.c(x, t) * 0.4).margin(1e-12));
    }
  }
}

TEST_CASE("oracle refuses oversized configuration spaces") {
  Grid grid(4, 4);
  auto prior = BepPrior::constant(1.0, 1.0, 1, 1, 3, grid);  // 4^16 configurations
  CHECK_THROWS(test_oracle::enumerate_posterior(prior, grid, SufficientStats(grid)));
}

TEST_CASE("Gibbs posterior means match the enumeration oracle") {
  Grid grid(2, 2);
  auto prior = BepPrior::constant(1.0, 1.0, 1, 1, 1, grid);
  SufficientStats stats(grid);
  const int r[2][2] = {{1, 0}, {2, 1}};
  const int m[2][2] = {{3, 2}, {3, 3}};
  for (int x = 1; x <= 2; ++x) {
    for (int t = 1; t <= 2; ++t) {
      stats.deaths(x, t) = r[x - 1][t - 1];
      stats.at_risk(x, t) = m[x - 1][t - 1];
    }
  }
  auto exact = test_oracle::enumerate_posterior(prior, grid, stats);
  CHECK(exact.n_configurations == 16);

  ChainConfig config{52000, 2000, 1, 31};
  auto summary = run_chain(prior, grid, stats, config);
  for (int x = 1; x <= 2; ++x) {
    for (int t = 1; t <= 2; ++t) {
      std::vector<double> pi_cell, u_cell;
      for (const auto& draw : summary.pi_draws) pi_cell.push_back(draw(x, t));
      for (const auto& draw : summary.upsilon_draws) u_cell.push_back(draw(x, t));
      const double pi_se = test_util::batch_se(pi_cell);
      const double u_se = test_util::batch_se(u_cell);
      CHECK(test_util::mean(pi_cell) == Catch::Approx(exact.e_pi(x, t)).margin(3 * pi_se));
      CHECK(test_util::mean(u_cell) == Catch::Approx(exact.e_upsilon(x, t)).margin(3 * u_se));
    }
  }
}

TEST_CASE("Gibbs matches the oracle on a grid with forecast columns and mixed c") {
  Grid grid(2, 1, 1);
  auto prior = BepPrior::constant(0.8, 1.2, 1, 1, 2, grid);
  prior.c(2, 2) = 1;  // mixed strengths: 3*3*3*2 = 54 configurations
  SufficientStats stats(grid);
  stats.deaths(1, 1) = 1;
  stats.at_risk(1, 1) = 3;
  stats.deaths(2, 1) = 1;
  stats.at_risk(2, 1) = 2;
  auto exact = test_oracle::enumerate_posterior(prior, grid, stats);
  CHECK(exact.n_configurations == 54);

  ChainConfig config{52000, 2000, 1, 17};
  auto summary = run_chain(prior, grid, stats, config);
  for (int x = 1; x <= 2; ++x) {
    for (int t = 1; t <= 2; ++t) {
      std::vector<double> pi_cell, u_cell;
      for (const auto& draw : summary.pi_draws) pi_cell.push_back(draw(x, t));
      for (const auto& draw : summary.upsilon_draws) u_cell.push_back(draw(x, t));
      CHECK(test_util::mean(pi_cell) ==
            Catch::Approx(exact.e_pi(x, t)).margin(3 * test_util::batch_se(pi_cell)));
      CHECK(test_util::mean(u_cell) ==
            Catch::Approx(exact.e_upsilon(x, t)).margin(3 * test_util::batch_se(u_cell)));
    }
  }
}
