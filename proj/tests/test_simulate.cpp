#include <catch_amalgamated.hpp>

#include <cmath>

#include "bephaz/data.hpp"
#include "bephaz/simulate.hpp"
#include "test_util.hpp"

using namespace bephaz;

namespace {
double poisson_pmf(int k, double lambda) {
  return std::exp(-lambda + k * std::log(lambda) - std::lgamma(k + 1.0));
}
}  // namespace

TEST_CASE("shifted Poisson has mean lambda+1 and variance lambda") {
  Rng rng(17);
  const int n = 100000;
  std::vector<double> draws;
  for (int i = 0; i < n; ++i) draws.push_back(sample_shifted_poisson(8.0, rng));
  const double se_mean = std::sqrt(8.0 / n);
  CHECK(test_util::mean(draws) == Catch::Approx(9.0).margin(3 * se_mean));
  CHECK(test_util::variance(draws) == Catch::Approx(8.0).epsilon(0.05));
  for (double d : draws) REQUIRE(d >= 1.0);
}

TEST_CASE("shifted Poisson degenerates to 1 as lambda tends to zero") {
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) CHECK(sample_shifted_poisson(1e-9, rng) == 1);
  CHECK_THROWS_AS(sample_shifted_poisson(0.0, rng), ConfigError);
}

TEST_CASE("generate produces the configured record counts deterministically") {
  SimDesign design;
  design.n_per_time = 200;
  design.n_times = 5;
  design.seed = 31;
  auto records = generate(design);
  CHECK(records.size() == 1000);
  for (int t = 1; t <= 5; ++t) {
    const auto count = std::count_if(records.begin(), records.end(),
                                     [&](const SurvivalRecord& r) { return r.time == t; });
    CHECK(count == 200);
  }
  auto again = generate(design);
  CHECK(records == again);
  design.seed = 32;
  CHECK(generate(design) != records);
}

TEST_CASE("censoring fractions match the reported design rates") {
  SimDesign design;  // full design: lambda 8 + (t-1)/2, censor 18, n=1000, 15 periods
  design.seed = 20240815;
  auto records = generate(design);
  auto censored_fraction = [&](int t) {
    int total = 0, censored = 0;
    for (const auto& rec : records) {
      if (rec.time != t) continue;
      ++total;
      if (!rec.exact) ++censored;
    }
    return static_cast<double>(censored) / total;
  };
  const double se1 = std::sqrt(0.0289 * (1 - 0.0289) / design.n_per_time);
  const double se15 = std::sqrt(0.3308 * (1 - 0.3308) / design.n_per_time);
  CHECK(censored_fraction(1) == Catch::Approx(0.0289).margin(3 * se1));
  CHECK(censored_fraction(15) == Catch::Approx(0.3308).margin(3 * se15));
}

TEST_CASE("an effectively infinite censoring rate leaves no censored records below the cap") {
  SimDesign design;
  design.lambda_censor = 1e6;
  design.n_per_time = 500;
  design.n_times = 2;
  design.max_age = 1000;  // cap far beyond any simulated lifetime
  design.seed = 3;
  for (const auto& rec : generate(design)) CHECK(rec.exact);
}

TEST_CASE("lifetimes beyond max_age are recorded as censored at max_age") {
  SimDesign design;
  design.lambda_base = 30.0;
  design.lambda_slope = 0.0;
  design.lambda_censor = 1e6;
  design.max_age = 18;
  design.n_per_time = 200;
  design.n_times = 1;
  design.seed = 8;
  int truncated = 0;
  for (const auto& rec : generate(design)) {
    CHECK(rec.age <= 18);
    if (rec.age == 18 && !rec.exact) ++truncated;
  }
  CHECK(truncated > 0);  // Po+(30) puts most mass above 18
}

TEST_CASE("true hazard at age 1 is exp(-lambda)") {
  CHECK(true_hazard(8.0, 1) == Catch::Approx(std::exp(-8.0)).epsilon(1e-12));
  CHECK(true_hazard(8.0, 1) == Catch::Approx(3.3546e-4).epsilon(1e-4));
}

TEST_CASE("true hazard increases in age and decreases in time along the design") {
  for (int x = 1; x < 18; ++x) {
    CHECK(true_hazard(8.0, x) < true_hazard(8.0, x + 1));
  }
  SimDesign design;
  for (int t = 1; t < 15; ++t) {
    for (int x = 1; x <= 18; ++x) {
      CHECK(true_hazard(design.lambda_at(t + 1), x) < true_hazard(design.lambda_at(t), x));
    }
  }
}

TEST_CASE("hazard-to-density round trip reproduces the shifted Poisson pmf") {
  const double lambda = 8.0;
  double survival = 1.0;
  for (int x = 1; x <= 40; ++x) {
    const double hazard = true_hazard(lambda, x);
    const double density = hazard * survival;
    CHECK(density == Catch::Approx(poisson_pmf(x - 1, lambda)).margin(1e-12));
    survival *= 1.0 - hazard;
  }
}

TEST_CASE("true hazard stays well-defined deep in the tail") {
  for (int x : {50, 100, 400}) {
    const double h = true_hazard(8.0, x);
    CHECK(std::isfinite(h));
    CHECK(h > 0.0);
    CHECK(h < 1.0);
  }
}

TEST_CASE("empirical hazard of a large uncensored cohort matches the truth") {
  SimDesign design;
  design.lambda_base = 8.0;
  design.lambda_slope = 0.0;
  design.lambda_censor = 1e6;
  design.n_per_time = 100000;
  design.n_times = 1;
  design.max_age = 30;
  design.seed = 77;
  Grid grid(design.max_age, 1);
  auto stats = aggregate(generate(design), grid);
  for (int x = 1; x <= design.max_age; ++x) {
    const int m = stats.at_risk(x, 1);
    if (m < 100) break;  // binomial band meaningless in the far tail
    const double truth = true_hazard(8.0, x);
    const double se = std::sqrt(truth * (1 - truth) / m);
    CHECK(static_cast<double>(stats.deaths(x, 1)) / m == Catch::Approx(truth).margin(3 * se + 1e-12));
  }
}

TEST_CASE("true hazard matrix covers forecast columns with the drifted rate") {
  SimDesign design;
  design.n_times = 4;
  design.max_age = 6;
  auto h = true_hazard_matrix(design, 2);
  CHECK(h.rows() == 6);
  CHECK(h.cols() == 6);
  CHECK(h(3, 6) == Catch::Approx(true_hazard(design.lambda_at(6), 3)));
}
