#include <catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "bephaz/diagnostics.hpp"
#include "bephaz/random.hpp"

using namespace bephaz;

TEST_CASE("ergodic means are running averages") {
  Trace trace{{1.0, 3.0, 5.0}, "toy"};
  CHECK(ergodic_means(trace) == std::vector<double>{1.0, 2.0, 3.0});
  Trace flat{{2.5, 2.5, 2.5, 2.5}, "flat"};
  CHECK(ergodic_means(flat) == std::vector<double>(4, 2.5));
}

TEST_CASE("final ergodic mean equals the plain mean") {
  Rng rng(9);
  Trace trace{{}, "beta"};
  double sum = 0.0;
  for (int i = 0; i < 5000; ++i) {
    trace.values.push_back(rng.beta(2.0, 3.0));
    sum += trace.values.back();
  }
  CHECK(ergodic_means(trace).back() == Catch::Approx(sum / 5000.0).margin(1e-15));
}

TEST_CASE("acf is 1 at lag zero and bounded") {
  Rng rng(2);
  Trace trace{{}, "noise"};
  for (int i = 0; i < 4000; ++i) trace.values.push_back(rng.uniform01());
  auto rho = acf(trace, 30);
  CHECK(rho[0] == 1.0);
  for (double r : rho) {
    CHECK(r >= -1.0);
    CHECK(r <= 1.0);
  }
}

TEST_CASE("independent draws stay inside the white-noise band") {
  Rng rng(6);
  Trace trace{{}, "prior"};
  const int n = 10000;
  for (int i = 0; i < n; ++i) trace.values.push_back(rng.beta(2.0, 3.0));
  auto rho = acf(trace, 20);
  const double band = 4.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t k = 1; k < rho.size(); ++k) CHECK(std::abs(rho[k]) < band);
}

TEST_CASE("alternating trace has lag-1 autocorrelation near -1") {
  Trace trace{{}, "alternating"};
  for (int i = 0; i < 2000; ++i) trace.values.push_back(i % 2 == 0 ? 1.0 : -1.0);
  auto rho = acf(trace, 2);
  CHECK(rho[1] == Catch::Approx(-1.0).margin(1e-3));
}

TEST_CASE("zero-variance trace warns and returns the degenerate acf") {
  Trace trace{std::vector<double>(100, 3.0), "constant"};
  std::ostringstream warnings;
  auto rho = acf(trace, 5, &warnings);
  CHECK(rho == std::vector<double>{1.0, 0.0, 0.0, 0.0, 0.0, 0.0});
  CHECK(warnings.str().find("zero-variance") != std::string::npos);
}

TEST_CASE("acf validates its inputs") {
  Trace trace{{1.0, 2.0}, "short"};
  CHECK_THROWS_AS(acf(trace, 2), ConfigError);
  Trace empty{{}, "empty"};
  CHECK_THROWS_AS(acf(empty, 1), ConfigError);
  Trace inf{{1.0, std::numeric_limits<double>::infinity()}, "inf"};
  CHECK_THROWS_AS(acf(inf, 1), ConfigError);
}

TEST_CASE("histogram frequencies sum to one") {
  Rng rng(4);
  Trace trace{{}, "beta"};
  for (int i = 0; i < 5000; ++i) trace.values.push_back(rng.beta(2.0, 3.0));
  auto h = histogram(trace, 25);
  CHECK(h.frequencies.size() == 25);
  CHECK(h.edges.size() == 26);
  double total = 0.0;
  for (double f : h.frequencies) total += f;
  CHECK(total == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("single-value trace collapses to one full bin") {
  Trace trace{std::vector<double>(50, 0.7), "point"};
  auto h = histogram(trace, 10);
  REQUIRE(h.frequencies.size() == 1);
  CHECK(h.frequencies[0] == 1.0);
}

TEST_CASE("Be(2,3) histogram mode sits near 1/3") {
  Rng rng(10);
  Trace trace{{}, "beta"};
  for (int i = 0; i < 50000; ++i) trace.values.push_back(rng.beta(2.0, 3.0));
  auto h = histogram(trace, 20);
  const std::size_t mode =
      std::max_element(h.frequencies.begin(), h.frequencies.end()) - h.frequencies.begin();
  const double mode_center = 0.5 * (h.edges[mode] + h.edges[mode + 1]);
  CHECK(mode_center == Catch::Approx(1.0 / 3.0).margin(0.08));
}
