#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "cricrec/error.h"
#include "cricrec/rating/innings.h"
#include "cricrec/rating/monte_carlo.h"

using namespace cricrec;

namespace {

// Exact forward recursion over (ball, wickets lost); independent of the
// binomial closed form. Runs at the end are r × (balls survived).
struct DpMoments {
  double mean = 0, second = 0, mass = 0, p_allout = 0;
};

DpMoments dp_moments(double r, double q) {
  std::array<long double, 10> live{};
  live[0] = 1.0L;
  DpMoments out;
  long double mean = 0, second = 0, mass = 0, allout = 0;
  for (int ball = 1; ball <= 300; ++ball) {
    std::array<long double, 10> next{};
    for (int w = 0; w < 10; ++w) {
      if (live[w] == 0) continue;
      next[w] += live[w] * (1.0L - q);
      const long double out = live[w] * q;
      if (w + 1 == 10) {
        const long double runs = r * (ball - 10);
        allout += out;
        mass += out;
        mean += out * runs;
        second += out * runs * runs;
      } else {
        next[w + 1] += out;
      }
    }
    live = next;
  }
  for (int w = 0; w < 10; ++w) {
    const long double runs = r * (300 - w);
    mass += live[w];
    mean += live[w] * runs;
    second += live[w] * runs * runs;
  }
  out.mean = double(mean);
  out.second = double(second);
  out.mass = double(mass);
  out.p_allout = double(allout);
  return out;
}

}  // namespace

TEST_CASE("dismissal probability") {
  CHECK(dismissal_probability(0.8, 40) == doctest::Approx(0.02));
  CHECK(dismissal_probability(1, 1) == 1.0);
  CHECK(dismissal_probability(2, 1) == 1.0);
  CHECK(InningsModel::make(2, 1).clamped());
  CHECK_FALSE(InningsModel::make(0.8, 40).clamped());
  CHECK_THROWS_AS(dismissal_probability(0, 10), Error);
  CHECK_THROWS_AS(dismissal_probability(1, -1), Error);
  CHECK_THROWS_AS(InningsModel::make(1, 0), Error);
}

TEST_CASE("no dismissals: the full 300 balls are scored") {
  const InningsMoments m = innings_moments_for(0.8, 0.0);
  CHECK(m.e_runs == 240.0);
  CHECK(m.sigma_runs == 0.0);
  CHECK(m.p_allout == 0.0);
  CHECK(m.total_probability == 1.0);
}

TEST_CASE("certain dismissal: all out on ball ten for nothing") {
  const InningsMoments m = innings_moments(InningsModel::make(1.3, 1.3));
  CHECK(m.e_runs == 0.0);
  CHECK(m.sigma_runs == 0.0);
  CHECK(m.p_allout == 1.0);
}

TEST_CASE("closed form agrees with the exact recursion") {
  for (auto [r, avg] : {std::pair{0.8, 40.0}, {1.1, 25.0}, {0.3, 9.0}, {0.95, 120.0}, {1.5, 2.0}}) {
    CAPTURE(r);
    CAPTURE(avg);
    const InningsMoments m = innings_moments(InningsModel::make(r, avg));
    const DpMoments dp = dp_moments(r, r / avg);
    CHECK(m.e_runs == doctest::Approx(dp.mean).epsilon(1e-11));
    CHECK(m.e_runs2 == doctest::Approx(dp.second).epsilon(1e-11));
    CHECK(m.p_allout == doctest::Approx(dp.p_allout).epsilon(1e-11));
    CHECK(std::fabs(m.total_probability - 1.0) < 1e-12);
  }
}

TEST_CASE("outcome probabilities sum to one and moments stay bounded") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ur(1e-6, 2.0), unit(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const double r = ur(rng);
    const double avg = r + unit(rng) * (200.0 - r);
    const InningsMoments m = innings_moments(InningsModel::make(r, avg));
    CHECK(std::fabs(m.total_probability - 1.0) <= 1e-9);
    CHECK(m.e_runs <= 300.0 * r);
    CHECK(m.e_runs < 300.0 * r);  // dismissal probability is positive here
    CHECK(m.e_runs2 - m.e_runs * m.e_runs >= -1e-9);
    CHECK(m.p_allout >= 0.0);
    CHECK(m.p_allout <= 1.0);
  }
}

TEST_CASE("expected runs never fall as the average rises") {
  for (double r : {0.2, 0.8, 1.4}) {
    double prev = -1;
    for (double avg = r; avg <= 400; avg *= 1.07) {
      const double e = innings_moments(InningsModel::make(r, avg)).e_runs;
      CHECK(e >= prev - 1e-9);
      prev = e;
    }
  }
}

TEST_CASE("monte carlo estimator") {
  SUBCASE("certain dismissal scores nothing") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 20; ++i) CHECK(simulate_innings(InningsModel::make(0.7, 0.7), rng) == 0.0);
    CHECK(estimate_moments(InningsModel::make(0.7, 0.5), 1000, 3).mean == 0.0);
  }
  SUBCASE("vanishing dismissal scores the full innings") {
    std::mt19937_64 rng(1);
    const auto model = InningsModel::make(0.8, 1e300);
    for (int i = 0; i < 20; ++i) CHECK(simulate_innings(model, rng) == doctest::Approx(240.0));
    const auto est = estimate_moments(model, 500, 9);
    CHECK(est.mean == doctest::Approx(240.0));
    CHECK(est.std == 0.0);
  }
  SUBCASE("same seed, same estimate, regardless of workers") {
    const auto model = InningsModel::make(0.9, 30);
    const auto a = estimate_moments(model, 20000, 42, 1);
    const auto b = estimate_moments(model, 20000, 42, 4);
    CHECK(a.mean == b.mean);
    CHECK(a.std == b.std);
    CHECK(a.p_allout == b.p_allout);
    CHECK(estimate_moments(model, 20000, 43, 1).mean != a.mean);
  }
  SUBCASE("rejects zero trials") { CHECK_THROWS_AS(estimate_moments(InningsModel::make(1, 10), 0, 1), Error); }
}

TEST_CASE("closed form within three standard errors of one million simulated innings") {
  const auto model = InningsModel::make(0.8, 40);
  const InningsMoments m = innings_moments(model);
  const auto est = estimate_moments(model, 1'000'000, 20161002);
  CHECK(std::fabs(m.e_runs - est.mean) <= 3 * est.standard_error);
  CHECK(std::fabs(m.sigma_runs - est.std) / est.std <= 0.02);
}
