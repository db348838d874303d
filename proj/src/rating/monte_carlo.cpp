#include "cricrec/rating/monte_carlo.h"

#include <array>
#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include "cricrec/error.h"

namespace cricrec {

namespace {

constexpr int kPartitions = 64;

// A ball is a dismissal when a uniform 64-bit draw falls below this.
struct WicketThreshold {
  bool always = false;
  std::uint64_t below = 0;

  explicit WicketThreshold(double p_out) {
    if (p_out >= 1.0) {
      always = true;
    } else if (p_out > 0.0) {
      const long double scaled = static_cast<long double>(p_out) * 18446744073709551616.0L;
      below = scaled >= 18446744073709551615.0L ? ~std::uint64_t{0} : static_cast<std::uint64_t>(scaled);
    }
  }
  bool hit(std::mt19937_64& rng) const { return always || rng() < below; }
};

struct Innings {
  int scoring_balls = 0;
  bool all_out = false;
};

Innings play(const WicketThreshold& wicket, std::mt19937_64& rng) {
  Innings inn;
  int wickets = 0;
  for (int ball = 0; ball < kInningsBalls; ++ball) {
    if (wicket.hit(rng)) {
      if (++wickets == kInningsWickets) {
        inn.all_out = true;
        break;
      }
    } else {
      ++inn.scoring_balls;
    }
  }
  return inn;
}

struct Tally {
  std::uint64_t n = 0, sum = 0, sum_sq = 0, all_out = 0;
};

}  // namespace

double simulate_innings(const InningsModel& model, std::mt19937_64& rng) {
  const WicketThreshold wicket(model.dismissal_probability());
  return model.r * play(wicket, rng).scoring_balls;
}

MonteCarloEstimate estimate_moments(const InningsModel& model, std::int64_t trials, std::uint64_t seed,
                                    unsigned threads) {
  if (trials < 1) throw malformed("trials must be at least 1");
  const WicketThreshold wicket(model.dismissal_probability());
  std::array<Tally, kPartitions> tallies{};
  std::atomic<int> next{0};
  auto work = [&] {
    for (int part = next++; part < kPartitions; part = next++) {
      const std::int64_t count = trials / kPartitions + (part < trials % kPartitions ? 1 : 0);
      std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                        static_cast<std::uint32_t>(part)};
      std::mt19937_64 rng(seq);
      Tally& t = tallies[part];
      for (std::int64_t i = 0; i < count; ++i) {
        const Innings inn = play(wicket, rng);
        const auto k = static_cast<std::uint64_t>(inn.scoring_balls);
        ++t.n;
        t.sum += k;
        t.sum_sq += k * k;
        t.all_out += inn.all_out;
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  {
    std::vector<std::jthread> pool;
    for (unsigned i = 1; i < threads; ++i) pool.emplace_back(work);
    work();
  }

  // Integer totals make the merge exact and order-free.
  Tally total;
  for (const Tally& t : tallies) {
    total.n += t.n;
    total.sum += t.sum;
    total.sum_sq += t.sum_sq;
    total.all_out += t.all_out;
  }
  const long double n = static_cast<long double>(total.n);
  const long double mean_k = total.sum / n;
  const long double var_k = total.n > 1 ? (total.sum_sq - n * mean_k * mean_k) / (n - 1) : 0.0L;

  MonteCarloEstimate est;
  est.trials = trials;
  est.mean = static_cast<double>(model.r * mean_k);
  est.std = static_cast<double>(model.r * std::sqrt(std::max(var_k, 0.0L)));
  est.standard_error = est.std / std::sqrt(static_cast<double>(trials));
  est.p_allout = static_cast<double>(total.all_out / n);
  return est;
}

}  // namespace cricrec
