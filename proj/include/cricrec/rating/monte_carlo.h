#pragma once

#include <cstdint>
#include <random>

#include "cricrec/rating/innings.h"

namespace cricrec {

struct MonteCarloEstimate {
  std::int64_t trials = 0;
  double mean = 0;
  double std = 0;             // sample standard deviation
  double standard_error = 0;  // std / sqrt(trials)
  double p_allout = 0;
};

// One innings simulated ball by ball. Returns runs scored.
double simulate_innings(const InningsModel& model, std::mt19937_64& rng);

// Trials are split into a fixed number of partitions, each with a seed
// derived from `seed` and its index, so the estimate does not depend on
// the worker count.
MonteCarloEstimate estimate_moments(const InningsModel& model, std::int64_t trials, std::uint64_t seed,
                                    unsigned threads = 0);

}  // namespace cricrec
