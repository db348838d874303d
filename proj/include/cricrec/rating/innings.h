#pragma once

#include <cstdint>

namespace cricrec {

inline constexpr int kInningsBalls = 300;
inline constexpr int kInningsWickets = 10;

// An innings played by replicas of one player: every ball is either a
// dismissal with probability r/avg or `r` runs.
struct InningsModel {
  double r = 0;    // runs per ball
  double avg = 0;  // runs per dismissal

  // Throws Error(malformed_input) unless r > 0 and avg > 0.
  static InningsModel make(double r, double avg);

  double dismissal_probability() const;
  // True when r/avg exceeded 1 and was clamped.
  bool clamped() const { return r > avg; }
};

// min(r/avg, 1); non-positive arguments are rejected.
double dismissal_probability(double r, double avg);

struct InningsMoments {
  double e_runs = 0;
  double e_runs2 = 0;
  double sigma_runs = 0;
  double p_allout = 0;
  // Mass of every outcome (all-out at ball 10..300, not-out with 0..9 wickets).
  double total_probability = 0;
};

InningsMoments innings_moments(const InningsModel& model);

// Moments for an explicit dismissal probability; r may be zero here.
InningsMoments innings_moments_for(double r, double p_out);

}  // namespace cricrec
