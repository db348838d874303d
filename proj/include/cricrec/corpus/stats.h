#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "cricrec/roles.h"

namespace cricrec {

// Floor applied to zero-dismissal denominators so averages stay finite.
inline constexpr double kDismissalFloor = 0.5;

inline double floored_average(double runs, double outs, double floor = kDismissalFloor) {
  return runs / std::max(outs, floor);
}

struct BattingTotals {
  std::int64_t runs = 0;
  std::int64_t balls_faced = 0;  // wides excluded
  std::int64_t dismissals = 0;

  bool operator==(const BattingTotals&) const = default;
};

struct BowlingTotals {
  std::int64_t runs_conceded = 0;      // off the bat plus all extras
  std::int64_t bat_runs_conceded = 0;  // off the bat only
  std::int64_t legal_balls = 0;        // wides and no-balls excluded
  std::int64_t wickets = 0;
  std::int64_t extras_conceded = 0;

  bool operator==(const BowlingTotals&) const = default;
};

struct CareerStats {
  BattingTotals batting;
  BowlingTotals bowling;

  double batting_average(double floor = kDismissalFloor) const {
    return floored_average(double(batting.runs), double(batting.dismissals), floor);
  }
  double bowling_average(double floor = kDismissalFloor) const {
    return floored_average(double(bowling.runs_conceded), double(bowling.wickets), floor);
  }
  double average(Side s, double floor = kDismissalFloor) const {
    return s == Side::batting ? batting_average(floor) : bowling_average(floor);
  }
  std::int64_t balls(Side s) const { return s == Side::batting ? batting.balls_faced : bowling.legal_balls; }
  bool rateable(Side s, std::int64_t min_balls) const { return balls(s) >= min_balls && average(s) > 0; }

  bool operator==(const CareerStats&) const = default;
};

// Head-to-head totals between a striker and a bowler. Balls are legal
// deliveries; runs are off the bat; extras are those conceded in the pair.
struct MatchupStats {
  PlayerKey batsman = kNoPlayer;
  PlayerKey bowler = kNoPlayer;
  std::int64_t balls = 0;
  std::int64_t runs = 0;
  std::int64_t outs = 0;
  std::int64_t extras = 0;

  bool operator==(const MatchupStats&) const = default;
};

// Career and matchup aggregates over some window of deliveries.
struct StatTables {
  std::vector<CareerStats> career;                     // indexed by PlayerKey
  std::vector<std::vector<MatchupStats>> by_batsman;   // sorted by bowler key
  std::vector<std::vector<MatchupStats>> by_bowler;    // sorted by batsman key

  const MatchupStats* find(PlayerKey batsman, PlayerKey bowler) const;
  const std::vector<MatchupStats>& matchups(PlayerKey player, Side side) const {
    return side == Side::batting ? by_batsman[player] : by_bowler[player];
  }
  // Rebuilds by_bowler from by_batsman.
  void index_by_bowler();

  bool operator==(const StatTables&) const = default;
};

}  // namespace cricrec
