#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cricrec/corpus/corpus.h"
#include "cricrec/rating/innings.h"

namespace cricrec {

// How a bowler's dismissals are weighted. `verbatim` uses C_bowler/C_batsman
// for both runs and dismissals; `inverted` rewards dismissing high-average
// batsmen with C_batsman/C_bowler on the dismissal count.
enum class BowlerDismissalWeight { verbatim, inverted };

struct RatingConfig {
  std::int64_t min_career_balls = 300;  // rateability in the relevant role
  std::int64_t min_bucket_balls = 100;  // per calendar-year bucket
  double dismissal_floor = kDismissalFloor;
  BowlerDismissalWeight bowler_dismissal_weight = BowlerDismissalWeight::verbatim;

  void validate() const;
};

// Below this a standardized score is meaningless and the player is unrateable.
inline constexpr double kMinSigma = 1e-9;

struct QualityWeight {
  double value = 1.0;
  Side perspective = Side::batting;
};

// Batting perspective: C_batsman / C_bowler. Bowling perspective: C_bowler / C_batsman.
QualityWeight quality_weight(double c_batsman, double c_bowler, Side perspective);

enum class ProfileMode {
  quality,   // opponent-quality weights, bowler runs include extras
  baseline,  // unit weights, bowler runs off the bat only
};

struct WeightedProfile {
  PlayerKey player = kNoPlayer;
  Side side = Side::batting;
  double phi_r = 0;
  double phi_avg = 0;
  std::int64_t balls = 0;
  std::int64_t runs = 0;
  std::int64_t outs = 0;
  std::size_t opponents = 0;
  std::size_t skipped_opponents = 0;  // opponent career average not positive
};

// Head-to-head totals behind one side of a player's record.
std::vector<MatchupStats> matchups_of(const Corpus& corpus, PlayerKey player, Side side, const DateRange& window = {});

// Blends the player's matchups under per-pair quality weights. `career`
// supplies both the player's and the opponents' career averages.
WeightedProfile weighted_profile(PlayerKey player, Side side, std::span<const MatchupStats> matchups,
                                 const std::vector<CareerStats>& career, const RatingConfig& config,
                                 ProfileMode mode = ProfileMode::quality);

struct IndexValue {
  std::optional<double> value;  // empty when sigma is degenerate
  double e_runs = 0;
  double sigma_runs = 0;
  bool clamped = false;
};

// (E(runs) - avg) / sigma_runs on the model (r, avg).
IndexValue standardized_score(double r, double avg);

IndexValue quality_index(const WeightedProfile& profile);

struct RatingRecord {
  PlayerId player;
  Side side = Side::batting;
  std::optional<Role> role;
  std::string period = "career";
  std::optional<double> phi_player;
  std::optional<double> baseline;
  std::int64_t balls = 0;
  std::int64_t runs = 0;
  std::int64_t outs = 0;
  bool rateable = false;
  std::string note;
};

// Quality index and baseline for one side of a player's record over `window`.
// Opponent averages always come from full careers.
RatingRecord rate_player(const Corpus& corpus, PlayerKey player, Side side, const RatingConfig& config,
                         const DateRange& window = {}, std::int64_t min_balls = -1);

double baseline_rating(const Corpus& corpus, PlayerKey player, Side side, const RatingConfig& config,
                       const DateRange& window = {});

struct SeriesPoint {
  int year = 0;
  std::optional<double> phi_player;
  std::optional<double> baseline;
  std::optional<double> phi_normalized;
  std::optional<double> baseline_normalized;
};

// One point per calendar year with enough balls; min-max normalized per series.
std::vector<SeriesPoint> rating_timeseries(const Corpus& corpus, PlayerKey player, Side side,
                                           const RatingConfig& config);

// Per-series min-max scaling onto [0, 1]; a flat or single-point series maps to 1.
std::vector<double> minmax_normalize(std::span<const double> values);

}  // namespace cricrec
