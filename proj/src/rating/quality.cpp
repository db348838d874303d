#include "cricrec/rating/quality.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "cricrec/error.h"

namespace cricrec {

void RatingConfig::validate() const {
  if (min_career_balls < 1 || min_bucket_balls < 1)
    throw constraint_violation("rating.min_balls", "minimum ball thresholds must be at least 1");
  if (!(dismissal_floor > 0) || dismissal_floor > 1)
    throw constraint_violation("rating.dismissal_floor", "dismissal floor must lie in (0, 1]");
}

QualityWeight quality_weight(double c_batsman, double c_bowler, Side perspective) {
  if (!(c_batsman > 0) || !(c_bowler > 0)) throw malformed("quality weight needs positive career averages");
  return {perspective == Side::batting ? c_batsman / c_bowler : c_bowler / c_batsman, perspective};
}

std::vector<MatchupStats> matchups_of(const Corpus& corpus, PlayerKey player, Side side, const DateRange& window) {
  if (window.unbounded()) return corpus.tables().matchups(player, side);
  std::map<PlayerKey, MatchupStats> acc;
  for (const MatchInfo& m : corpus.matches()) {
    if (!window.contains(m.date)) continue;
    for (std::uint32_t i = m.first; i < m.first + m.count; ++i) {
      const PackedDelivery& d = corpus.deliveries()[i];
      if ((side == Side::batting ? d.batsman : d.bowler) != player) continue;
      const PlayerKey opp = side == Side::batting ? d.bowler : d.batsman;
      MatchupStats& mu = acc[opp];
      mu.batsman = d.batsman;
      mu.bowler = d.bowler;
      if (is_legal(d.kind)) ++mu.balls;
      mu.runs += d.runs;
      mu.extras += d.extras;
      if (d.wicket && d.dismissed == d.batsman) ++mu.outs;
    }
  }
  std::vector<MatchupStats> out;
  out.reserve(acc.size());
  for (auto& [k, mu] : acc) out.push_back(mu);
  return out;
}

WeightedProfile weighted_profile(PlayerKey player, Side side, std::span<const MatchupStats> matchups,
                                 const std::vector<CareerStats>& career, const RatingConfig& config,
                                 ProfileMode mode) {
  WeightedProfile p;
  p.player = player;
  p.side = side;
  const bool quality = mode == ProfileMode::quality;
  const double own_average = career.at(player).average(side, config.dismissal_floor);

  double weighted_runs = 0, weighted_outs = 0, weighted_balls = 0;
  for (const MatchupStats& m : matchups) {
    const PlayerKey opp = side == Side::batting ? m.bowler : m.batsman;
    const std::int64_t runs = m.runs + (side == Side::bowling && quality ? m.extras : 0);
    double w_run = 1.0, w_out = 1.0;
    if (quality) {
      const double opp_average = career.at(opp).average(opposite(side), config.dismissal_floor);
      if (!(own_average > 0) || !(opp_average > 0)) {
        ++p.skipped_opponents;
        continue;
      }
      const double c_bat = side == Side::batting ? own_average : opp_average;
      const double c_bowl = side == Side::batting ? opp_average : own_average;
      w_run = quality_weight(c_bat, c_bowl, side).value;
      w_out = w_run;
      if (side == Side::bowling && config.bowler_dismissal_weight == BowlerDismissalWeight::inverted)
        w_out = quality_weight(c_bat, c_bowl, Side::batting).value;
    }
    weighted_runs += w_run * double(runs);
    weighted_outs += w_out * double(m.outs);
    weighted_balls += w_out * double(m.balls);
    p.balls += m.balls;
    p.runs += runs;
    p.outs += m.outs;
    ++p.opponents;
  }
  if (p.balls == 0) throw Error(ErrorClass::insufficient_data, "no rateable matchup data");

  p.phi_r = weighted_runs / double(p.balls);
  // The dismissal floor is expressed in the same weight units as the outs,
  // so a lone opponent's weight cancels exactly as it does with dismissals.
  const double weight_scale = weighted_balls / double(p.balls);
  p.phi_avg = weighted_runs / std::max(weighted_outs, config.dismissal_floor * weight_scale);
  return p;
}

IndexValue standardized_score(double r, double avg) {
  IndexValue v;
  if (!(r > 0) || !(avg > 0)) return v;
  const InningsModel model = InningsModel::make(r, avg);
  const InningsMoments m = innings_moments(model);
  v.e_runs = m.e_runs;
  v.sigma_runs = m.sigma_runs;
  v.clamped = model.clamped();
  if (m.sigma_runs >= kMinSigma) v.value = (m.e_runs - avg) / m.sigma_runs;
  return v;
}

IndexValue quality_index(const WeightedProfile& profile) { return standardized_score(profile.phi_r, profile.phi_avg); }

RatingRecord rate_player(const Corpus& corpus, PlayerKey player, Side side, const RatingConfig& config,
                         const DateRange& window, std::int64_t min_balls) {
  RatingRecord rec;
  rec.player = corpus.id(player);
  rec.side = side;
  if (const PlayerInfo* info = corpus.info(player)) rec.role = info->role;
  const CareerStats stats = corpus.career_stats(player, window);
  const std::int64_t threshold = min_balls < 0 ? config.min_career_balls : min_balls;
  if (stats.balls(side) < threshold) {
    rec.balls = stats.balls(side);
    rec.note = "below minimum sample (" + std::to_string(stats.balls(side)) + " < " + std::to_string(threshold) +
               " balls)";
    return rec;
  }
  const auto matchups = matchups_of(corpus, player, side, window);
  const auto& career = corpus.tables().career;
  try {
    const WeightedProfile q = weighted_profile(player, side, matchups, career, config, ProfileMode::quality);
    const WeightedProfile b = weighted_profile(player, side, matchups, career, config, ProfileMode::baseline);
    rec.balls = b.balls;
    rec.runs = q.runs;
    rec.outs = q.outs;
    const IndexValue qi = quality_index(q);
    const IndexValue bi = quality_index(b);
    rec.phi_player = qi.value;
    rec.baseline = bi.value;
    if (qi.clamped || bi.clamped) rec.note = "dismissal probability clamped to 1";
    if (!qi.value || !bi.value) rec.note = "degenerate sigma";
  } catch (const Error& e) {
    if (e.error_class() != ErrorClass::insufficient_data) throw;
    rec.note = e.what();
  }
  rec.rateable = rec.phi_player.has_value();
  return rec;
}

double baseline_rating(const Corpus& corpus, PlayerKey player, Side side, const RatingConfig& config,
                       const DateRange& window) {
  const RatingRecord rec = rate_player(corpus, player, side, config, window);
  if (!rec.baseline) throw Error(ErrorClass::insufficient_data, "player '" + rec.player + "' is not rateable: " + rec.note);
  return *rec.baseline;
}

std::vector<double> minmax_normalize(std::span<const double> values) {
  std::vector<double> out(values.size(), 1.0);
  if (values.size() < 2) return out;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (*hi == *lo) return out;
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - *lo) / (*hi - *lo);
  return out;
}

std::vector<SeriesPoint> rating_timeseries(const Corpus& corpus, PlayerKey player, Side side,
                                           const RatingConfig& config) {
  std::set<int> years;
  for (const MatchInfo& m : corpus.matches()) {
    for (std::uint32_t i = m.first; i < m.first + m.count; ++i) {
      const PackedDelivery& d = corpus.deliveries()[i];
      if ((side == Side::batting ? d.batsman : d.bowler) == player) {
        years.insert(m.date.year);
        break;
      }
    }
  }
  std::vector<SeriesPoint> series;
  for (int y : years) {
    const RatingRecord rec = rate_player(corpus, player, side, config, DateRange::year(y), config.min_bucket_balls);
    if (!rec.phi_player && !rec.baseline) continue;
    series.push_back({y, rec.phi_player, rec.baseline, std::nullopt, std::nullopt});
  }
  auto normalize = [&](auto value_of, auto slot_of) {
    std::vector<double> vals;
    for (auto& p : series)
      if (value_of(p)) vals.push_back(*value_of(p));
    const auto norm = minmax_normalize(vals);
    std::size_t i = 0;
    for (auto& p : series)
      if (value_of(p)) slot_of(p) = norm[i++];
  };
  normalize([](SeriesPoint& p) -> std::optional<double>& { return p.phi_player; },
            [](SeriesPoint& p) -> std::optional<double>& { return p.phi_normalized; });
  normalize([](SeriesPoint& p) -> std::optional<double>& { return p.baseline; },
            [](SeriesPoint& p) -> std::optional<double>& { return p.baseline_normalized; });
  return series;
}

}  // namespace cricrec
