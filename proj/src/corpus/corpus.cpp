#include "cricrec/corpus/corpus.h"

#include <algorithm>
#include <set>

#include "cricrec/error.h"

namespace cricrec {

namespace {

std::uint64_t pair_key(PlayerKey bat, PlayerKey bowl) { return (std::uint64_t(bat) << 32) | bowl; }

void assign_numbering(PlayerRegistry& reg, const std::set<PlayerId>& batsmen, const std::set<PlayerId>& bowlers) {
  reg.batsmen.assign(batsmen.begin(), batsmen.end());
  reg.bowlers.assign(bowlers.begin(), bowlers.end());
  reg.batsman_index.clear();
  reg.bowler_index.clear();
  for (std::size_t i = 0; i < reg.batsmen.size(); ++i) reg.batsman_index[reg.batsmen[i]] = i;
  for (std::size_t i = 0; i < reg.bowlers.size(); ++i) reg.bowler_index[reg.bowlers[i]] = i;
}

}  // namespace

std::optional<std::size_t> PlayerRegistry::index_of(const PlayerId& id, Side s) const {
  const auto& idx = s == Side::batting ? batsman_index : bowler_index;
  auto it = idx.find(id);
  if (it == idx.end()) return std::nullopt;
  return it->second;
}

PlayerRegistry build_registry(const std::vector<MatchRecord>& matches, const Roster& roster) {
  PlayerRegistry reg;
  for (const auto& [id, e] : roster.entries()) reg.players[id] = PlayerInfo{e.name, e.country, e.role};

  std::set<PlayerId> batsmen, bowlers, unroled;
  auto touch = [&](const PlayerId& id) {
    if (id.empty()) return;
    auto [it, inserted] = reg.players.try_emplace(id, PlayerInfo{id, "", std::nullopt});
    if (!it->second.role) unroled.insert(id);
  };
  for (const MatchRecord& m : matches) {
    for (const Delivery& d : m.deliveries) {
      touch(d.batsman);
      touch(d.non_striker);
      touch(d.bowler);
      if (d.dismissed) touch(*d.dismissed);
      batsmen.insert(d.batsman);
      bowlers.insert(d.bowler);
    }
  }
  assign_numbering(reg, batsmen, bowlers);
  if (!unroled.empty()) {
    std::string msg = std::to_string(unroled.size()) + " player(s) without a roster role, e.g. '" + *unroled.begin() + "'";
    reg.warnings.push_back(std::move(msg));
  }
  return reg;
}

const MatchupStats* StatTables::find(PlayerKey batsman, PlayerKey bowler) const {
  if (batsman >= by_batsman.size()) return nullptr;
  const auto& row = by_batsman[batsman];
  auto it = std::lower_bound(row.begin(), row.end(), bowler,
                             [](const MatchupStats& m, PlayerKey b) { return m.bowler < b; });
  return (it != row.end() && it->bowler == bowler) ? &*it : nullptr;
}

void StatTables::index_by_bowler() {
  by_bowler.assign(by_batsman.size(), {});
  // Iterating batsmen in key order keeps each bowler row sorted by batsman.
  for (const auto& row : by_batsman)
    for (const MatchupStats& m : row) by_bowler[m.bowler].push_back(m);
}

StatTables aggregate(const std::vector<MatchInfo>& matches, const std::vector<PackedDelivery>& deliveries,
                     std::size_t players, const DateRange& window) {
  StatTables t;
  t.career.assign(players, {});
  std::unordered_map<std::uint64_t, MatchupStats> pairs;
  for (const MatchInfo& m : matches) {
    if (!window.contains(m.date)) continue;
    for (std::uint32_t i = m.first; i < m.first + m.count; ++i) {
      const PackedDelivery& d = deliveries[i];
      const bool legal = is_legal(d.kind);
      CareerStats& bat = t.career[d.batsman];
      CareerStats& bowl = t.career[d.bowler];
      bat.batting.runs += d.runs;
      if (d.kind != ExtrasKind::wide) ++bat.batting.balls_faced;
      bowl.bowling.runs_conceded += d.runs + d.extras;
      bowl.bowling.bat_runs_conceded += d.runs;
      bowl.bowling.extras_conceded += d.extras;
      if (legal) ++bowl.bowling.legal_balls;

      auto [it, fresh] = pairs.try_emplace(pair_key(d.batsman, d.bowler));
      MatchupStats& mu = it->second;
      if (fresh) {
        mu.batsman = d.batsman;
        mu.bowler = d.bowler;
      }
      if (legal) ++mu.balls;
      mu.runs += d.runs;
      mu.extras += d.extras;

      if (d.wicket) {
        ++t.career[d.dismissed].batting.dismissals;
        ++bowl.bowling.wickets;
        // Only the striker's dismissal belongs to the head-to-head record.
        if (d.dismissed == d.batsman) ++mu.outs;
      }
    }
  }
  t.by_batsman.assign(players, {});
  for (auto& [k, mu] : pairs) t.by_batsman[mu.batsman].push_back(mu);
  for (auto& row : t.by_batsman)
    std::sort(row.begin(), row.end(), [](const MatchupStats& a, const MatchupStats& b) { return a.bowler < b.bowler; });
  t.index_by_bowler();
  return t;
}

Corpus Corpus::build(std::vector<MatchRecord> matches, const Roster& roster) {
  std::sort(matches.begin(), matches.end(),
            [](const MatchRecord& a, const MatchRecord& b) { return a.match_id < b.match_id; });
  for (std::size_t i = 1; i < matches.size(); ++i)
    if (matches[i].match_id == matches[i - 1].match_id)
      throw malformed("duplicate match id '" + matches[i].match_id + "'");

  Corpus c;
  c.registry_ = build_registry(matches, roster);
  c.ids_.reserve(c.registry_.players.size());
  for (const auto& [id, info] : c.registry_.players) c.ids_.push_back(id);
  c.index_ids();

  for (MatchRecord& m : matches) {
    validate(m);
    MatchInfo info{m.match_id, m.date, m.venue, m.teams, m.toss, m.result, m.extras_kinds_known,
                   static_cast<std::uint32_t>(c.deliveries_.size()), static_cast<std::uint32_t>(m.deliveries.size())};
    for (const Delivery& d : m.deliveries) {
      PackedDelivery p;
      p.batsman = c.key_of_.at(d.batsman);
      p.non_striker = d.non_striker.empty() ? kNoPlayer : c.key_of_.at(d.non_striker);
      p.bowler = c.key_of_.at(d.bowler);
      p.dismissed = d.dismissed ? c.key_of_.at(*d.dismissed) : kNoPlayer;
      p.over = static_cast<std::uint16_t>(d.over);
      p.ball = static_cast<std::uint8_t>(std::min(d.ball_in_over, 255));
      p.innings = static_cast<std::uint8_t>(d.innings);
      p.runs = static_cast<std::uint8_t>(d.runs_off_bat);
      p.extras = static_cast<std::uint16_t>(d.extras);
      p.kind = d.extras_kind;
      p.wicket = d.wicket;
      c.deliveries_.push_back(p);
    }
    c.matches_.push_back(std::move(info));
    m.deliveries.clear();
  }
  c.tables_ = aggregate(c.matches_, c.deliveries_, c.ids_.size());
  return c;
}

Corpus Corpus::restricted(const DateRange& window) const {
  Corpus c;
  c.ids_ = ids_;
  c.key_of_ = key_of_;
  c.registry_.players = registry_.players;
  c.registry_.warnings = registry_.warnings;
  std::set<PlayerId> batsmen, bowlers;
  for (const MatchInfo& m : matches_) {
    if (!window.contains(m.date)) continue;
    MatchInfo copy = m;
    copy.first = static_cast<std::uint32_t>(c.deliveries_.size());
    for (std::uint32_t i = m.first; i < m.first + m.count; ++i) {
      const PackedDelivery& d = deliveries_[i];
      c.deliveries_.push_back(d);
      batsmen.insert(ids_[d.batsman]);
      bowlers.insert(ids_[d.bowler]);
    }
    c.matches_.push_back(std::move(copy));
  }
  assign_numbering(c.registry_, batsmen, bowlers);
  c.tables_ = aggregate(c.matches_, c.deliveries_, c.ids_.size());
  return c;
}

void Corpus::index_ids() {
  key_of_.clear();
  for (std::size_t i = 0; i < ids_.size(); ++i) key_of_[ids_[i]] = static_cast<PlayerKey>(i);
}

std::optional<PlayerKey> Corpus::find(const PlayerId& id) const {
  auto it = key_of_.find(id);
  if (it == key_of_.end()) return std::nullopt;
  return it->second;
}

PlayerKey Corpus::key(const PlayerId& id) const {
  auto k = find(id);
  if (!k) throw not_found("unknown player '" + id + "'");
  return *k;
}

const PlayerInfo* Corpus::info(PlayerKey k) const {
  auto it = registry_.players.find(ids_[k]);
  return it == registry_.players.end() ? nullptr : &it->second;
}

bool Corpus::extras_kinds_known() const {
  return std::all_of(matches_.begin(), matches_.end(), [](const MatchInfo& m) { return m.extras_kinds_known; });
}

StatTables Corpus::tables(const DateRange& window) const {
  if (window.unbounded()) return tables_;
  return aggregate(matches_, deliveries_, ids_.size(), window);
}

CareerStats Corpus::career_stats(PlayerKey player, const DateRange& window) const {
  if (player >= ids_.size()) throw not_found("unknown player key");
  if (window.unbounded()) return tables_.career[player];
  CareerStats s;
  for (const MatchInfo& m : matches_) {
    if (!window.contains(m.date)) continue;
    for (std::uint32_t i = m.first; i < m.first + m.count; ++i) {
      const PackedDelivery& d = deliveries_[i];
      if (d.batsman == player) {
        s.batting.runs += d.runs;
        if (d.kind != ExtrasKind::wide) ++s.batting.balls_faced;
      }
      if (d.wicket && d.dismissed == player) ++s.batting.dismissals;
      if (d.bowler == player) {
        s.bowling.runs_conceded += d.runs + d.extras;
        s.bowling.bat_runs_conceded += d.runs;
        s.bowling.extras_conceded += d.extras;
        if (is_legal(d.kind)) ++s.bowling.legal_balls;
        if (d.wicket) ++s.bowling.wickets;
      }
    }
  }
  return s;
}

MatchupStats Corpus::head_to_head(PlayerKey batsman, PlayerKey bowler) const {
  if (batsman >= ids_.size() || bowler >= ids_.size()) throw not_found("unknown player key");
  if (const MatchupStats* m = tables_.find(batsman, bowler)) return *m;
  MatchupStats empty;
  empty.batsman = batsman;
  empty.bowler = bowler;
  return empty;
}

}  // namespace cricrec
