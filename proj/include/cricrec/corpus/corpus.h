#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cricrec/corpus/match.h"
#include "cricrec/corpus/roster.h"
#include "cricrec/corpus/stats.h"

namespace cricrec {

struct PlayerInfo {
  std::string name;
  std::string country;
  std::optional<Role> role;

  bool operator==(const PlayerInfo&) const = default;
};

// Canonical players plus the dense batsman and bowler numberings used by
// the embeddings. Positions are 0-based here; exported files print them 1-based.
struct PlayerRegistry {
  std::map<PlayerId, PlayerInfo> players;
  std::vector<PlayerId> batsmen;  // sorted, position = batsman index
  std::vector<PlayerId> bowlers;  // sorted, position = bowler index
  std::unordered_map<PlayerId, std::size_t> batsman_index;
  std::unordered_map<PlayerId, std::size_t> bowler_index;
  std::vector<std::string> warnings;

  std::size_t dimension(Side s) const { return s == Side::batting ? batsmen.size() : bowlers.size(); }
  const std::vector<PlayerId>& numbering(Side s) const { return s == Side::batting ? batsmen : bowlers; }
  std::optional<std::size_t> index_of(const PlayerId& id, Side s) const;

  bool operator==(const PlayerRegistry&) const = default;
};

PlayerRegistry build_registry(const std::vector<MatchRecord>& matches, const Roster& roster);

// Packed form of Delivery keyed by PlayerKey.
struct PackedDelivery {
  PlayerKey batsman = kNoPlayer;
  PlayerKey non_striker = kNoPlayer;
  PlayerKey bowler = kNoPlayer;
  PlayerKey dismissed = kNoPlayer;
  std::uint16_t over = 0;
  std::uint16_t extras = 0;
  std::uint8_t ball = 1;
  std::uint8_t innings = 1;
  std::uint8_t runs = 0;
  ExtrasKind kind = ExtrasKind::none;
  bool wicket = false;

  bool operator==(const PackedDelivery&) const = default;
};

struct MatchInfo {
  std::string match_id;
  Date date;
  std::string venue;
  std::array<std::string, 2> teams;
  std::string toss;
  std::string result;
  bool extras_kinds_known = true;
  std::uint32_t first = 0;  // offset into Corpus::deliveries()
  std::uint32_t count = 0;

  bool operator==(const MatchInfo&) const = default;
};

// Immutable ingested corpus: registry, raw deliveries and full-career tables.
class Corpus {
 public:
  Corpus() = default;

  // Matches are ordered by match id, so the result does not depend on input order.
  static Corpus build(std::vector<MatchRecord> matches, const Roster& roster);

  // Same corpus restricted to deliveries whose match date lies in `window`.
  Corpus restricted(const DateRange& window) const;

  const PlayerRegistry& registry() const { return registry_; }
  const std::vector<PlayerId>& player_ids() const { return ids_; }
  std::size_t player_count() const { return ids_.size(); }
  std::optional<PlayerKey> find(const PlayerId& id) const;
  PlayerKey key(const PlayerId& id) const;  // throws not_found
  const PlayerId& id(PlayerKey k) const { return ids_[k]; }
  const PlayerInfo* info(PlayerKey k) const;

  const std::vector<MatchInfo>& matches() const { return matches_; }
  const std::vector<PackedDelivery>& deliveries() const { return deliveries_; }
  bool extras_kinds_known() const;

  const StatTables& tables() const { return tables_; }
  // Aggregates over a date window, recomputed from raw deliveries.
  StatTables tables(const DateRange& window) const;

  CareerStats career_stats(PlayerKey player, const DateRange& window = {}) const;
  MatchupStats head_to_head(PlayerKey batsman, PlayerKey bowler) const;

  bool operator==(const Corpus&) const = default;

 private:
  friend struct SnapshotCodec;
  void index_ids();

  std::vector<PlayerId> ids_;
  std::unordered_map<PlayerId, PlayerKey> key_of_;
  PlayerRegistry registry_;
  std::vector<MatchInfo> matches_;
  std::vector<PackedDelivery> deliveries_;
  StatTables tables_;
};

// Accumulates delivery-level totals into tables sized for `players` keys.
StatTables aggregate(const std::vector<MatchInfo>& matches, const std::vector<PackedDelivery>& deliveries,
                     std::size_t players, const DateRange& window = {});

}  // namespace cricrec
