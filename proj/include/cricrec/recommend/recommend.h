#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cricrec/recommend/composition.h"
#include "cricrec/recommend/model.h"

namespace cricrec {

struct PoolEntry {
  PlayerId player;
  std::optional<Role> role;  // required for selectable candidates

  bool operator==(const PoolEntry&) const = default;
};

// The side whose ordering fills a composition slot: bowlers and bowling
// all-rounders bowl, everyone else bats.
Side slot_side(Role slot);

struct WeaknessList {
  PlayerId opponent;
  Side side = Side::batting;     // the side the opponent acts on
  std::vector<PlayerId> players; // opposite-side players the opponent is weak against
  std::string diagnostic;
};

// Players (from any team) that `opponent`, acting on `side`, is weak against.
WeaknessList weakness_list(const MatchupModel& model, const PlayerId& opponent, Side side);

enum class EdgeBasis { direct, proxied };

struct Edge {
  PlayerId candidate;
  PlayerId opponent;
  Side side = Side::batting;  // the side the candidate acts on
  double weight = 0;
  EdgeBasis basis = EdgeBasis::direct;
  PlayerId via;               // best-matching weakness-list player
  double similarity = 0;      // candidate vs `via`

  bool operator==(const Edge&) const = default;
};

struct BipartiteGraph {
  std::vector<PoolEntry> candidates;  // id order
  std::vector<PoolEntry> opposition;  // id order
  std::vector<WeaknessList> weaknesses;
  std::vector<Edge> edges;            // ordered by side, candidate, opponent
};

BipartiteGraph build_bipartite(const MatchupModel& model, const std::vector<PoolEntry>& pool,
                               const std::vector<PoolEntry>& opposition);

inline constexpr double kMinDeltaStd = 1e-9;

struct RankedCandidate {
  PlayerId player;
  std::optional<Role> role;
  Side side = Side::batting;
  std::optional<double> delta;       // mean / sample std, needs >= 2 edges
  std::size_t edge_count = 0;
  std::optional<double> mean_weight;
  std::optional<double> std_weight;
  std::optional<double> career_phi;

  bool operator==(const RankedCandidate&) const = default;
};

// Candidates acting on `side`: by delta, then by mean weight, then edgeless.
std::vector<RankedCandidate> delta_ordering(const MatchupModel& model, const BipartiteGraph& graph, Side side);

struct SelectedPlayer {
  PlayerId player;
  Role role = Role::batsman;  // the player's declared role
  Role slot = Role::batsman;  // the composition slot it fills
  bool locked = false;

  bool operator==(const SelectedPlayer&) const = default;
};

struct SelectionRequest {
  Composition composition;
  std::vector<PlayerId> locked;
  std::vector<PlayerId> excluded;
  int squad_size = kPlayingEleven;
};

// Locked players first, then wicketkeepers, batsmen, bowlers and all-rounders
// from their orderings, then fallbacks across neighbouring roles. Throws an
// infeasible error naming the slot that cannot be filled.
std::vector<SelectedPlayer> select_team(const std::vector<RankedCandidate>& batting,
                                        const std::vector<RankedCandidate>& bowling,
                                        const std::vector<PoolEntry>& pool, const SelectionRequest& request);

struct RecommendRequest {
  std::vector<PoolEntry> pool;
  std::vector<PoolEntry> opposition;
  Composition composition;
  std::vector<PlayerId> locked;
  std::vector<PlayerId> excluded;
};

struct Recommendation {
  std::vector<SelectedPlayer> xi;
  Composition composition;
  BipartiteGraph graph;
  std::vector<RankedCandidate> batting_order;
  std::vector<RankedCandidate> bowling_order;
  RecommendConfig config;
};

// Resolves missing pool roles from the roster and checks the request.
std::vector<PoolEntry> resolve_roles(const Corpus& corpus, std::vector<PoolEntry> entries, bool require_role);

Recommendation recommend(const MatchupModel& model, const RecommendRequest& request);

// |a ∩ b| / 11 for two playing elevens.
double lineup_similarity(const std::vector<PlayerId>& recommended, const std::vector<PlayerId>& actual);

void write_dot(std::ostream& out, const BipartiteGraph& graph);

std::string_view edge_basis_name(EdgeBasis b);

}  // namespace cricrec
