#include "cricrec/recommend/recommend.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "cricrec/embedding/similarity.h"
#include "cricrec/error.h"

namespace cricrec {

Side slot_side(Role slot) {
  return slot == Role::bowler || slot == Role::bowling_allrounder ? Side::bowling : Side::batting;
}

namespace {

constexpr std::array<Role, 5> kSlotOrder = {Role::wicketkeeper, Role::batsman, Role::bowler, Role::batting_allrounder,
                                            Role::bowling_allrounder};

std::vector<Role> fallbacks(Role slot) {
  switch (slot) {
    case Role::batsman: return {Role::batting_allrounder};
    case Role::bowler: return {Role::bowling_allrounder, Role::batting_allrounder};
    case Role::batting_allrounder: return {Role::bowling_allrounder};
    case Role::bowling_allrounder: return {Role::batting_allrounder};
    case Role::wicketkeeper: break;
  }
  return {};
}

bool by_id(const PoolEntry& a, const PoolEntry& b) { return a.player < b.player; }

}  // namespace

std::string_view edge_basis_name(EdgeBasis b) { return b == EdgeBasis::direct ? "direct" : "proxied"; }

WeaknessList weakness_list(const MatchupModel& model, const PlayerId& opponent, Side side) {
  WeaknessList out;
  out.opponent = opponent;
  out.side = side;
  const EmbeddingSet& set = model.embeddings(side);
  if (!set.index_of(opponent)) {
    out.diagnostic = "no " + std::string(side_name(side)) + " record";
    return out;
  }
  const EmbeddingL2* l2 = set.l2(opponent);
  if (!l2) {
    out.diagnostic = "no career index on the " + std::string(side_name(side)) + " side";
    return out;
  }
  for (std::size_t i = 0; i < l2->values.size(); ++i)
    if (l2->values[i] == Dominance::weak) out.players.push_back(set.numbering()[i]);
  return out;
}

BipartiteGraph build_bipartite(const MatchupModel& model, const std::vector<PoolEntry>& pool,
                               const std::vector<PoolEntry>& opposition) {
  if (pool.empty()) throw constraint_violation("pool.non_empty", "candidate pool is empty");
  if (opposition.empty()) throw constraint_violation("opposition.non_empty", "opposition is empty");
  BipartiteGraph g;
  g.candidates = pool;
  g.opposition = opposition;
  std::sort(g.candidates.begin(), g.candidates.end(), by_id);
  std::sort(g.opposition.begin(), g.opposition.end(), by_id);
  std::set<PlayerId> opposing;
  for (const auto& o : g.opposition) opposing.insert(o.player);
  for (const auto& c : g.candidates)
    if (opposing.count(c.player))
      throw constraint_violation("pool.disjoint_from_opposition",
                                 "player '" + c.player + "' is in both the pool and the opposition");

  const SimilarityConfig& cfg = model.config().similarity;
  const PlayerRegistry& reg = model.corpus().registry();
  for (Side side : {Side::batting, Side::bowling}) {
    const EmbeddingSet& set = model.embeddings(side);
    std::vector<std::pair<const PoolEntry*, WeaknessList>> targets;
    for (const PoolEntry& o : g.opposition) {
      const auto sides = model.sides_of(o.player, o.role);
      if (std::find(sides.begin(), sides.end(), opposite(side)) == sides.end()) continue;
      WeaknessList w = weakness_list(model, o.player, opposite(side));
      g.weaknesses.push_back(w);
      if (!w.players.empty()) targets.emplace_back(&o, std::move(w));
    }
    for (const PoolEntry& c : g.candidates) {
      if (!c.role || !acts_on(*c.role, side) || !set.index_of(c.player)) continue;
      const EmbeddingL1& ce = set.l1(c.player);
      for (const auto& [o, weak] : targets) {
        const auto o_index = reg.index_of(o->player, opposite(side));
        if (!o_index) continue;
        const EmbeddingL1* best = nullptr;
        double best_sim = 0;
        for (const PlayerId& w : weak.players) {
          const EmbeddingL1& we = set.l1(w);
          const auto s = similarity_l1(ce, we, cfg);
          if (s && *s >= cfg.l1_threshold && (!best || *s > best_sim)) {
            best = &we;
            best_sim = *s;
          }
        }
        if (!best) continue;
        Edge e;
        e.candidate = c.player;
        e.opponent = o->player;
        e.side = side;
        e.via = best->player;
        e.similarity = best_sim;
        if (ce.defined[*o_index]) {
          e.weight = ce.values[*o_index];
          e.basis = EdgeBasis::direct;
        } else {
          e.weight = best->values[*o_index];
          e.basis = EdgeBasis::proxied;
        }
        if (std::isfinite(e.weight)) g.edges.push_back(std::move(e));
      }
    }
  }
  return g;
}

std::vector<RankedCandidate> delta_ordering(const MatchupModel& model, const BipartiteGraph& graph, Side side) {
  std::map<PlayerId, std::vector<double>> weights;
  for (const Edge& e : graph.edges)
    if (e.side == side) weights[e.candidate].push_back(e.weight);

  std::vector<RankedCandidate> out;
  for (const PoolEntry& c : graph.candidates) {
    if (!c.role || !acts_on(*c.role, side)) continue;
    RankedCandidate rc;
    rc.player = c.player;
    rc.role = c.role;
    rc.side = side;
    rc.career_phi = model.career_index(c.player, side);
    auto it = weights.find(c.player);
    if (it != weights.end()) {
      const auto& w = it->second;
      rc.edge_count = w.size();
      double sum = 0;
      for (double x : w) sum += x;
      const double mean = sum / double(w.size());
      rc.mean_weight = mean;
      if (w.size() >= 2) {
        double ss = 0;
        for (double x : w) ss += (x - mean) * (x - mean);
        rc.std_weight = std::sqrt(ss / double(w.size() - 1));
        if (*rc.std_weight >= kMinDeltaStd) rc.delta = mean / *rc.std_weight;
      }
    }
    out.push_back(std::move(rc));
  }

  auto segment = [](const RankedCandidate& r) { return r.delta ? 0 : r.edge_count > 0 ? 1 : 2; };
  auto key = [&](const RankedCandidate& r) { return segment(r) == 0 ? *r.delta : segment(r) == 1 ? *r.mean_weight : 0.0; };
  std::sort(out.begin(), out.end(), [&](const RankedCandidate& a, const RankedCandidate& b) {
    if (segment(a) != segment(b)) return segment(a) < segment(b);
    if (key(a) != key(b)) return key(a) > key(b);
    if (a.career_phi.has_value() != b.career_phi.has_value()) return a.career_phi.has_value();
    if (a.career_phi && *a.career_phi != *b.career_phi) return *a.career_phi > *b.career_phi;
    return a.player < b.player;
  });
  return out;
}

std::vector<SelectedPlayer> select_team(const std::vector<RankedCandidate>& batting,
                                        const std::vector<RankedCandidate>& bowling,
                                        const std::vector<PoolEntry>& pool, const SelectionRequest& request) {
  request.composition.validate(request.squad_size);
  std::map<PlayerId, Role> roles;
  for (const PoolEntry& p : pool) {
    if (!p.role) throw malformed("pool player '" + p.player + "' has no role");
    roles[p.player] = *p.role;
  }
  const std::set<PlayerId> excluded(request.excluded.begin(), request.excluded.end());
  std::set<PlayerId> taken;
  std::map<Role, std::vector<SelectedPlayer>> filled;
  Composition need = request.composition;

  for (const PlayerId& id : request.locked) {
    if (taken.count(id)) continue;
    auto it = roles.find(id);
    if (it == roles.end()) throw constraint_violation("lock.in_pool", "locked player '" + id + "' is not in the pool");
    if (excluded.count(id))
      throw constraint_violation("lock.not_excluded", "player '" + id + "' is both locked and excluded");
    if (need[it->second] <= 0)
      throw constraint_violation("lock.role_slot", "no " + std::string(role_name(it->second)) +
                                                       " slot left for locked player '" + id + "'");
    --need[it->second];
    taken.insert(id);
    filled[it->second].push_back({id, it->second, it->second, true});
  }

  auto fill = [&](Role slot, Role eligible) {
    const auto& order = slot_side(slot) == Side::batting ? batting : bowling;
    for (const RankedCandidate& c : order) {
      if (need[slot] <= 0) return;
      auto it = roles.find(c.player);
      if (it == roles.end() || it->second != eligible || taken.count(c.player) || excluded.count(c.player)) continue;
      --need[slot];
      taken.insert(c.player);
      filled[slot].push_back({c.player, eligible, slot, false});
    }
  };
  for (Role slot : kSlotOrder) fill(slot, slot);
  for (Role slot : kSlotOrder)
    for (Role alt : fallbacks(slot)) fill(slot, alt);

  for (Role slot : kSlotOrder)
    if (need[slot] > 0)
      throw infeasible(std::string(role_name(slot)), "cannot fill " + std::to_string(need[slot]) + " " +
                                                         std::string(role_name(slot)) +
                                                         " slot(s) from the remaining pool");

  std::vector<SelectedPlayer> xi;
  for (Role slot : kSlotOrder)
    for (auto& s : filled[slot]) xi.push_back(std::move(s));
  return xi;
}

std::vector<PoolEntry> resolve_roles(const Corpus& corpus, std::vector<PoolEntry> entries, bool require_role) {
  std::set<PlayerId> seen;
  for (PoolEntry& e : entries) {
    const auto key = corpus.find(e.player);
    if (!key) throw not_found("unknown player '" + e.player + "'");
    if (!seen.insert(e.player).second) throw malformed("player '" + e.player + "' is listed twice");
    if (!e.role)
      if (const PlayerInfo* info = corpus.info(*key)) e.role = info->role;
    if (require_role && !e.role) throw malformed("player '" + e.player + "' has no role in the pool or roster");
  }
  return entries;
}

Recommendation recommend(const MatchupModel& model, const RecommendRequest& request) {
  const int squad = model.config().squad_size;
  request.composition.validate(squad);
  Recommendation r;
  r.composition = request.composition;
  r.config = model.config();
  const auto pool = resolve_roles(model.corpus(), request.pool, true);
  const auto opposition = resolve_roles(model.corpus(), request.opposition, false);
  r.graph = build_bipartite(model, pool, opposition);
  r.batting_order = delta_ordering(model, r.graph, Side::batting);
  r.bowling_order = delta_ordering(model, r.graph, Side::bowling);
  r.xi = select_team(r.batting_order, r.bowling_order, r.graph.candidates,
                     {request.composition, request.locked, request.excluded, squad});
  return r;
}

double lineup_similarity(const std::vector<PlayerId>& recommended, const std::vector<PlayerId>& actual) {
  if (recommended.size() != kPlayingEleven || actual.size() != kPlayingEleven)
    throw malformed("line-up similarity needs two lists of 11 players");
  const std::set<PlayerId> a(recommended.begin(), recommended.end()), b(actual.begin(), actual.end());
  if (a.size() != recommended.size() || b.size() != actual.size()) throw malformed("line-up lists a player twice");
  std::size_t shared = 0;
  for (const auto& p : a) shared += b.count(p);
  return double(shared) / double(kPlayingEleven);
}

void write_dot(std::ostream& out, const BipartiteGraph& graph) {
  char buf[64];
  out << "graph bipartite {\n  rankdir=LR;\n  node [shape=box];\n";
  out << "  subgraph cluster_pool {\n    label=\"pool\";\n";
  for (const auto& c : graph.candidates) out << "    \"" << c.player << "\";\n";
  out << "  }\n  subgraph cluster_opposition {\n    label=\"opposition\";\n";
  for (const auto& o : graph.opposition) out << "    \"" << o.player << "\";\n";
  out << "  }\n";
  for (const Edge& e : graph.edges) {
    std::snprintf(buf, sizeof buf, "%.3f", e.weight);
    out << "  \"" << e.candidate << "\" -- \"" << e.opponent << "\" [label=\"" << buf << "\", style="
        << (e.basis == EdgeBasis::direct ? "solid" : "dashed") << ", comment=\"" << side_name(e.side) << "\"];\n";
  }
  out << "}\n";
}

}  // namespace cricrec
