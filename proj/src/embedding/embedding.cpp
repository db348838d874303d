#include "cricrec/embedding/embedding.h"

#include <cmath>

#include "cricrec/error.h"
#include "cricrec/format.h"
#include "cricrec/parallel.h"

namespace cricrec {

namespace {

std::optional<double> pair_value(const MatchupStats& m, PlayerKey player, Side side, const Corpus& corpus,
                                 const SimilarityConfig& config, const RatingConfig& rating) {
  if (m.balls < config.min_balls_pair) return std::nullopt;
  try {
    const WeightedProfile p = weighted_profile(player, side, std::span(&m, 1), corpus.tables().career, rating);
    return quality_index(p).value;
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::vector<std::size_t> selected_rows(const EmbeddingSet& set, const std::vector<PlayerId>& players) {
  std::vector<std::size_t> rows;
  if (players.empty()) {
    for (std::size_t i = 0; i < set.level1().size(); ++i) rows.push_back(i);
    return rows;
  }
  for (const PlayerId& p : players) {
    auto i = set.index_of(p);
    if (!i) throw not_found("player '" + p + "' has no " + std::string(side_name(set.side())) + " embedding");
    rows.push_back(*i);
  }
  return rows;
}

}  // namespace

void SimilarityConfig::validate() const {
  if (min_overlap < 1) throw constraint_violation("similarity.min_overlap", "min_overlap must be at least 1");
  if (!(l1_threshold >= -1.0 && l1_threshold <= 1.0))
    throw constraint_violation("similarity.l1_threshold", "l1_threshold must lie in [-1, 1]");
  if (!(weakness_drop > 0.0 && weakness_drop < 1.0))
    throw constraint_violation("similarity.weakness_drop", "weakness_drop must lie in (0, 1)");
  if (min_balls_pair < 1) throw constraint_violation("similarity.min_balls_pair", "min_balls_pair must be at least 1");
}

std::optional<double> pairwise_phi(const Corpus& corpus, PlayerKey player, Side side, PlayerKey opponent,
                                   const SimilarityConfig& config, const RatingConfig& rating) {
  const PlayerKey bat = side == Side::batting ? player : opponent;
  const PlayerKey bowl = side == Side::batting ? opponent : player;
  const MatchupStats* m = corpus.tables().find(bat, bowl);
  if (!m) return std::nullopt;
  return pair_value(*m, player, side, corpus, config, rating);
}

std::size_t EmbeddingL1::support() const {
  std::size_t n = 0;
  for (auto d : defined) n += d;
  return n;
}

EmbeddingL1 level1(const Corpus& corpus, PlayerKey player, Side side, const SimilarityConfig& config,
                   const RatingConfig& rating) {
  const PlayerRegistry& reg = corpus.registry();
  const PlayerId& id = corpus.id(player);
  if (!reg.index_of(id, side))
    throw not_found("player '" + id + "' is not registered on the " + std::string(side_name(side)) + " side");
  EmbeddingL1 e;
  e.player = id;
  e.side = side;
  const std::size_t dim = reg.dimension(opposite(side));
  e.values.assign(dim, 0.0);
  e.defined.assign(dim, 0);
  for (const MatchupStats& m : corpus.tables().matchups(player, side)) {
    const PlayerKey opp = side == Side::batting ? m.bowler : m.batsman;
    const auto idx = reg.index_of(corpus.id(opp), opposite(side));
    if (!idx) continue;
    if (auto v = pair_value(m, player, side, corpus, config, rating)) {
      e.values[*idx] = *v;
      e.defined[*idx] = 1;
    }
  }
  return e;
}

double career_phi(const Corpus& corpus, PlayerKey player, Side side, const RatingConfig& rating) {
  const RatingRecord rec = rate_player(corpus, player, side, rating);
  if (!rec.phi_player)
    throw Error(ErrorClass::insufficient_data, "player '" + rec.player + "' has no career index: " + rec.note);
  return *rec.phi_player;
}

bool is_weak(double pairwise, double career, double drop) { return pairwise < career - drop * std::fabs(career); }

EmbeddingL2 level2(const EmbeddingL1& l1, double career, const SimilarityConfig& config) {
  EmbeddingL2 e;
  e.player = l1.player;
  e.side = l1.side;
  e.career_phi = career;
  e.values.resize(l1.values.size(), Dominance::unknown);
  for (std::size_t i = 0; i < l1.values.size(); ++i) {
    if (!l1.defined[i]) continue;
    e.values[i] = is_weak(l1.values[i], career, config.weakness_drop) ? Dominance::weak : Dominance::not_weak;
  }
  return e;
}

EmbeddingSet EmbeddingSet::build(const Corpus& corpus, Side side, const SimilarityConfig& config,
                                 const RatingConfig& rating, unsigned threads) {
  config.validate();
  EmbeddingSet set;
  set.side_ = side;
  set.numbering_ = corpus.registry().numbering(opposite(side));
  const auto& players = corpus.registry().numbering(side);
  set.l1_.resize(players.size());
  set.l2_.resize(players.size());
  parallel_for(players.size(), threads, [&](std::size_t i) {
    const PlayerKey k = corpus.key(players[i]);
    set.l1_[i] = cricrec::level1(corpus, k, side, config, rating);
    try {
      set.l2_[i] = cricrec::level2(set.l1_[i], career_phi(corpus, k, side, rating), config);
    } catch (const Error& e) {
      if (e.error_class() != ErrorClass::insufficient_data) throw;
    }
  });
  for (std::size_t i = 0; i < players.size(); ++i) set.index_[players[i]] = i;
  return set;
}

std::optional<std::size_t> EmbeddingSet::index_of(const PlayerId& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const EmbeddingL1& EmbeddingSet::l1(const PlayerId& id) const {
  auto i = index_of(id);
  if (!i) throw not_found("player '" + id + "' has no " + std::string(side_name(side_)) + " embedding");
  return l1_[*i];
}

const EmbeddingL2* EmbeddingSet::l2(const PlayerId& id) const {
  auto i = index_of(id);
  if (!i) throw not_found("player '" + id + "' has no " + std::string(side_name(side_)) + " embedding");
  return l2_[*i] ? &*l2_[*i] : nullptr;
}

std::string_view dominance_name(Dominance d) {
  switch (d) {
    case Dominance::weak: return "weak";
    case Dominance::not_weak: return "not_weak";
    case Dominance::unknown: break;
  }
  return "unknown";
}

void write_level1(std::ostream& out, const EmbeddingSet& set, const std::vector<PlayerId>& players) {
  out << "# level=1 side=" << side_name(set.side()) << " dimension=" << set.numbering().size() << "\n";
  for (std::size_t row : selected_rows(set, players)) {
    const EmbeddingL1& e = set.level1()[row];
    for (std::size_t i = 0; i < e.values.size(); ++i)
      if (e.defined[i]) out << e.player << '\t' << i + 1 << '\t' << format_number(e.values[i]) << '\n';
  }
}

void write_level2(std::ostream& out, const EmbeddingSet& set, bool binary, const std::vector<PlayerId>& players) {
  out << "# level=2 side=" << side_name(set.side()) << " dimension=" << set.numbering().size()
      << (binary ? " format=binary" : " format=ternary") << "\n";
  for (std::size_t row : selected_rows(set, players)) {
    const auto& e = set.level2()[row];
    if (!e) continue;
    for (std::size_t i = 0; i < e->values.size(); ++i) {
      const Dominance d = e->values[i];
      if (binary) out << e->player << '\t' << i + 1 << '\t' << (d == Dominance::weak ? 0 : 1) << '\n';
      else if (d != Dominance::unknown) out << e->player << '\t' << i + 1 << '\t' << dominance_name(d) << '\n';
    }
  }
}

}  // namespace cricrec
