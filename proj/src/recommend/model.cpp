#include "cricrec/recommend/model.h"

#include "cricrec/error.h"
#include "cricrec/recommend/composition.h"

namespace cricrec {

void RecommendConfig::validate() const {
  similarity.validate();
  rating.validate();
  if (squad_size < kPlayingEleven)
    throw constraint_violation("recommend.squad_size", "squad size must be at least 11");
}

MatchupModel MatchupModel::build(const Corpus& corpus, const RecommendConfig& config, unsigned threads) {
  config.validate();
  MatchupModel m;
  m.corpus_ = &corpus;
  m.config_ = config;
  m.batting_ = EmbeddingSet::build(corpus, Side::batting, config.similarity, config.rating, threads);
  m.bowling_ = EmbeddingSet::build(corpus, Side::bowling, config.similarity, config.rating, threads);
  return m;
}

std::optional<double> MatchupModel::career_index(const PlayerId& id, Side side) const {
  const EmbeddingSet& set = embeddings(side);
  if (!set.index_of(id)) return std::nullopt;
  const EmbeddingL2* l2 = set.l2(id);
  if (!l2) return std::nullopt;
  return l2->career_phi;
}

std::vector<Side> MatchupModel::sides_of(const PlayerId& id, std::optional<Role> role) const {
  std::vector<Side> out;
  for (Side s : {Side::batting, Side::bowling}) {
    if (role ? acts_on(*role, s) : embeddings(s).index_of(id).has_value()) out.push_back(s);
  }
  return out;
}

}  // namespace cricrec
