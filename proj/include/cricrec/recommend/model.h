#pragma once

#include <optional>
#include <vector>

#include "cricrec/embedding/embedding.h"

namespace cricrec {

struct RecommendConfig {
  SimilarityConfig similarity;
  RatingConfig rating;
  int squad_size = 11;

  void validate() const;
};

// Embeddings for both sides over one corpus, shared by every recommendation
// made against it. Holds a pointer to the corpus, which must outlive it.
class MatchupModel {
 public:
  static MatchupModel build(const Corpus& corpus, const RecommendConfig& config, unsigned threads = 0);

  const Corpus& corpus() const { return *corpus_; }
  const RecommendConfig& config() const { return config_; }
  const EmbeddingSet& embeddings(Side side) const { return side == Side::batting ? batting_ : bowling_; }

  // Career index on `side`, empty when the player is unrateable there.
  std::optional<double> career_index(const PlayerId& id, Side side) const;

  // Sides a player acts on: from the role when known, else where they have records.
  std::vector<Side> sides_of(const PlayerId& id, std::optional<Role> role) const;

 private:
  const Corpus* corpus_ = nullptr;
  RecommendConfig config_;
  EmbeddingSet batting_;
  EmbeddingSet bowling_;
};

}  // namespace cricrec
