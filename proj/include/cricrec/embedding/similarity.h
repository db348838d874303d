#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cricrec/embedding/embedding.h"

namespace cricrec {

// Cosine over indices defined in both; empty below min_overlap or when a
// restricted vector has zero norm.
std::optional<double> similarity_l1(const EmbeddingL1& a, const EmbeddingL1& b, const SimilarityConfig& config);

// Share of commonly known indices where both states agree.
std::optional<double> similarity_l2(const EmbeddingL2& a, const EmbeddingL2& b);

struct ReplacementCandidate {
  PlayerId player;
  double similarity = 0;
  int level = 1;  // which embedding produced the similarity

  bool operator==(const ReplacementCandidate&) const = default;
};

struct ReplacementRanking {
  PlayerId player;
  std::vector<ReplacementCandidate> ranked;
  std::vector<std::string> diagnostics;
};

// Ranks the pool by level-1 similarity to `player`, falling back to level 2.
ReplacementRanking like_for_like(const EmbeddingSet& set, const PlayerId& player, const std::vector<PlayerId>& pool,
                                 const SimilarityConfig& config);

}  // namespace cricrec
