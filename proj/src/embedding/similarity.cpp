#include "cricrec/embedding/similarity.h"

#include <algorithm>
#include <cmath>

#include "cricrec/error.h"

namespace cricrec {

namespace {

void require_same_side(Side a, Side b) {
  if (a != b) throw constraint_violation("similarity.same_role", "similarity needs two players of the same role");
}

}  // namespace

std::optional<double> similarity_l1(const EmbeddingL1& a, const EmbeddingL1& b, const SimilarityConfig& config) {
  require_same_side(a.side, b.side);
  if (a.values.size() != b.values.size()) throw malformed("embeddings of different dimension");
  double dot = 0, na = 0, nb = 0;
  std::size_t overlap = 0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    if (!a.defined[i] || !b.defined[i]) continue;
    ++overlap;
    dot += a.values[i] * b.values[i];
    na += a.values[i] * a.values[i];
    nb += b.values[i] * b.values[i];
  }
  if (overlap < config.min_overlap || na == 0 || nb == 0) return std::nullopt;
  return std::clamp(dot / std::sqrt(na * nb), -1.0, 1.0);
}

std::optional<double> similarity_l2(const EmbeddingL2& a, const EmbeddingL2& b) {
  require_same_side(a.side, b.side);
  if (a.values.size() != b.values.size()) throw malformed("embeddings of different dimension");
  std::size_t known = 0, agree = 0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    if (a.values[i] == Dominance::unknown || b.values[i] == Dominance::unknown) continue;
    ++known;
    agree += a.values[i] == b.values[i];
  }
  if (known == 0) return std::nullopt;
  return double(agree) / double(known);
}

ReplacementRanking like_for_like(const EmbeddingSet& set, const PlayerId& player, const std::vector<PlayerId>& pool,
                                 const SimilarityConfig& config) {
  if (pool.empty()) throw Error(ErrorClass::usage, "replacement pool is empty");
  ReplacementRanking out;
  out.player = player;
  const EmbeddingL1& target = set.l1(player);
  const EmbeddingL2* target_l2 = set.l2(player);
  std::vector<PlayerId> candidates = pool;
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  for (const PlayerId& c : candidates) {
    if (!set.index_of(c)) {
      out.diagnostics.push_back(c + ": no " + std::string(side_name(set.side())) + " embedding");
      continue;
    }
    if (auto s = similarity_l1(target, set.l1(c), config)) {
      out.ranked.push_back({c, *s, 1});
      continue;
    }
    const EmbeddingL2* other = set.l2(c);
    if (target_l2 && other) {
      if (auto s = similarity_l2(*target_l2, *other)) {
        out.ranked.push_back({c, *s, 2});
        continue;
      }
    }
    out.diagnostics.push_back(c + ": similarity undefined at both levels");
  }
  std::stable_sort(out.ranked.begin(), out.ranked.end(), [](const auto& a, const auto& b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    return a.player < b.player;
  });
  if (out.ranked.empty()) out.diagnostics.push_back("no candidate has a defined similarity to '" + player + "'");
  return out;
}

}  // namespace cricrec
