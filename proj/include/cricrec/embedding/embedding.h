#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <unordered_map>
#include <vector>

#include "cricrec/corpus/corpus.h"
#include "cricrec/rating/quality.h"

namespace cricrec {

struct SimilarityConfig {
  std::size_t min_overlap = 3;         // commonly defined indices needed for a similarity
  double l1_threshold = 0.7;           // cosine similarity cutoff for graph edges
  double weakness_drop = 0.25;         // relative drop from career index that marks a weakness
  std::int64_t min_balls_pair = 12;    // legal balls before a pair gets a value

  void validate() const;
};

// Index value of `player` (acting on `side`) against one opponent, from
// their head-to-head record alone. Empty when the pair is below the ball
// threshold or the score is degenerate.
std::optional<double> pairwise_phi(const Corpus& corpus, PlayerKey player, Side side, PlayerKey opponent,
                                   const SimilarityConfig& config, const RatingConfig& rating = {});

// Entry i is the pairwise index against the opposite-side player numbered i.
// Undefined entries are stored as 0 and marked in `defined`.
struct EmbeddingL1 {
  PlayerId player;
  Side side = Side::batting;
  std::vector<double> values;
  std::vector<std::uint8_t> defined;

  std::size_t support() const;
  bool operator==(const EmbeddingL1&) const = default;
};

enum class Dominance : std::uint8_t { weak = 0, not_weak = 1, unknown = 2 };

struct EmbeddingL2 {
  PlayerId player;
  Side side = Side::batting;
  double career_phi = 0;
  std::vector<Dominance> values;

  bool operator==(const EmbeddingL2&) const = default;
};

EmbeddingL1 level1(const Corpus& corpus, PlayerKey player, Side side, const SimilarityConfig& config,
                   const RatingConfig& rating = {});

// Career index of the player on `side`; throws insufficient_data when unrateable.
double career_phi(const Corpus& corpus, PlayerKey player, Side side, const RatingConfig& rating = {});

// Weak where the pairwise index falls below career - drop * |career|.
EmbeddingL2 level2(const EmbeddingL1& l1, double career_phi, const SimilarityConfig& config);
bool is_weak(double pairwise, double career_phi, double drop);

// Both levels for every player registered on one side, built in parallel.
class EmbeddingSet {
 public:
  static EmbeddingSet build(const Corpus& corpus, Side side, const SimilarityConfig& config,
                            const RatingConfig& rating = {}, unsigned threads = 0);

  Side side() const { return side_; }
  const std::vector<PlayerId>& numbering() const { return numbering_; }
  const std::vector<EmbeddingL1>& level1() const { return l1_; }
  // Empty where the player's career index is undefined.
  const std::vector<std::optional<EmbeddingL2>>& level2() const { return l2_; }

  std::optional<std::size_t> index_of(const PlayerId& id) const;
  const EmbeddingL1& l1(const PlayerId& id) const;  // throws not_found
  const EmbeddingL2* l2(const PlayerId& id) const;  // throws not_found, null when unrateable

  bool operator==(const EmbeddingSet& o) const { return side_ == o.side_ && l1_ == o.l1_ && l2_ == o.l2_; }

 private:
  Side side_ = Side::batting;
  std::vector<PlayerId> numbering_;  // opposite-side ids, position = embedding index
  std::vector<EmbeddingL1> l1_;
  std::vector<std::optional<EmbeddingL2>> l2_;
  std::unordered_map<PlayerId, std::size_t> index_;
};

// Columnar text: a header line, then "player<TAB>index<TAB>value" with
// 1-based indices. Level 1 lists defined entries; level 2 lists known
// states, or every index as 0/1 when `binary` maps unknown to 1.
void write_level1(std::ostream& out, const EmbeddingSet& set, const std::vector<PlayerId>& players = {});
void write_level2(std::ostream& out, const EmbeddingSet& set, bool binary, const std::vector<PlayerId>& players = {});

std::string_view dominance_name(Dominance d);

}  // namespace cricrec
