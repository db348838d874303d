#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include "cricrec/embedding/embedding.h"

namespace cricrec {

struct ClusterOptions {
  int level = 1;
  std::optional<double> cutoff;  // merge while average cosine distance <= cutoff
  std::optional<std::size_t> k;  // or stop at k clusters
};

struct ClusterAssignment {
  std::vector<PlayerId> players;  // clustered players, id order
  std::vector<int> cluster;       // numbered by first member in id order
  std::vector<PlayerId> excluded; // too little support to embed
  int clusters = 0;

  bool operator==(const ClusterAssignment&) const = default;
};

// Distance between two players: 1 - similarity, or 1 when undefined.
double embedding_distance(const EmbeddingSet& set, std::size_t a, std::size_t b, int level,
                          const SimilarityConfig& config);

// Average-linkage agglomerative clustering. Ties merge the pair whose
// smallest member ids come first.
ClusterAssignment cluster(const EmbeddingSet& set, const ClusterOptions& options, const SimilarityConfig& config);

void write_clusters(std::ostream& out, const ClusterAssignment& assignment);

}  // namespace cricrec
