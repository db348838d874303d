#include "cricrec/embedding/cluster.h"

#include <limits>

#include "cricrec/embedding/similarity.h"
#include "cricrec/error.h"

namespace cricrec {

double embedding_distance(const EmbeddingSet& set, std::size_t a, std::size_t b, int level,
                          const SimilarityConfig& config) {
  std::optional<double> s;
  if (level == 1) {
    s = similarity_l1(set.level1()[a], set.level1()[b], config);
  } else {
    const auto& ea = set.level2()[a];
    const auto& eb = set.level2()[b];
    if (ea && eb) s = similarity_l2(*ea, *eb);
  }
  return s ? 1.0 - *s : 1.0;
}

ClusterAssignment cluster(const EmbeddingSet& set, const ClusterOptions& options, const SimilarityConfig& config) {
  if (options.level != 1 && options.level != 2) throw Error(ErrorClass::usage, "embedding level must be 1 or 2");
  if (!options.cutoff && !options.k) throw Error(ErrorClass::usage, "clustering needs a cutoff or a cluster count");

  ClusterAssignment out;
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < set.level1().size(); ++i) {
    const bool embeddable = options.level == 1 ? set.level1()[i].support() >= config.min_overlap
                                               : set.level2()[i].has_value();
    if (embeddable) {
      rows.push_back(i);
      out.players.push_back(set.level1()[i].player);
    } else {
      out.excluded.push_back(set.level1()[i].player);
    }
  }
  const std::size_t n = rows.size();
  const std::size_t target = options.k.value_or(1);
  if (n == 0 || n < target)
    throw Error(ErrorClass::insufficient_data,
                "only " + std::to_string(n) + " embeddable players for " + std::to_string(target) + " clusters");

  // Dense distance matrix; cluster a (the smaller label) absorbs b on merge.
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      d[i * n + j] = d[j * n + i] = embedding_distance(set, rows[i], rows[j], options.level, config);

  std::vector<std::size_t> size(n, 1), parent(n), nearest(n, n);
  std::vector<double> nearest_d(n, std::numeric_limits<double>::infinity());
  std::vector<bool> alive(n, true);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto refresh = [&](std::size_t i) {
    nearest[i] = n;
    nearest_d[i] = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j)
      if (j != i && alive[j] && d[i * n + j] < nearest_d[i]) {
        nearest_d[i] = d[i * n + j];
        nearest[i] = j;
      }
  };
  for (std::size_t i = 0; i < n; ++i) refresh(i);

  std::size_t live = n;
  while (live > target) {
    std::size_t a = n, b = n;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      if (!alive[i] || nearest[i] == n) continue;
      const std::size_t lo = std::min(i, nearest[i]), hi = std::max(i, nearest[i]);
      if (nearest_d[i] < best || (nearest_d[i] == best && (lo < a || (lo == a && hi < b)))) {
        best = nearest_d[i];
        a = lo;
        b = hi;
      }
    }
    if (a == n || (options.cutoff && best > *options.cutoff)) break;
    for (std::size_t j = 0; j < n; ++j) {
      if (!alive[j] || j == a || j == b) continue;
      const double merged =
          (double(size[a]) * d[a * n + j] + double(size[b]) * d[b * n + j]) / double(size[a] + size[b]);
      d[a * n + j] = d[j * n + a] = merged;
    }
    size[a] += size[b];
    alive[b] = false;
    parent[b] = a;
    --live;
    for (std::size_t i = 0; i < n; ++i) {
      if (!alive[i]) continue;
      if (i == a || nearest[i] == a || nearest[i] == b) {
        refresh(i);
      } else if (d[i * n + a] < nearest_d[i] || (d[i * n + a] == nearest_d[i] && a < nearest[i])) {
        nearest_d[i] = d[i * n + a];
        nearest[i] = a;
      }
    }
  }

  auto root = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i];
    return i;
  };
  std::vector<int> label(n, -1);
  out.cluster.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = root(i);
    if (label[r] < 0) label[r] = out.clusters++;
    out.cluster[i] = label[r];
  }
  return out;
}

void write_clusters(std::ostream& out, const ClusterAssignment& assignment) {
  out << "player,cluster\n";
  for (std::size_t i = 0; i < assignment.players.size(); ++i)
    out << assignment.players[i] << ',' << assignment.cluster[i] << '\n';
}

}  // namespace cricrec
