#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cricrec/error.h"
#include "cricrec/recommend/recommend.h"

namespace cricrec {

using Json = nlohmann::ordered_json;

// Threshold overrides accepted by the CLI config file and by requests:
//
//   {"min_overlap": 3, "l1_threshold": 0.7, "weakness_drop": 0.25,
//    "min_balls_pair": 12, "min_career_balls": 300, "min_bucket_balls": 100,
//    "squad_size": 11}
//
// Unknown keys are a usage error; wrong types are malformed input.
RecommendConfig apply_overrides(RecommendConfig config, const Json& overrides);
RecommendConfig load_config(const std::filesystem::path& path);
Json config_json(const RecommendConfig& config);

// Request body:
//
//   {"pool": ["id", {"player": "id", "role": "batsman"}, ...],
//    "opposition": [...], "composition": "5,4,1,0,1",
//    "locked": [...], "excluded": [...], "overrides": {...}}
//
// "composition" may also be an object keyed by role name.
struct RecommendCall {
  RecommendRequest request;
  Json overrides = Json::object();
};

RecommendCall parse_recommend_call(const Json& body);

Json error_json(const Error& e);
Json recommendation_json(const Recommendation& r);
Json rating_json(const RatingRecord& r);

// Structured text: config echo, XI, delta tables and edge list.
void write_recommendation(std::ostream& out, const Recommendation& r);

// Pool and opposition files: one `id[,role]` per line, '#' comments.
std::vector<PoolEntry> parse_pool(std::istream& in);
std::vector<PoolEntry> load_pool(const std::filesystem::path& path);

// One immutable snapshot plus the matchup models built over it, one per
// distinct configuration. Shared by the CLI, the service and the Python
// module so that all three answer identically.
class Engine {
 public:
  Engine(std::shared_ptr<const Corpus> corpus, RecommendConfig config, unsigned threads = 0);
  static Engine open(const std::filesystem::path& snapshot, RecommendConfig config = {}, unsigned threads = 0);

  const Corpus& corpus() const { return *corpus_; }
  const RecommendConfig& config() const { return config_; }

  // Built on first use and cached; safe to call from several threads.
  std::shared_ptr<const MatchupModel> model(const RecommendConfig& config) const;
  std::shared_ptr<const MatchupModel> model() const { return model(config_); }

  Recommendation recommend(const RecommendCall& call) const;

  Json health() const;
  Json players() const;
  Json player(const PlayerId& id) const;
  Json rating(const PlayerId& id, std::optional<int> year) const;
  Json embedding(const PlayerId& id, int level) const;
  Json matchup(const PlayerId& batsman, const PlayerId& bowler) const;

 private:
  std::shared_ptr<const Corpus> corpus_;
  RecommendConfig config_;
  unsigned threads_ = 0;
  mutable std::mutex mutex_;
  mutable std::map<std::string, std::shared_ptr<const MatchupModel>> models_;
};

}  // namespace cricrec
