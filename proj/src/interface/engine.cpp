#include "cricrec/interface/engine.h"

#include <fstream>
#include <sstream>

#include "cricrec/corpus/snapshot.h"
#include "cricrec/error.h"
#include "cricrec/format.h"

namespace cricrec {

namespace {

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json role_json(const std::optional<Role>& r) { return r ? Json(std::string(role_name(*r))) : Json(nullptr); }

std::string optional_text(const std::optional<double>& v) { return v ? format_number(*v) : "-"; }

template <class T>
T integer_field(const std::string& key, const Json& v) {
  if (!v.is_number_integer()) throw malformed("override '" + key + "' must be an integer");
  return v.get<T>();
}

double number_field(const std::string& key, const Json& v) {
  if (!v.is_number()) throw malformed("override '" + key + "' must be a number");
  return v.get<double>();
}

std::string string_item(const Json& v, const char* field) {
  if (!v.is_string()) throw malformed(std::string("'") + field + "' entries must be strings");
  return v.get<std::string>();
}

std::vector<PlayerId> id_list(const Json& body, const char* field) {
  std::vector<PlayerId> out;
  if (!body.contains(field)) return out;
  const Json& v = body.at(field);
  if (!v.is_array()) throw malformed(std::string("'") + field + "' must be an array");
  for (const Json& item : v) out.push_back(string_item(item, field));
  return out;
}

std::vector<PoolEntry> entry_list(const Json& body, const char* field) {
  if (!body.contains(field)) throw malformed(std::string("request has no '") + field + "'");
  const Json& v = body.at(field);
  if (!v.is_array()) throw malformed(std::string("'") + field + "' must be an array");
  std::vector<PoolEntry> out;
  for (const Json& item : v) {
    if (item.is_string()) {
      out.push_back({item.get<std::string>(), std::nullopt});
      continue;
    }
    if (!item.is_object() || !item.contains("player") || !item.at("player").is_string())
      throw malformed(std::string("'") + field + "' entries must be ids or {\"player\": id, \"role\": role}");
    PoolEntry e{item.at("player").get<std::string>(), std::nullopt};
    if (item.contains("role") && !item.at("role").is_null()) {
      const std::string text = string_item(item.at("role"), "role");
      e.role = parse_role(text);
      if (!e.role) throw malformed("unknown role '" + text + "'");
    }
    out.push_back(std::move(e));
  }
  return out;
}

Composition composition_field(const Json& body) {
  if (!body.contains("composition")) throw malformed("request has no 'composition'");
  const Json& v = body.at("composition");
  if (v.is_string()) return Composition::parse(v.get<std::string>());
  if (!v.is_object()) throw malformed("'composition' must be a string or an object of role counts");
  Composition c;
  for (const auto& [key, count] : v.items()) {
    const auto role = parse_role(key);
    if (!role) throw malformed("unknown role '" + key + "' in composition");
    if (!count.is_number_integer()) throw malformed("composition counts must be integers");
    c[*role] = count.get<int>();
  }
  return c;
}

Json ranked_json(const RankedCandidate& r) {
  return Json{{"player", r.player},
              {"role", role_json(r.role)},
              {"side", side_name(r.side)},
              {"delta", optional_json(r.delta)},
              {"edge_count", r.edge_count},
              {"mean_weight", optional_json(r.mean_weight)},
              {"std_weight", optional_json(r.std_weight)},
              {"career_phi", optional_json(r.career_phi)}};
}

Json entries_json(const std::vector<PoolEntry>& entries) {
  Json out = Json::array();
  for (const auto& e : entries) out.push_back({{"player", e.player}, {"role", role_json(e.role)}});
  return out;
}

void write_order(std::ostream& out, const char* title, const std::vector<RankedCandidate>& order) {
  out << "# " << title << "\nrank\tplayer\trole\tdelta\tedges\tmean_weight\tstd_weight\tcareer_phi\n";
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& r = order[i];
    out << i + 1 << '\t' << r.player << '\t' << (r.role ? role_name(*r.role) : "-") << '\t' << optional_text(r.delta)
        << '\t' << r.edge_count << '\t' << optional_text(r.mean_weight) << '\t' << optional_text(r.std_weight) << '\t'
        << optional_text(r.career_phi) << '\n';
  }
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

RecommendConfig apply_overrides(RecommendConfig config, const Json& overrides) {
  if (overrides.is_null()) return config;
  if (!overrides.is_object()) throw malformed("overrides must be a JSON object");
  for (const auto& [key, v] : overrides.items()) {
    if (key == "min_overlap") config.similarity.min_overlap = integer_field<std::size_t>(key, v);
    else if (key == "l1_threshold") config.similarity.l1_threshold = number_field(key, v);
    else if (key == "weakness_drop") config.similarity.weakness_drop = number_field(key, v);
    else if (key == "min_balls_pair") config.similarity.min_balls_pair = integer_field<std::int64_t>(key, v);
    else if (key == "min_career_balls") config.rating.min_career_balls = integer_field<std::int64_t>(key, v);
    else if (key == "min_bucket_balls") config.rating.min_bucket_balls = integer_field<std::int64_t>(key, v);
    else if (key == "squad_size") config.squad_size = integer_field<int>(key, v);
    else throw Error(ErrorClass::usage, "unknown override '" + key + "'");
  }
  config.validate();
  return config;
}

RecommendConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw not_found("cannot open config file '" + path.string() + "'");
  Json doc = Json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw malformed("config file '" + path.string() + "' is not valid JSON");
  return apply_overrides({}, doc);
}

Json config_json(const RecommendConfig& c) {
  return Json{{"min_overlap", c.similarity.min_overlap},
              {"l1_threshold", c.similarity.l1_threshold},
              {"weakness_drop", c.similarity.weakness_drop},
              {"min_balls_pair", c.similarity.min_balls_pair},
              {"min_career_balls", c.rating.min_career_balls},
              {"min_bucket_balls", c.rating.min_bucket_balls},
              {"squad_size", c.squad_size}};
}

RecommendCall parse_recommend_call(const Json& body) {
  if (!body.is_object()) throw malformed("request body must be a JSON object");
  for (const auto& [key, v] : body.items())
    if (key != "pool" && key != "opposition" && key != "composition" && key != "locked" && key != "excluded" &&
        key != "overrides")
      throw malformed("unknown request field '" + key + "'");
  RecommendCall call;
  call.request.pool = entry_list(body, "pool");
  call.request.opposition = entry_list(body, "opposition");
  call.request.composition = composition_field(body);
  call.request.locked = id_list(body, "locked");
  call.request.excluded = id_list(body, "excluded");
  if (body.contains("overrides")) call.overrides = body.at("overrides");
  return call;
}

Json error_json(const Error& e) {
  Json inner{{"class", error_class_name(e.error_class())}, {"message", e.what()}};
  inner["rule"] = e.rule().empty() ? Json(nullptr) : Json(e.rule());
  return Json{{"error", inner}};
}

Json recommendation_json(const Recommendation& r) {
  Json xi = Json::array();
  for (const auto& s : r.xi)
    xi.push_back({{"player", s.player}, {"role", role_name(s.role)}, {"slot", role_name(s.slot)}, {"locked", s.locked}});
  Json batting = Json::array(), bowling = Json::array(), edges = Json::array(), weak = Json::array();
  for (const auto& c : r.batting_order) batting.push_back(ranked_json(c));
  for (const auto& c : r.bowling_order) bowling.push_back(ranked_json(c));
  for (const auto& e : r.graph.edges)
    edges.push_back({{"candidate", e.candidate},
                     {"opponent", e.opponent},
                     {"side", side_name(e.side)},
                     {"weight", e.weight},
                     {"basis", edge_basis_name(e.basis)},
                     {"via", e.via},
                     {"similarity", e.similarity}});
  for (const auto& w : r.graph.weaknesses)
    weak.push_back({{"opponent", w.opponent},
                    {"side", side_name(w.side)},
                    {"players", w.players},
                    {"diagnostic", w.diagnostic.empty() ? Json(nullptr) : Json(w.diagnostic)}});
  return Json{{"xi", xi},
              {"composition", r.composition.str()},
              {"batting_order", batting},
              {"bowling_order", bowling},
              {"graph",
               {{"candidates", entries_json(r.graph.candidates)},
                {"opposition", entries_json(r.graph.opposition)},
                {"weaknesses", weak},
                {"edges", edges}}},
              {"config", config_json(r.config)}};
}

Json rating_json(const RatingRecord& r) {
  return Json{{"player", r.player},
              {"side", side_name(r.side)},
              {"role", role_json(r.role)},
              {"period", r.period},
              {"phi_player", optional_json(r.phi_player)},
              {"baseline", optional_json(r.baseline)},
              {"balls", r.balls},
              {"runs", r.runs},
              {"outs", r.outs},
              {"rateable", r.rateable},
              {"note", r.note}};
}

void write_recommendation(std::ostream& out, const Recommendation& r) {
  out << "# config\n";
  const Json config = config_json(r.config);
  for (const auto& [key, v] : config.items()) out << key << '\t' << v.dump() << '\n';
  out << "# composition\n" << r.composition.str() << '\n';
  out << "# xi\nslot\tplayer\trole\tlocked\n";
  for (const auto& s : r.xi)
    out << role_name(s.slot) << '\t' << s.player << '\t' << role_name(s.role) << '\t' << (s.locked ? "yes" : "no")
        << '\n';
  write_order(out, "batting order", r.batting_order);
  write_order(out, "bowling order", r.bowling_order);
  out << "# edges\ncandidate\topponent\tside\tweight\tbasis\tvia\tsimilarity\n";
  for (const auto& e : r.graph.edges)
    out << e.candidate << '\t' << e.opponent << '\t' << side_name(e.side) << '\t' << format_number(e.weight) << '\t'
        << edge_basis_name(e.basis) << '\t' << e.via << '\t' << format_number(e.similarity) << '\n';
}

std::vector<PoolEntry> parse_pool(std::istream& in) {
  std::vector<PoolEntry> out;
  std::string line;
  for (int n = 1; std::getline(in, line); ++n) {
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    const auto comma = text.find(',');
    PoolEntry e{trim(std::string_view(text).substr(0, comma)), std::nullopt};
    if (e.player.empty()) throw malformed("line " + std::to_string(n) + ": empty player id");
    if (comma != std::string::npos) {
      const std::string role = trim(std::string_view(text).substr(comma + 1));
      if (!role.empty()) {
        e.role = parse_role(role);
        if (!e.role) throw malformed("line " + std::to_string(n) + ": unknown role '" + role + "'");
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<PoolEntry> load_pool(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw not_found("cannot open player list '" + path.string() + "'");
  return parse_pool(in);
}

Engine::Engine(std::shared_ptr<const Corpus> corpus, RecommendConfig config, unsigned threads)
    : corpus_(std::move(corpus)), config_(std::move(config)), threads_(threads) {
  config_.validate();
}

Engine Engine::open(const std::filesystem::path& snapshot, RecommendConfig config, unsigned threads) {
  return Engine(std::make_shared<const Corpus>(snapshot_load(snapshot)), std::move(config), threads);
}

std::shared_ptr<const MatchupModel> Engine::model(const RecommendConfig& config) const {
  const std::string key = config_json(config).dump();
  std::lock_guard lock(mutex_);
  auto& slot = models_[key];
  if (!slot) slot = std::make_shared<const MatchupModel>(MatchupModel::build(*corpus_, config, threads_));
  return slot;
}

Recommendation Engine::recommend(const RecommendCall& call) const {
  return cricrec::recommend(*model(apply_overrides(config_, call.overrides)), call.request);
}

Json Engine::health() const {
  return Json{{"status", "ok"},
              {"snapshot_version", kSnapshotVersion},
              {"players", corpus_->registry().players.size()},
              {"matches", corpus_->matches().size()},
              {"config", config_json(config_)}};
}

Json Engine::player(const PlayerId& id) const {
  const auto& reg = corpus_->registry();
  auto it = reg.players.find(id);
  if (it == reg.players.end()) throw not_found("unknown player '" + id + "'");
  auto index = [&](Side s) {
    auto i = reg.index_of(id, s);
    return i ? Json(*i + 1) : Json(nullptr);
  };
  return Json{{"id", id},
              {"name", it->second.name},
              {"country", it->second.country},
              {"role", role_json(it->second.role)},
              {"batting_index", index(Side::batting)},
              {"bowling_index", index(Side::bowling)}};
}

Json Engine::players() const {
  Json list = Json::array();
  for (const auto& [id, info] : corpus_->registry().players) list.push_back(player(id));
  return Json{{"players", list}};
}

Json Engine::rating(const PlayerId& id, std::optional<int> year) const {
  player(id);
  const PlayerKey key = corpus_->key(id);
  Json list = Json::array();
  for (Side side : {Side::batting, Side::bowling}) {
    if (!corpus_->registry().index_of(id, side)) continue;
    RatingRecord rec = year ? rate_player(*corpus_, key, side, config_.rating, DateRange::year(*year),
                                          config_.rating.min_bucket_balls)
                            : rate_player(*corpus_, key, side, config_.rating);
    if (year) rec.period = std::to_string(*year);
    list.push_back(rating_json(rec));
  }
  return Json{{"player", id}, {"year", year ? Json(*year) : Json(nullptr)}, {"ratings", list}};
}

Json Engine::embedding(const PlayerId& id, int level) const {
  if (level != 1 && level != 2) throw Error(ErrorClass::usage, "embedding level must be 1 or 2");
  player(id);
  const auto m = model();
  Json list = Json::array();
  for (Side side : {Side::batting, Side::bowling}) {
    const EmbeddingSet& set = m->embeddings(side);
    if (!set.index_of(id)) continue;
    Json entries = Json::array();
    Json item{{"side", side_name(side)}, {"level", level}, {"dimension", set.numbering().size()}};
    if (level == 1) {
      const EmbeddingL1& e = set.l1(id);
      for (std::size_t i = 0; i < e.values.size(); ++i)
        if (e.defined[i]) entries.push_back({{"index", i + 1}, {"opponent", set.numbering()[i]}, {"value", e.values[i]}});
    } else if (const EmbeddingL2* e = set.l2(id)) {
      item["career_phi"] = e->career_phi;
      for (std::size_t i = 0; i < e->values.size(); ++i)
        if (e->values[i] != Dominance::unknown)
          entries.push_back(
              {{"index", i + 1}, {"opponent", set.numbering()[i]}, {"state", dominance_name(e->values[i])}});
    } else {
      item["career_phi"] = nullptr;
    }
    item["entries"] = std::move(entries);
    list.push_back(std::move(item));
  }
  return Json{{"player", id}, {"embeddings", list}};
}

Json Engine::matchup(const PlayerId& batsman, const PlayerId& bowler) const {
  player(batsman);
  player(bowler);
  const PlayerKey bat = corpus_->key(batsman), bowl = corpus_->key(bowler);
  const MatchupStats m = corpus_->head_to_head(bat, bowl);
  const auto& sim = config_.similarity;
  return Json{{"batsman", batsman},
              {"bowler", bowler},
              {"balls", m.balls},
              {"runs", m.runs},
              {"outs", m.outs},
              {"extras", m.extras},
              {"batting_index", optional_json(pairwise_phi(*corpus_, bat, Side::batting, bowl, sim, config_.rating))},
              {"bowling_index", optional_json(pairwise_phi(*corpus_, bowl, Side::bowling, bat, sim, config_.rating))}};
}

}  // namespace cricrec
