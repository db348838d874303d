#include "cricrec/recommend/evaluate.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cricrec/error.h"

namespace cricrec {

namespace {

using nlohmann::json;

std::vector<PlayerId> id_list(const json& j, const std::string& what) {
  if (!j.is_array()) throw malformed(what + " must be a list of player ids");
  std::vector<PlayerId> out;
  for (const auto& v : j) {
    if (!v.is_string()) throw malformed(what + " must be a list of player ids");
    out.push_back(v.get<std::string>());
  }
  return out;
}

std::map<std::string, std::vector<PlayerId>> team_lists(const json& j, const Fixture& f, const std::string& what,
                                                        bool required) {
  std::map<std::string, std::vector<PlayerId>> out;
  if (j.is_null() && !required) return out;
  if (!j.is_object()) throw malformed("fixture " + f.id + ": '" + what + "' must map team names to player lists");
  for (const std::string& team : f.teams) {
    auto it = j.find(team);
    if (it == j.end()) {
      if (required) throw malformed("fixture " + f.id + ": missing " + what + " for " + team);
      continue;
    }
    out[team] = id_list(*it, "fixture " + f.id + " " + what + " for " + team);
  }
  return out;
}

double mean(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return s / double(v.size());
}

}  // namespace

std::vector<Fixture> parse_fixtures(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw malformed(std::string("malformed fixtures document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("fixtures") || !doc["fixtures"].is_array())
    throw malformed("fixtures document needs a 'fixtures' list");
  std::vector<Fixture> out;
  std::set<std::string> ids;
  for (const json& j : doc["fixtures"]) {
    Fixture f;
    try {
      f.id = j.at("id").get<std::string>();
      const auto date = Date::parse(j.at("date").get<std::string>());
      if (!date) throw malformed("fixture " + f.id + ": bad date");
      f.date = *date;
      const auto& teams = j.at("teams");
      if (!teams.is_array() || teams.size() != 2) throw malformed("fixture " + f.id + ": needs exactly two teams");
      f.teams = {teams[0].get<std::string>(), teams[1].get<std::string>()};
      const std::string result = j.at("result").get<std::string>();
      if (result.rfind("winner=", 0) == 0) {
        f.outcome = FixtureOutcome::winner;
        f.winner = result.substr(7);
        if (f.winner != f.teams[0] && f.winner != f.teams[1])
          throw malformed("fixture " + f.id + ": winner '" + f.winner + "' is not one of the teams");
      } else if (result == "tie") {
        f.outcome = FixtureOutcome::tie;
      } else if (result == "no result") {
        f.outcome = FixtureOutcome::no_result;
      } else if (result == "abandoned") {
        f.outcome = FixtureOutcome::abandoned;
      } else {
        throw malformed("fixture " + f.id + ": unknown result '" + result + "'");
      }
      const bool played = f.outcome == FixtureOutcome::winner || f.outcome == FixtureOutcome::tie;
      f.xi = team_lists(j.contains("xi") ? j["xi"] : json(), f, "xi", played);
      f.squads = team_lists(j.contains("squads") ? j["squads"] : json(), f, "squads", false);
    } catch (const json::exception& e) {
      throw malformed("malformed fixture entry '" + f.id + "': " + e.what());
    }
    if (!ids.insert(f.id).second) throw malformed("duplicate fixture id '" + f.id + "'");
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<Fixture> load_fixtures(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw not_found("cannot open fixtures file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_fixtures(ss.str());
}

std::vector<PlayerId> default_pool(const Corpus& history, const Fixture& fixture, const std::string& team) {
  if (auto it = fixture.squads.find(team); it != fixture.squads.end()) {
    std::set<PlayerId> pool(it->second.begin(), it->second.end());
    if (auto xi = fixture.xi.find(team); xi != fixture.xi.end()) pool.insert(xi->second.begin(), xi->second.end());
    return {pool.begin(), pool.end()};
  }
  const DateRange recent{fixture.date.plus_days(-365), fixture.date};
  std::vector<bool> active(history.player_count(), false);
  for (const MatchInfo& m : history.matches()) {
    if (!recent.contains(m.date)) continue;
    for (std::uint32_t i = m.first; i < m.first + m.count; ++i) {
      const PackedDelivery& d = history.deliveries()[i];
      for (PlayerKey k : {d.batsman, d.non_striker, d.bowler})
        if (k != kNoPlayer) active[k] = true;
    }
  }
  std::set<PlayerId> pool;
  for (PlayerKey k = 0; k < history.player_count(); ++k) {
    const PlayerInfo* info = history.info(k);
    if (active[k] && info && info->country == team && info->role) pool.insert(history.id(k));
  }
  if (auto xi = fixture.xi.find(team); xi != fixture.xi.end()) pool.insert(xi->second.begin(), xi->second.end());
  return {pool.begin(), pool.end()};
}

TournamentEvaluation evaluate_tournament(const Corpus& corpus, const std::vector<Fixture>& fixtures,
                                         const RecommendConfig& config, unsigned threads) {
  config.validate();
  TournamentEvaluation out;
  std::map<Date, std::vector<const Fixture*>> by_date;
  for (const Fixture& f : fixtures) {
    for (const auto& [team, ids] : f.xi)
      for (const PlayerId& id : ids)
        if (!corpus.find(id)) throw not_found("fixture " + f.id + " references unknown player '" + id + "'");
    if (f.outcome == FixtureOutcome::abandoned || f.outcome == FixtureOutcome::no_result) {
      out.skipped.emplace_back(f.id, f.outcome == FixtureOutcome::abandoned ? "abandoned" : "no result");
      continue;
    }
    by_date[f.date].push_back(&f);
  }

  std::vector<double> winning, losing;
  for (auto& [date, day] : by_date) {
    const Corpus history = corpus.restricted(DateRange::before(date));
    const MatchupModel model = MatchupModel::build(history, config, threads);
    std::sort(day.begin(), day.end(), [](const Fixture* a, const Fixture* b) { return a->id < b->id; });
    for (const Fixture* f : day) {
      bool complete = true;
      std::array<std::optional<double>, 2> sims;
      for (int t = 0; t < 2; ++t) {
        EvaluationRow row;
        row.fixture = f->id;
        row.date = f->date;
        row.team = f->teams[t];
        row.opponent = f->teams[1 - t];
        row.outcome = f->outcome == FixtureOutcome::tie ? "tied" : f->winner == row.team ? "won" : "lost";
        row.actual = f->xi.at(row.team);
        try {
          std::vector<Role> roles;
          for (const PlayerId& id : row.actual) {
            const PlayerInfo* info = history.info(history.key(id));
            if (!info || !info->role) throw malformed("actual XI player '" + id + "' has no roster role");
            roles.push_back(*info->role);
          }
          row.composition = Composition::of_roles(roles);
          RecommendRequest req;
          for (const PlayerId& id : default_pool(history, *f, row.team)) req.pool.push_back({id, std::nullopt});
          for (const PlayerId& id : f->xi.at(row.opponent)) req.opposition.push_back({id, std::nullopt});
          req.composition = row.composition;
          const Recommendation rec = recommend(model, req);
          for (const auto& s : rec.xi) row.recommended.push_back(s.player);
          row.similarity = lineup_similarity(row.recommended, row.actual);
          sims[t] = row.similarity;
        } catch (const Error& e) {
          row.error = std::string(error_class_name(e.error_class())) + ": " + e.what();
          complete = false;
        }
        out.rows.push_back(std::move(row));
      }
      if (!complete || f->outcome != FixtureOutcome::winner) continue;
      ++out.scored_matches;
      const int w = f->winner == f->teams[0] ? 0 : 1;
      winning.push_back(*sims[w]);
      losing.push_back(*sims[1 - w]);
    }
  }
  if (!winning.empty()) {
    out.mean_winning = mean(winning);
    out.mean_losing = mean(losing);
  }
  return out;
}

void write_evaluation(std::ostream& out, const TournamentEvaluation& ev) {
  char buf[32];
  out << "fixture\tdate\tteam\topponent\toutcome\tcomposition\tsimilarity\terror\n";
  for (const auto& r : ev.rows) {
    std::string sim = "-";
    if (r.similarity) {
      std::snprintf(buf, sizeof buf, "%.4f", *r.similarity);
      sim = buf;
    }
    out << r.fixture << '\t' << r.date.str() << '\t' << r.team << '\t' << r.opponent << '\t' << r.outcome << '\t'
        << r.composition.str() << '\t' << sim << '\t' << (r.error.empty() ? "-" : r.error) << '\n';
  }
  for (const auto& [id, why] : ev.skipped) out << "# skipped " << id << ": " << why << '\n';
  out << "# scored matches: " << ev.scored_matches << '\n';
  if (ev.mean_winning) {
    std::snprintf(buf, sizeof buf, "%.2f", 100.0 * *ev.mean_winning);
    out << "# winning team mean similarity: " << buf << "%\n";
    std::snprintf(buf, sizeof buf, "%.2f", 100.0 * *ev.mean_losing);
    out << "# losing team mean similarity: " << buf << "%\n";
  }
}

}  // namespace cricrec
