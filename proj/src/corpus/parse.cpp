#include "cricrec/corpus/parse.h"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cctype>
#include <json.hpp>

#include "cricrec/error.h"

namespace cricrec {

namespace {

using nlohmann::json;

bool is_retirement(const std::string& kind) {
  return kind == "retired hurt" || kind == "retired not out";
}

// Collapses a Cricsheet extras breakdown onto one kind. A delivery that is
// both a no-ball and a bye is still a no-ball for ball counting.
struct ExtrasBreakdown {
  int wides = 0, noballs = 0, byes = 0, legbyes = 0, other = 0;

  ExtrasKind kind() const {
    if (wides > 0) return ExtrasKind::wide;
    if (noballs > 0) return ExtrasKind::no_ball;
    if (legbyes > 0) return ExtrasKind::leg_bye;
    if (byes > 0) return ExtrasKind::bye;
    return ExtrasKind::none;
  }
  // Penalty runs are awarded to the team, not conceded by the bowler.
  int chargeable() const { return wides + noballs + byes + legbyes; }
};

void add_extra(ExtrasBreakdown& e, const std::string& key, int value) {
  if (key == "wides") e.wides += value;
  else if (key == "noballs") e.noballs += value;
  else if (key == "byes") e.byes += value;
  else if (key == "legbyes") e.legbyes += value;
  else e.other += value;
}

[[noreturn]] void missing(const std::string& field, const std::string& where) {
  throw malformed("missing mandatory field '" + field + "' in " + where);
}

// Fills the extras fields once the per-kind breakdown (if any) and the
// total are known.
void settle_extras(Delivery& d, const ExtrasBreakdown& e, int total_extras, bool& kinds_known) {
  if (e.chargeable() > 0) {
    d.extras = e.chargeable();
    d.extras_kind = e.kind();
  } else if (e.other == 0 && total_extras > 0) {
    // No breakdown at all: charge the bowler and count a legal ball.
    kinds_known = false;
    d.extras = total_extras;
    d.extras_kind = ExtrasKind::bye;
  } else {
    d.extras = 0;
    d.extras_kind = ExtrasKind::none;
  }
}

void check_match_type(const std::string& type) {
  if (type != "ODI") throw malformed("not an ODI match (match_type '" + type + "')");
}

// --- JSON layout -----------------------------------------------------------

int json_int(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_number_integer()) missing(key, where);
  return it->get<int>();
}

std::string json_str(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) missing(key, where);
  return it->get<std::string>();
}

MatchRecord parse_json(std::string_view content, std::string match_id, const Roster& roster) {
  json doc;
  try {
    doc = json::parse(content);
  } catch (const json::parse_error& e) {
    throw malformed(std::string("malformed JSON document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("info") || !doc["info"].is_object()) missing("info", "document");
  const json& info = doc["info"];

  MatchRecord m;
  m.match_id = std::move(match_id);
  check_match_type(json_str(info, "match_type", "info"));

  if (!info.contains("dates") || !info["dates"].is_array() || info["dates"].empty()) missing("dates", "info");
  auto date = Date::parse(info["dates"][0].get<std::string>());
  if (!date) throw malformed("unparseable match date");
  m.date = *date;

  if (!info.contains("teams") || !info["teams"].is_array() || info["teams"].size() != 2) missing("teams", "info");
  m.teams = {info["teams"][0].get<std::string>(), info["teams"][1].get<std::string>()};
  m.venue = info.value("venue", std::string{});
  if (auto t = info.find("toss"); t != info.end() && t->is_object())
    m.toss = t->value("winner", std::string{}) + ":" + t->value("decision", std::string{});
  if (auto o = info.find("outcome"); o != info.end() && o->is_object()) {
    if (o->contains("winner")) m.result = "winner=" + (*o)["winner"].get<std::string>();
    else if (o->contains("result")) m.result = (*o)["result"].get<std::string>();
  }

  const json empty = json::array();
  const json& innings = doc.contains("innings") ? doc["innings"] : empty;
  int innings_no = 0;
  for (const json& inn : innings) {
    if (inn.value("super_over", false)) continue;
    if (++innings_no > 2) break;
    if (!inn.contains("overs")) continue;
    for (const json& over : inn["overs"]) {
      int over_no = json_int(over, "over", "over");
      int ball_no = 0;
      if (!over.contains("deliveries")) continue;
      for (const json& del : over["deliveries"]) {
        const std::string where =
            "delivery " + std::to_string(innings_no) + ":" + std::to_string(over_no) + "." + std::to_string(ball_no + 1);
        Delivery d;
        d.innings = innings_no;
        d.over = over_no;
        d.ball_in_over = ++ball_no;
        d.batsman = roster.canonical(json_str(del, "batter", where));
        d.bowler = roster.canonical(json_str(del, "bowler", where));
        d.non_striker = roster.canonical(del.value("non_striker", std::string{}));
        if (!del.contains("runs") || !del["runs"].is_object()) missing("runs", where);
        const json& runs = del["runs"];
        d.runs_off_bat = json_int(runs, "batter", where);
        ExtrasBreakdown e;
        if (auto ex = del.find("extras"); ex != del.end() && ex->is_object())
          for (auto& [k, v] : ex->items()) add_extra(e, k, v.get<int>());
        settle_extras(d, e, runs.value("extras", 0), m.extras_kinds_known);
        if (auto w = del.find("wickets"); w != del.end() && w->is_array()) {
          for (const json& wk : *w) {
            if (is_retirement(wk.value("kind", std::string{}))) continue;
            d.wicket = true;
            d.dismissed = roster.canonical(json_str(wk, "player_out", where));
            break;
          }
        }
        m.deliveries.push_back(std::move(d));
      }
    }
  }
  return m;
}

// --- YAML layout -----------------------------------------------------------

std::string yaml_str(const YAML::Node& n, const char* key, const std::string& where) {
  YAML::Node v = n[key];
  if (!v || !v.IsScalar()) missing(key, where);
  return v.as<std::string>();
}

int yaml_int(const YAML::Node& n, const char* key, const std::string& where) {
  YAML::Node v = n[key];
  if (!v || !v.IsScalar()) missing(key, where);
  try {
    return v.as<int>();
  } catch (const YAML::Exception&) {
    throw malformed("non-integer '" + std::string(key) + "' in " + where);
  }
}

MatchRecord parse_yaml(std::string_view content, std::string match_id, const Roster& roster) {
  YAML::Node doc;
  try {
    doc = YAML::Load(std::string(content));
  } catch (const YAML::Exception& e) {
    throw malformed(std::string("malformed YAML document: ") + e.what());
  }
  if (!doc.IsMap() || !doc["info"] || !doc["info"].IsMap()) missing("info", "document");
  const YAML::Node info = doc["info"];

  MatchRecord m;
  m.match_id = std::move(match_id);
  check_match_type(yaml_str(info, "match_type", "info"));

  YAML::Node dates = info["dates"];
  if (!dates || !dates.IsSequence() || dates.size() == 0) missing("dates", "info");
  auto date = Date::parse(dates[0].as<std::string>());
  if (!date) throw malformed("unparseable match date");
  m.date = *date;

  YAML::Node teams = info["teams"];
  if (!teams || !teams.IsSequence() || teams.size() != 2) missing("teams", "info");
  m.teams = {teams[0].as<std::string>(), teams[1].as<std::string>()};
  if (info["venue"]) m.venue = info["venue"].as<std::string>();
  if (YAML::Node t = info["toss"]; t && t.IsMap())
    m.toss = (t["winner"] ? t["winner"].as<std::string>() : "") + ":" +
             (t["decision"] ? t["decision"].as<std::string>() : "");
  if (YAML::Node o = info["outcome"]; o && o.IsMap()) {
    if (o["winner"]) m.result = "winner=" + o["winner"].as<std::string>();
    else if (o["result"]) m.result = o["result"].as<std::string>();
  }

  YAML::Node innings = doc["innings"];
  int innings_no = 0;
  if (innings && innings.IsSequence()) {
    for (const YAML::Node& wrapper : innings) {
      if (!wrapper.IsMap() || wrapper.size() != 1) throw malformed("malformed innings entry");
      const std::string label = wrapper.begin()->first.as<std::string>();
      const YAML::Node inn = wrapper.begin()->second;
      if (label.find("super over") != std::string::npos) continue;
      if (++innings_no > 2) break;
      YAML::Node dels = inn["deliveries"];
      if (!dels) continue;
      int last_over = -1, ball_no = 0;
      for (const YAML::Node& entry : dels) {
        if (!entry.IsMap() || entry.size() != 1) throw malformed("malformed delivery entry");
        const std::string key = entry.begin()->first.as<std::string>();
        const YAML::Node del = entry.begin()->second;
        const auto dot = key.find('.');
        int over_no = 0;
        try {
          over_no = std::stoi(key.substr(0, dot));
        } catch (const std::exception&) {
          throw malformed("bad delivery key '" + key + "'");
        }
        if (over_no != last_over) {
          last_over = over_no;
          ball_no = 0;
        }
        const std::string where = "delivery " + std::to_string(innings_no) + ":" + key;
        Delivery d;
        d.innings = innings_no;
        d.over = over_no;
        d.ball_in_over = ++ball_no;
        d.batsman = roster.canonical(yaml_str(del, "batsman", where));
        d.bowler = roster.canonical(yaml_str(del, "bowler", where));
        if (del["non_striker"]) d.non_striker = roster.canonical(del["non_striker"].as<std::string>());
        YAML::Node runs = del["runs"];
        if (!runs || !runs.IsMap()) missing("runs", where);
        d.runs_off_bat = yaml_int(runs, "batsman", where);
        ExtrasBreakdown e;
        if (YAML::Node ex = del["extras"]; ex && ex.IsMap())
          for (auto it = ex.begin(); it != ex.end(); ++it) add_extra(e, it->first.as<std::string>(), it->second.as<int>());
        settle_extras(d, e, runs["extras"] ? runs["extras"].as<int>() : 0, m.extras_kinds_known);
        YAML::Node w = del["wicket"];
        if (w) {
          auto take = [&](const YAML::Node& wk) {
            if (d.wicket || !wk.IsMap()) return;
            if (is_retirement(wk["kind"] ? wk["kind"].as<std::string>() : "")) return;
            d.wicket = true;
            d.dismissed = roster.canonical(yaml_str(wk, "player_out", where));
          };
          if (w.IsSequence())
            for (const YAML::Node& wk : w) take(wk);
          else
            take(w);
        }
        m.deliveries.push_back(std::move(d));
      }
    }
  }
  return m;
}

}  // namespace

const char* extras_kind_name(ExtrasKind k) {
  switch (k) {
    case ExtrasKind::none: return "none";
    case ExtrasKind::wide: return "wide";
    case ExtrasKind::no_ball: return "no-ball";
    case ExtrasKind::bye: return "bye";
    case ExtrasKind::leg_bye: return "leg-bye";
  }
  return "none";
}

void validate(const MatchRecord& m) {
  std::array<int, 2> wickets{0, 0};
  const Delivery* prev = nullptr;
  for (const Delivery& d : m.deliveries) {
    const std::string where = "match " + m.match_id + " delivery " + std::to_string(d.innings) + ":" +
                              std::to_string(d.over) + "." + std::to_string(d.ball_in_over);
    if (d.innings < 1 || d.innings > 2) throw malformed("innings out of range at " + where);
    if (d.over < 0 || d.ball_in_over < 1) throw malformed("bad over/ball at " + where);
    if (d.runs_off_bat < 0 || d.runs_off_bat > 6) throw malformed("runs off bat outside 0..6 at " + where);
    if (d.extras < 0) throw malformed("negative extras at " + where);
    if (d.extras_kind == ExtrasKind::none && d.extras != 0) throw malformed("extras without kind at " + where);
    if (d.wicket != d.dismissed.has_value()) throw malformed("wicket flag and dismissed player disagree at " + where);
    if (d.batsman.empty() || d.bowler.empty()) throw malformed("missing mandatory field at " + where);
    if (prev && std::tie(prev->innings, prev->over, prev->ball_in_over) >= std::tie(d.innings, d.over, d.ball_in_over))
      throw malformed("deliveries out of order at " + where);
    if (d.wicket && ++wickets[d.innings - 1] > 10) throw malformed("more than 10 wickets in innings at " + where);
    prev = &d;
  }
}

MatchRecord parse_match(std::string_view content, std::string match_id, const Roster& roster) {
  auto first = std::find_if(content.begin(), content.end(), [](char c) { return !std::isspace(static_cast<unsigned char>(c)); });
  if (first == content.end()) throw malformed("empty document");
  MatchRecord m = (*first == '{') ? parse_json(content, std::move(match_id), roster)
                                  : parse_yaml(content, std::move(match_id), roster);
  validate(m);
  return m;
}

}  // namespace cricrec
