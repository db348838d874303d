#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cricrec/date.h"
#include "cricrec/recommend/recommend.h"

namespace cricrec {

enum class FixtureOutcome { winner, tie, no_result, abandoned };

// One historical match with both actual elevens. JSON layout:
//
//   {"fixtures": [{"id": "...", "date": "YYYY-MM-DD", "teams": ["A", "B"],
//                  "result": "winner=A" | "tie" | "no result" | "abandoned",
//                  "xi": {"A": [11 ids], "B": [11 ids]},
//                  "squads": {"A": [ids], "B": [ids]}}]}
//
// "squads" is optional; without it a team's pool is every roster player of
// that country active in the year before the fixture, plus its actual XI.
struct Fixture {
  std::string id;
  Date date;
  std::array<std::string, 2> teams;
  FixtureOutcome outcome = FixtureOutcome::winner;
  std::string winner;
  std::map<std::string, std::vector<PlayerId>> xi;
  std::map<std::string, std::vector<PlayerId>> squads;
};

std::vector<Fixture> parse_fixtures(std::string_view json_text);
std::vector<Fixture> load_fixtures(const std::filesystem::path& path);

struct EvaluationRow {
  std::string fixture;
  Date date;
  std::string team;
  std::string opponent;
  std::string outcome;  // won, lost or tied
  Composition composition;
  std::optional<double> similarity;
  std::vector<PlayerId> recommended;
  std::vector<PlayerId> actual;
  std::string error;
};

struct TournamentEvaluation {
  std::vector<EvaluationRow> rows;
  std::vector<std::pair<std::string, std::string>> skipped;  // fixture id, reason
  std::size_t scored_matches = 0;  // matches with a winner where both sides were scored
  std::optional<double> mean_winning;
  std::optional<double> mean_losing;
};

// Recommends for both sides of every completed fixture using only deliveries
// dated before the fixture, and scores each XI against the actual one.
TournamentEvaluation evaluate_tournament(const Corpus& corpus, const std::vector<Fixture>& fixtures,
                                         const RecommendConfig& config, unsigned threads = 0);

// The pool used for `team` when the fixture carries no squad.
std::vector<PlayerId> default_pool(const Corpus& history, const Fixture& fixture, const std::string& team);

void write_evaluation(std::ostream& out, const TournamentEvaluation& evaluation);

}  // namespace cricrec
