#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cricrec/date.h"
#include "cricrec/roles.h"

namespace cricrec {

enum class ExtrasKind : std::uint8_t { none, wide, no_ball, bye, leg_bye };

const char* extras_kind_name(ExtrasKind k);

// Wides and no-balls are re-bowled; byes and leg-byes are not.
inline bool is_legal(ExtrasKind k) { return k != ExtrasKind::wide && k != ExtrasKind::no_ball; }

struct Delivery {
  int innings = 1;
  int over = 0;
  int ball_in_over = 1;
  PlayerId batsman;
  PlayerId non_striker;
  PlayerId bowler;
  int runs_off_bat = 0;
  int extras = 0;
  ExtrasKind extras_kind = ExtrasKind::none;
  bool wicket = false;
  std::optional<PlayerId> dismissed;
};

struct MatchRecord {
  std::string match_id;
  Date date;
  std::string venue;
  std::array<std::string, 2> teams;
  std::string toss;
  std::string result;
  // True when the source file broke extras down by kind.
  bool extras_kinds_known = true;
  std::vector<Delivery> deliveries;
};

// Throws Error(malformed_input) naming the first broken invariant.
void validate(const MatchRecord& m);

}  // namespace cricrec
