#pragma once

#include <string>
#include <string_view>

#include "cricrec/corpus/match.h"
#include "cricrec/corpus/roster.h"

namespace cricrec {

// Parses one Cricsheet ODI match file. The layout (JSON or YAML) is detected
// from the content. Player names are mapped through the roster alias table.
// Super-over innings are dropped; retirements are not counted as wickets.
MatchRecord parse_match(std::string_view content, std::string match_id, const Roster& roster);

}  // namespace cricrec
