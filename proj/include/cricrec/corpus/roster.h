#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cricrec/roles.h"

namespace cricrec {

struct RosterEntry {
  PlayerId id;
  std::string name;
  std::string country;
  std::optional<Role> role;
  std::vector<std::string> aliases;
};

// Roster text format, one player per line:
//
//   id,name,country,role,alias1;alias2
//
// '#' starts a comment line. role is one of batsman, bowler, wicketkeeper,
// batting-allrounder, bowling-allrounder, or empty when unknown.
class Roster {
 public:
  static Roster parse(std::istream& in);
  static Roster load(const std::filesystem::path& path);

  void add(RosterEntry e);

  const RosterEntry* find(const PlayerId& id) const;
  // Maps an id, display name or alias onto the canonical id; unknown names map to themselves.
  PlayerId canonical(const std::string& name) const;

  const std::map<PlayerId, RosterEntry>& entries() const { return entries_; }
  const std::unordered_map<std::string, PlayerId>& aliases() const { return alias_; }

 private:
  std::map<PlayerId, RosterEntry> entries_;
  std::unordered_map<std::string, PlayerId> alias_;
};

}  // namespace cricrec
