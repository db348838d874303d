#include "cricrec/corpus/roster.h"

#include <fstream>
#include <sstream>

#include "cricrec/error.h"

namespace cricrec {

namespace {

std::string trim(std::string s) {
  const char* ws = " \t\r\n";
  s.erase(0, s.find_first_not_of(ws));
  s.erase(s.find_last_not_of(ws) + 1);
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

Roster Roster::parse(std::istream& in) {
  Roster r;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    auto f = split(line, ',');
    if (f.size() < 4 || f[0].empty())
      throw malformed("roster line " + std::to_string(lineno) + ": expected id,name,country,role[,aliases]");
    RosterEntry e;
    e.id = f[0];
    e.name = f[1].empty() ? f[0] : f[1];
    e.country = f[2];
    if (!f[3].empty()) {
      e.role = parse_role(f[3]);
      if (!e.role) throw malformed("roster line " + std::to_string(lineno) + ": unknown role '" + f[3] + "'");
    }
    if (f.size() > 4)
      for (auto& a : split(f[4], ';'))
        if (!a.empty()) e.aliases.push_back(a);
    if (r.entries_.count(e.id))
      throw malformed("roster line " + std::to_string(lineno) + ": duplicate canonical identifier '" + e.id + "'");
    r.add(std::move(e));
  }
  return r;
}

Roster Roster::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw not_found("cannot open roster file " + path.string());
  return parse(in);
}

void Roster::add(RosterEntry e) {
  if (entries_.count(e.id)) throw malformed("duplicate canonical identifier '" + e.id + "'");
  alias_[e.id] = e.id;
  alias_.try_emplace(e.name, e.id);
  for (const auto& a : e.aliases) alias_.try_emplace(a, e.id);
  entries_.emplace(e.id, std::move(e));
}

const RosterEntry* Roster::find(const PlayerId& id) const {
  auto it = entries_.find(id);
  return it == entries_.end() ? nullptr : &it->second;
}

PlayerId Roster::canonical(const std::string& name) const {
  auto it = alias_.find(name);
  return it == alias_.end() ? name : it->second;
}

}  // namespace cricrec
