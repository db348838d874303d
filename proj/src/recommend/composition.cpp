#include "cricrec/recommend/composition.h"

#include <charconv>

#include "cricrec/error.h"

namespace cricrec {

int Composition::total() const {
  int n = 0;
  for (int c : counts) n += c;
  return n;
}

int Composition::bowling_options() const {
  return (*this)[Role::bowler] + (*this)[Role::batting_allrounder] + (*this)[Role::bowling_allrounder];
}

void Composition::validate(int squad_size) const {
  for (Role r : kAllRoles)
    if ((*this)[r] < 0)
      throw constraint_violation("composition.non_negative", "role count for " + std::string(role_name(r)) +
                                                                 " is negative");
  if (total() != squad_size)
    throw constraint_violation("composition.total", "composition totals " + std::to_string(total()) +
                                                        " players, expected " + std::to_string(squad_size));
  if ((*this)[Role::wicketkeeper] < 1)
    throw constraint_violation("composition.wicketkeeper", "composition needs at least one wicketkeeper");
  if (bowling_options() < 5)
    throw constraint_violation("composition.bowling_options",
                               "bowlers plus all-rounders must be at least 5, got " + std::to_string(bowling_options()));
}

Composition Composition::parse(std::string_view text) {
  Composition c;
  std::size_t i = 0;
  for (Role r : kAllRoles) {
    if (i > text.size()) throw Error(ErrorClass::usage, "composition needs five counts B,BO,WK,BAR,BOAR");
    const std::size_t end = std::min(text.find(',', i), text.size());
    const std::string_view field = text.substr(i, end - i);
    int value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size() || field.empty())
      throw Error(ErrorClass::usage, "composition count '" + std::string(field) + "' is not an integer");
    c[r] = value;
    i = end + 1;
  }
  if (i <= text.size()) throw Error(ErrorClass::usage, "composition needs exactly five counts B,BO,WK,BAR,BOAR");
  return c;
}

Composition Composition::of_roles(std::span<const Role> roles) {
  Composition c;
  for (Role r : roles) ++c[r];
  return c;
}

std::string Composition::str() const {
  std::string s;
  for (Role r : kAllRoles) {
    if (!s.empty()) s += ',';
    s += std::to_string((*this)[r]);
  }
  return s;
}

}  // namespace cricrec
