#include <charconv>
#include <chrono>
#include <cstdio>

#include "cricrec/date.h"
#include "cricrec/error.h"
#include "cricrec/roles.h"

namespace cricrec {

const char* error_class_name(ErrorClass c) {
  switch (c) {
    case ErrorClass::internal: return "internal";
    case ErrorClass::usage: return "usage";
    case ErrorClass::malformed_input: return "malformed_input";
    case ErrorClass::not_found: return "not_found";
    case ErrorClass::constraint_violation: return "constraint_violation";
    case ErrorClass::infeasible: return "infeasible";
    case ErrorClass::snapshot_integrity: return "snapshot_integrity";
    case ErrorClass::insufficient_data: return "insufficient_data";
  }
  return "internal";
}

int exit_code(ErrorClass c) {
  switch (c) {
    case ErrorClass::internal: return 1;
    case ErrorClass::usage: return 2;
    case ErrorClass::malformed_input: return 3;
    case ErrorClass::not_found: return 4;
    case ErrorClass::constraint_violation: return 5;
    case ErrorClass::infeasible: return 6;
    case ErrorClass::snapshot_integrity: return 7;
    case ErrorClass::insufficient_data: return 8;
  }
  return 1;
}

int http_status(ErrorClass c) {
  switch (c) {
    case ErrorClass::usage:
    case ErrorClass::malformed_input: return 400;
    case ErrorClass::not_found: return 404;
    case ErrorClass::constraint_violation: return 422;
    case ErrorClass::infeasible: return 409;
    case ErrorClass::insufficient_data: return 409;
    case ErrorClass::internal:
    case ErrorClass::snapshot_integrity: return 500;
  }
  return 500;
}

std::string_view role_name(Role r) {
  switch (r) {
    case Role::batsman: return "batsman";
    case Role::bowler: return "bowler";
    case Role::wicketkeeper: return "wicketkeeper";
    case Role::batting_allrounder: return "batting-allrounder";
    case Role::bowling_allrounder: return "bowling-allrounder";
  }
  return "batsman";
}

std::optional<Role> parse_role(std::string_view text) {
  if (text == "batsman" || text == "batter" || text == "B") return Role::batsman;
  if (text == "bowler" || text == "BO") return Role::bowler;
  if (text == "wicketkeeper" || text == "keeper" || text == "WK") return Role::wicketkeeper;
  if (text == "batting-allrounder" || text == "batting_allrounder" || text == "BAR")
    return Role::batting_allrounder;
  if (text == "bowling-allrounder" || text == "bowling_allrounder" || text == "BOAR")
    return Role::bowling_allrounder;
  return std::nullopt;
}

std::string_view side_name(Side s) { return s == Side::batting ? "batting" : "bowling"; }

std::optional<Side> parse_side(std::string_view text) {
  if (text == "batting" || text == "batsman") return Side::batting;
  if (text == "bowling" || text == "bowler") return Side::bowling;
  return std::nullopt;
}

bool acts_on(Role r, Side s) {
  switch (r) {
    case Role::batsman:
    case Role::wicketkeeper: return s == Side::batting;
    case Role::bowler: return s == Side::bowling;
    case Role::batting_allrounder:
    case Role::bowling_allrounder: return true;
  }
  return false;
}

std::string Date::str() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
  return buf;
}

Date Date::plus_days(int days) const {
  using namespace std::chrono;
  const sys_days base{std::chrono::year{year} / std::chrono::month{unsigned(month)} / std::chrono::day{unsigned(day)}};
  const year_month_day ymd{base + std::chrono::days{days}};
  return {int(ymd.year()), int(unsigned(ymd.month())), int(unsigned(ymd.day()))};
}

std::optional<Date> Date::parse(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  Date d;
  auto num = [&](std::size_t pos, std::size_t len, int& out) {
    auto [p, ec] = std::from_chars(text.data() + pos, text.data() + pos + len, out);
    return ec == std::errc{} && p == text.data() + pos + len;
  };
  if (!num(0, 4, d.year) || !num(5, 2, d.month) || !num(8, 2, d.day)) return std::nullopt;
  if (d.month < 1 || d.month > 12 || d.day < 1 || d.day > 31) return std::nullopt;
  return d;
}

}  // namespace cricrec
