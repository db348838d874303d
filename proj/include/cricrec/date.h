#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace cricrec {

struct Date {
  int year = 0;
  int month = 0;
  int day = 0;

  auto operator<=>(const Date&) const = default;

  std::string str() const;
  Date plus_days(int days) const;
  static std::optional<Date> parse(std::string_view text);
};

// Half-open window [from, until); either end may be open.
struct DateRange {
  std::optional<Date> from;
  std::optional<Date> until;

  bool contains(const Date& d) const {
    if (from && d < *from) return false;
    if (until && !(d < *until)) return false;
    return true;
  }
  bool unbounded() const { return !from && !until; }

  static DateRange year(int y) { return {Date{y, 1, 1}, Date{y + 1, 1, 1}}; }
  static DateRange before(const Date& d) { return {std::nullopt, d}; }
};

}  // namespace cricrec
