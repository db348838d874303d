#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace cricrec {

using PlayerId = std::string;
using PlayerKey = std::uint32_t;
inline constexpr PlayerKey kNoPlayer = 0xffffffffu;

enum class Role : std::uint8_t {
  batsman,
  bowler,
  wicketkeeper,
  batting_allrounder,
  bowling_allrounder,
};

inline constexpr std::array<Role, 5> kAllRoles = {Role::batsman, Role::bowler, Role::wicketkeeper,
                                                  Role::batting_allrounder, Role::bowling_allrounder};

// Which end of a head-to-head a rating is taken from.
enum class Side : std::uint8_t { batting, bowling };

inline Side opposite(Side s) { return s == Side::batting ? Side::bowling : Side::batting; }

std::string_view role_name(Role r);
std::optional<Role> parse_role(std::string_view text);
std::string_view side_name(Side s);
std::optional<Side> parse_side(std::string_view text);

// All-rounders act on both sides; everyone else on exactly one.
bool acts_on(Role r, Side s);

}  // namespace cricrec
