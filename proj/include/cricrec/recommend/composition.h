#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>

#include "cricrec/roles.h"

namespace cricrec {

inline constexpr int kPlayingEleven = 11;

// Requested number of players per role, indexed by Role.
struct Composition {
  std::array<int, 5> counts{};

  int& operator[](Role r) { return counts[static_cast<std::size_t>(r)]; }
  int operator[](Role r) const { return counts[static_cast<std::size_t>(r)]; }
  int total() const;
  int bowling_options() const;  // bowlers plus both all-rounder kinds

  // Throws constraint_violation naming the broken rule.
  void validate(int squad_size = kPlayingEleven) const;

  // "B,BO,WK,BAR,BOAR" counts, e.g. "5,4,1,0,1".
  static Composition parse(std::string_view text);
  static Composition of_roles(std::span<const Role> roles);
  std::string str() const;

  bool operator==(const Composition&) const = default;
};

}  // namespace cricrec
