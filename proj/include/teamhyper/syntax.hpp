#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "teamhyper/formula.hpp"
#include "teamhyper/trace.hpp"

namespace teamhyper {

enum class Logic { Ltl, Team, Hyper };

/// Parse a formula of the given logic.
///
/// Precedence, tightest first: X F G ! ~ (prefix), U R (right-assoc), &, |,
/// OR; a quantifier prefix extends as far right as possible. In `team` and
/// `ltl`, `!` may only precede a proposition. Throws ParseError.
Formula parse_formula(std::string_view text, Logic logic);

/// Render with ASCII syntax. parse_formula(print(f)) == f for every tree the
/// parser can produce. Binary children of a different binary operator are
/// always parenthesised.
std::string print(const Formula& f);

struct TeamFile {
  Team team;
  /// Trace names in file order (duplicates included).
  std::vector<std::string> names;
  /// Non-fatal diagnostics such as duplicate trace names.
  std::vector<std::string> warnings;
};

/// Parse the line-oriented team format `NAME = STEP* ( STEP+ )`.
TeamFile parse_team_file(std::string_view text);

/// `{p}({q})` form of a single trace.
std::string print_trace(const LassoTrace& t);
/// Parse a single `STEP* ( STEP+ )` trace.
LassoTrace parse_trace(std::string_view text);
/// Team file text with names t1, t2, ...
std::string print_team(const Team& team);

}  // namespace teamhyper
