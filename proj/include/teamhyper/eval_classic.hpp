#pragma once

#include <span>
#include <vector>

#include "teamhyper/formula.hpp"
#include "teamhyper/trace.hpp"

namespace teamhyper {

/// Truth of an LTL formula (Release allowed) at position 0 of a lasso.
/// Throws FragmentError on team-only or hyper nodes.
bool eval_ltl(const LassoTrace& t, const Formula& ltl);

/// Same, over an arbitrary (possibly non-canonical) stem · loop^ω.
bool eval_ltl(std::span<const Letter> stem, std::span<const Letter> loop, const Formula& ltl);

/// Truth value at each position 0 .. |stem|+|loop|-1; the successor of the
/// last position is |stem|.
std::vector<bool> ltl_positions(const LassoTrace& t, const Formula& ltl);

/// Truth of a closed HyperLTL sentence (or Boolean combination of sentences)
/// with trace quantifiers ranging over `team`. Over the empty team ∀ is
/// vacuously true and ∃ false. Throws InvalidArgument on free variables and
/// FragmentError on malformed sentences.
bool eval_hyper(const Team& team, const Formula& sentence);

}  // namespace teamhyper
