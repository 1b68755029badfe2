#pragma once

// Exhaustive small-model enumeration shared by the unit and acceptance tests.

#include <string>
#include <vector>

#include "teamhyper/formula.hpp"
#include "teamhyper/trace.hpp"

namespace teamhyper::testing {

/// Every letter over {p, q}.
inline std::vector<Letter> letters_pq() {
  return {make_letter({}), make_letter({"p"}), make_letter({"q"}), make_letter({"p", "q"})};
}

/// Distinct canonical lassos over {p, q} with |stem| ≤ max_stem and
/// |loop| ≤ max_period, in first-seen order.
inline std::vector<LassoTrace> small_lassos(std::size_t max_stem = 1, std::size_t max_period = 2) {
  const auto ls = letters_pq();
  std::vector<LassoTrace> out;
  auto add = [&](const LassoTrace& t) {
    for (const auto& u : out) {
      if (u == t) return;
    }
    out.push_back(t);
  };
  std::vector<std::vector<Letter>> words{{}};
  for (std::size_t len = 1; len <= std::max(max_stem, max_period); ++len) {
    std::vector<std::vector<Letter>> longer;
    for (const auto& w : words) {
      if (w.size() != len - 1) continue;
      for (const auto& l : ls) {
        auto v = w;
        v.push_back(l);
        longer.push_back(v);
      }
    }
    words.insert(words.end(), longer.begin(), longer.end());
  }
  for (const auto& stem : words) {
    if (stem.size() > max_stem) continue;
    for (const auto& loop : words) {
      if (loop.empty() || loop.size() > max_period) continue;
      add(canonicalize(stem, loop));
    }
  }
  return out;
}

/// ∅, every singleton and every pair.
inline std::vector<Team> small_teams(const std::vector<LassoTrace>& lassos) {
  std::vector<Team> out{Team{}};
  for (std::size_t i = 0; i < lassos.size(); ++i) out.push_back(Team{lassos[i]});
  for (std::size_t i = 0; i < lassos.size(); ++i) {
    for (std::size_t j = i + 1; j < lassos.size(); ++j) out.push_back(Team{lassos[i], lassos[j]});
  }
  return out;
}

inline Formula swap_pq(const Formula& f) {
  std::vector<Formula> kids;
  for (const auto& c : f.children()) kids.push_back(swap_pq(c));
  std::string prop = f.prop() == "p" ? "q" : f.prop() == "q" ? "p" : f.prop();
  return Formula::make(f.op(), prop, f.var(), std::move(kids));
}

/// Team formulas over the literals p, q, !p, !q and X, G, ~, &, |, OR, U, of
/// depth at most `max_depth`. Operands of commutative connectives are taken
/// in enumeration order, subtrees are shared, and of each pair related by
/// swapping p and q only the structurally smaller one is kept.
inline std::vector<Formula> enumerate_team_formulas(int max_depth) {
  std::vector<Formula> all = {atom("p"), atom("q"), neg_atom("p"), neg_atom("q")};
  std::size_t prev_end = 0;  // [0, prev_end) holds the formulas of depth below d - 1
  for (int d = 2; d <= max_depth; ++d) {
    const std::size_t end = all.size();
    std::vector<Formula> fresh;
    for (std::size_t i = prev_end; i < end; ++i) {
      fresh.push_back(next(all[i]));
      fresh.push_back(globally(all[i]));
      fresh.push_back(sim(all[i]));
    }
    for (std::size_t i = 0; i < end; ++i) {
      for (std::size_t j = 0; j < end; ++j) {
        if (i < prev_end && j < prev_end) continue;  // depth would be < d
        fresh.push_back(until(all[i], all[j]));
        if (i <= j) {
          fresh.push_back(conj(all[i], all[j]));
          fresh.push_back(disj(all[i], all[j]));
          fresh.push_back(ovor(all[i], all[j]));
        }
      }
    }
    prev_end = end;
    all.insert(all.end(), fresh.begin(), fresh.end());
  }
  std::vector<Formula> out;
  for (const auto& f : all) {
    if (!structurally_less(swap_pq(f), f)) out.push_back(f);
  }
  return out;
}

}  // namespace teamhyper::testing
