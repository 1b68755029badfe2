#include "teamhyper/eval_team.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <unordered_set>

#include "teamhyper/errors.hpp"
#include "teamhyper/eval_classic.hpp"

namespace teamhyper {

namespace {

constexpr std::size_t kMaxUniverse = 16;

struct WordsHash {
  std::size_t operator()(const std::vector<std::uint64_t>& v) const {
    std::size_t h = v.size();
    for (auto w : v) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

template <typename F>
void for_each_bit(std::uint32_t mask, F&& f) {
  while (mask != 0) {
    const int i = __builtin_ctz(mask);
    f(static_cast<std::size_t>(i));
    mask &= mask - 1;
  }
}

}  // namespace

TeamOracle::TeamOracle(const Team& base, OracleLimits limits) : limits_(limits) {
  if (base.size() > limits_.max_team) {
    throw LimitError("team has " + std::to_string(base.size()) + " traces, limit is " +
                     std::to_string(limits_.max_team));
  }
  std::map<LassoTrace, std::size_t> index;
  auto intern = [&](const LassoTrace& t) {
    auto [it, fresh] = index.emplace(t, universe_.size());
    if (fresh) universe_.push_back(t);
    return it->second;
  };
  for (const auto& t : base) {
    if (t.length() > limits_.max_lasso) {
      throw LimitError("lasso of length " + std::to_string(t.length()) + " exceeds limit " +
                       std::to_string(limits_.max_lasso));
    }
    base_ |= Mask{1} << intern(t);
  }
  // Suffixes of canonical traces are canonical traces of no greater length,
  // so this closure terminates.
  for (std::size_t u = 0; u < universe_.size(); ++u) {
    const LassoTrace t = universe_[u];
    for (std::size_t k = 1; k < t.length(); ++k) intern(suffix(t, k));
    if (universe_.size() > kMaxUniverse) throw LimitError("suffix closure too large for the oracle");
  }

  const std::size_t n = universe_.size();
  successor_.resize(n);
  suffix_index_.resize(n);
  choices_.resize(n);
  suffix_unions_.resize(n);
  for (std::size_t u = 0; u < n; ++u) {
    const LassoTrace& t = universe_[u];
    successor_[u] = index.at(suffix(t, 1));
    const std::size_t positions = t.length() + limits_.position_slack;
    for (std::size_t k = 0; k < positions; ++k) suffix_index_[u].push_back(index.at(suffix(t, k)));

    std::set<std::tuple<Mask, std::size_t, std::size_t>> seen;
    for (std::uint64_t s = 1; s < (std::uint64_t{1} << positions); ++s) {
      Mask m = 0;
      std::size_t lo = positions;
      std::size_t hi = 0;
      for (std::size_t k = 0; k < positions; ++k) {
        if ((s >> k) & 1U) {
          m |= Mask{1} << suffix_index_[u][k];
          lo = std::min(lo, k);
          hi = std::max(hi, k);
        }
      }
      if (seen.emplace(m, lo, hi).second) choices_[u].push_back({m, lo, hi});
    }

    Mask all = 0;
    for (std::size_t k = 0; k < t.length(); ++k) all |= Mask{1} << suffix_index_[u][k];
    for (Mask m = all; m != 0; m = (m - 1) & all) suffix_unions_[u].push_back(m);
  }
}

void TeamOracle::check(const Formula& phi) const {
  if (!is_team(phi)) throw FragmentError("oracle expects a team formula");
  if (phi.depth() > limits_.max_depth) {
    throw LimitError("formula depth " + std::to_string(phi.depth()) + " exceeds limit " +
                     std::to_string(limits_.max_depth));
  }
}

bool TeamOracle::eval(const Formula& phi) {
  check(phi);
  return eval_mask(phi, base_);
}

bool TeamOracle::eval(const Formula& phi, const Team& team) {
  check(phi);
  return eval_mask(phi, mask_of(team));
}

TeamOracle::Mask TeamOracle::mask_of(const Team& team) const {
  Mask m = 0;
  for (const auto& t : team) {
    auto it = std::find(universe_.begin(), universe_.end(), t);
    if (it == universe_.end()) throw InvalidArgument("trace is not a suffix of the oracle's base team");
    m |= Mask{1} << (it - universe_.begin());
  }
  return m;
}

TeamOracle::Mask TeamOracle::next_mask(Mask team) const {
  Mask out = 0;
  for_each_bit(team, [&](std::size_t u) { out |= Mask{1} << successor_[u]; });
  return out;
}

bool TeamOracle::eval_mask(const Formula& phi, Mask team) {
  auto [it, fresh] = memo_.try_emplace(phi.id());
  if (fresh) {
    it->second.assign(std::size_t{1} << universe_.size(), -1);
    pinned_.push_back(phi);
  }
  std::int8_t cached = it->second[team];
  if (cached >= 0) return cached != 0;
  const bool v = compute(phi, team);
  // compute() may rehash memo_, so index again.
  memo_[phi.id()][team] = v ? 1 : 0;
  return v;
}

bool TeamOracle::compute(const Formula& phi, Mask team) {
  switch (phi.op()) {
    case Op::True: return true;
    case Op::False: return team == 0;
    case Op::Atom:
    case Op::NegAtom: {
      bool all = true;
      const bool positive = phi.is(Op::Atom);
      for_each_bit(team, [&](std::size_t u) { all = all && universe_[u].holds(phi.prop(), 0) == positive; });
      return all;
    }
    case Op::And: return eval_mask(phi.lhs(), team) && eval_mask(phi.rhs(), team);
    case Op::OvOr: return eval_mask(phi.lhs(), team) || eval_mask(phi.rhs(), team);
    case Op::Sim: return !eval_mask(phi.child(0), team);
    case Op::Or: return eval_split(phi, team);
    case Op::Next: return eval_mask(phi.child(0), next_mask(team));
    case Op::Globally: return eval_globally(phi, team);
    case Op::Until: return eval_until(phi, team);
    case Op::Release: {
      if (!is_ltl(phi)) throw FragmentError("release is only supported over LTL operands");
      bool all = true;
      for_each_bit(team, [&](std::size_t u) { all = all && eval_ltl(universe_[u], phi); });
      return all;
    }
    default: break;
  }
  throw FragmentError("oracle expects a team formula");
}

bool TeamOracle::eval_split(const Formula& phi, Mask team) {
  // T1 ∪ T2 = T with overlap allowed: T2 = (T \ T1) ∪ S for some S ⊆ T1.
  for (Mask t1 = team;; t1 = (t1 - 1) & team) {
    if (eval_mask(phi.lhs(), t1)) {
      const Mask rest = team & ~t1;
      for (Mask s = t1;; s = (s - 1) & t1) {
        if (eval_mask(phi.rhs(), rest | s)) return true;
        if (s == 0) break;
      }
    }
    if (t1 == 0) break;
  }
  return false;
}

bool TeamOracle::eval_globally(const Formula& phi, Mask team) {
  // Every T[f,∞] is a union over t ∈ T of a nonempty set of suffixes of t.
  std::vector<char> reach(std::size_t{1} << universe_.size(), 0);
  reach[0] = 1;
  for_each_bit(team, [&](std::size_t u) {
    std::vector<char> next(reach.size(), 0);
    for (std::size_t r = 0; r < reach.size(); ++r) {
      if (!reach[r]) continue;
      for (Mask o : suffix_unions_[u]) next[r | o] = 1;
    }
    reach.swap(next);
  });
  for (std::size_t r = 0; r < reach.size(); ++r) {
    if (reach[r] && !eval_mask(phi.child(0), static_cast<Mask>(r))) return false;
  }
  return true;
}

const std::vector<TeamOracle::Mask>& TeamOracle::obligations(std::size_t u, std::size_t min, std::size_t max) {
  const std::uint64_t key = (std::uint64_t{u} << 40) | (std::uint64_t{min} << 20) | max;
  auto [it, fresh] = obligation_cache_.try_emplace(key);
  if (!fresh) return it->second;
  // f′(t) ⊆ [0, max-1], nonempty, with min f′(t) ≤ min.
  std::set<Mask> seen;
  for (std::uint64_t s = 1; s < (std::uint64_t{1} << max); ++s) {
    if (static_cast<std::size_t>(__builtin_ctzll(s)) > min) continue;
    Mask m = 0;
    for (std::size_t k = 0; k < max; ++k) {
      if ((s >> k) & 1U) m |= Mask{1} << suffix_index_[u][k];
    }
    seen.insert(m);
  }
  it->second.assign(seen.begin(), seen.end());
  return it->second;
}

bool TeamOracle::eval_until(const Formula& phi, Mask team) {
  // DP over the traces of T. A state records T[f,∞] so far, whether T′ is
  // nonempty, and the set R of reachable T′[f′,∞] for f′ < f, as a bitset
  // over teams. Word 0 holds the first two components.
  const std::size_t teams = std::size_t{1} << universe_.size();
  const std::size_t words = std::max<std::size_t>(1, teams / 64);
  using State = std::vector<std::uint64_t>;
  std::unordered_set<State, WordsHash> states;
  {
    State init(words + 1, 0);
    init[1] = 1;  // R = {∅}
    states.insert(std::move(init));
  }
  for_each_bit(team, [&](std::size_t u) {
    std::unordered_set<State, WordsHash> next;
    for (const State& s : states) {
      for (const Choice& c : choices_[u]) {
        State n(words + 1, 0);
        const std::uint64_t psi = (s[0] & 0xffffffffULL) | c.suffixes;
        if (c.max == 0) {
          std::copy(s.begin() + 1, s.end(), n.begin() + 1);
          n[0] = psi | (s[0] & (std::uint64_t{1} << 32));
        } else {
          n[0] = psi | (std::uint64_t{1} << 32);
          const auto& obl = obligations(u, c.min, c.max);
          for (std::size_t w = 0; w < words; ++w) {
            std::uint64_t bits = s[w + 1];
            while (bits != 0) {
              const std::size_t r = w * 64 + static_cast<std::size_t>(__builtin_ctzll(bits));
              bits &= bits - 1;
              for (Mask o : obl) {
                const std::size_t x = r | o;
                n[x / 64 + 1] |= std::uint64_t{1} << (x % 64);
              }
            }
          }
        }
        next.insert(std::move(n));
      }
    }
    states.swap(next);
  });

  for (const State& s : states) {
    if (!eval_mask(phi.rhs(), static_cast<Mask>(s[0] & 0xffffffffULL))) continue;
    if ((s[0] >> 32) == 0) return true;
    bool all = true;
    for (std::size_t w = 0; w < words && all; ++w) {
      std::uint64_t bits = s[w + 1];
      while (bits != 0 && all) {
        const std::size_t r = w * 64 + static_cast<std::size_t>(__builtin_ctzll(bits));
        bits &= bits - 1;
        all = eval_mask(phi.lhs(), static_cast<Mask>(r));
      }
    }
    if (all) return true;
  }
  return false;
}

bool oracle_eval(const Team& team, const Formula& phi, const OracleLimits& limits) {
  TeamOracle oracle(team, limits);
  return oracle.eval(phi);
}

bool eval_ov_dnf(const Team& team, const OvDnf& dnf) {
  return std::any_of(dnf.disjuncts.begin(), dnf.disjuncts.end(), [&](const Formula& a) {
    return std::all_of(team.begin(), team.end(), [&](const LassoTrace& t) { return eval_ltl(t, a); });
  });
}

bool eval_quasi_flat(const Team& team, const QuasiFlat& qf) {
  return std::any_of(qf.conjuncts.begin(), qf.conjuncts.end(), [&](const QuasiConjunct& c) {
    const bool alpha = std::all_of(team.begin(), team.end(), [&](const LassoTrace& t) { return eval_ltl(t, c.alpha); });
    return alpha && std::all_of(c.betas.begin(), c.betas.end(), [&](const Formula& b) {
             return std::any_of(team.begin(), team.end(), [&](const LassoTrace& t) { return eval_ltl(t, b); });
           });
  });
}

bool eval_team_nf(const Team& team, const Formula& phi, const TransformLimits& limits) {
  if (is_team_ov(phi)) return eval_ov_dnf(team, to_ov_dnf(phi, limits));
  if (is_left_dc(phi)) return eval_quasi_flat(team, to_quasi_flat(phi, limits));
  throw FragmentError("formula is neither in TeamLTL(⩔) nor in left-dc TeamLTL(~)");
}

}  // namespace teamhyper
