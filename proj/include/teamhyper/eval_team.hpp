#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "teamhyper/formula.hpp"
#include "teamhyper/trace.hpp"
#include "teamhyper/transform.hpp"

namespace teamhyper {

struct OracleLimits {
  std::size_t max_team = 3;
  /// Bound on |stem| + |loop| of every trace of the input team.
  std::size_t max_lasso = 4;
  int max_depth = 4;
  /// Extra positions beyond |stem| + |loop| - 1 considered by suffix choices.
  /// Only useful to test that the bound loses nothing.
  std::size_t position_slack = 0;
};

/// Bounded brute-force evaluator of the lax team semantics.
///
/// Teams are subsets of the suffix closure of the base team and are encoded
/// as bitmasks; results are memoized per (subformula node, team), so one
/// oracle can evaluate many formulas sharing subtrees. Not thread-safe.
class TeamOracle {
 public:
  /// Throws LimitError when `base` exceeds the team or lasso limits.
  explicit TeamOracle(const Team& base, OracleLimits limits = {});

  /// Truth on the base team. Throws FragmentError on non-team formulas and
  /// LimitError beyond the depth limit.
  bool eval(const Formula& phi);
  /// Truth on `team`, which must consist of suffixes of base traces.
  bool eval(const Formula& phi, const Team& team);

  std::size_t universe_size() const { return universe_.size(); }

 private:
  using Mask = std::uint32_t;

  struct Choice {
    Mask suffixes;
    std::size_t min;
    std::size_t max;
  };

  void check(const Formula& phi) const;
  bool eval_mask(const Formula& phi, Mask team);
  bool compute(const Formula& phi, Mask team);
  bool eval_split(const Formula& phi, Mask team);
  bool eval_globally(const Formula& phi, Mask team);
  bool eval_until(const Formula& phi, Mask team);
  Mask next_mask(Mask team) const;
  Mask mask_of(const Team& team) const;
  /// T′[f′,∞] candidates for one trace with min/max of f(t) given.
  const std::vector<Mask>& obligations(std::size_t u, std::size_t min, std::size_t max);

  OracleLimits limits_;
  Mask base_ = 0;
  std::vector<LassoTrace> universe_;
  std::vector<std::size_t> successor_;
  /// suffix_index_[u][k] = universe index of universe_[u][k,∞].
  std::vector<std::vector<std::size_t>> suffix_index_;
  /// Deduplicated (suffix mask, min, max) over nonempty position sets.
  std::vector<std::vector<Choice>> choices_;
  /// Every nonempty union of suffixes of one trace.
  std::vector<std::vector<Mask>> suffix_unions_;
  std::unordered_map<std::uint64_t, std::vector<Mask>> obligation_cache_;
  std::unordered_map<const detail::Node*, std::vector<std::int8_t>> memo_;
  std::vector<Formula> pinned_;
};

/// One-shot oracle evaluation.
bool oracle_eval(const Team& team, const Formula& phi, const OracleLimits& limits = {});

/// ⩔_i α_i holds iff some α_i holds on every trace.
bool eval_ov_dnf(const Team& team, const OvDnf& dnf);

/// ⩔_i (α_i ∧ ⋀_j ∃β_ij) holds iff for some i every trace satisfies α_i and
/// every β_ij has a witness trace.
bool eval_quasi_flat(const Team& team, const QuasiFlat& qf);

/// Normal-form evaluation: ⩔-DNF for TeamLTL(⩔), quasi-flat form for left-dc
/// TeamLTL(~). Throws FragmentError outside both.
bool eval_team_nf(const Team& team, const Formula& phi, const TransformLimits& limits = {});

}  // namespace teamhyper
