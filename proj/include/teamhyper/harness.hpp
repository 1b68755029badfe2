#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "teamhyper/eval_team.hpp"
#include "teamhyper/formula.hpp"
#include "teamhyper/trace.hpp"
#include "teamhyper/transform.hpp"

namespace teamhyper {

/// Portable random source: std::mt19937_64, whose output sequence is fixed
/// by the C++ standard, plus integer sampling by rejection so that results do
/// not depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Seed of the independent substream for case `index` of a run seeded
  /// with `seed` (SplitMix64 finalizer over both).
  static std::uint64_t substream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n);
  /// True with probability num/den.
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }
  /// Index drawn proportionally to `weights` (not all zero).
  std::size_t weighted(const std::vector<unsigned>& weights);

 private:
  std::mt19937_64 engine_;
};

/// Connectives a generator may place at an inner node.
enum class Connective : std::uint8_t { And, Or, OvOr, Sim, Next, Globally, Until, Eventually };

std::string_view to_string(Connective c);

struct GenConfig {
  std::size_t max_team = 3;
  std::size_t max_stem = 2;
  std::size_t max_period = 2;
  int max_depth = 3;
  /// Propositions are the first `ap_size` of p, q, r, s, ...
  std::size_t ap_size = 2;
  /// Relative weights of inner connectives; connectives outside the target
  /// fragment are ignored.
  std::map<Connective, unsigned> weights = {
      {Connective::And, 3},  {Connective::Or, 3},       {Connective::OvOr, 3},  {Connective::Sim, 2},
      {Connective::Next, 2}, {Connective::Globally, 2}, {Connective::Until, 2}, {Connective::Eventually, 1},
  };
  /// Per-mille chance that an inner position becomes a leaf early.
  unsigned leaf_permille = 250;
  /// HyperLTL generators: variables per quantifier block and literals per
  /// Boolean combination.
  std::size_t max_block = 2;
  std::size_t max_literals = 3;
  OracleLimits oracle;
  TransformLimits transform;
  /// Replaces the ⩔-rewrite rules in oracle-nf (fault injection).
  std::optional<std::vector<RewriteRule>> rule_override;

  std::vector<std::string> props() const;
};

enum class GenKind : std::uint8_t { Ltl, TeamOv, LeftDc, HyperPbc, HyperBc, TeamOfTraces };

std::string_view to_string(GenKind k);
std::optional<GenKind> parse_gen_kind(std::string_view s);

using GenValue = std::variant<Formula, Team>;

/// Throws InvalidArgument on a config with a zero bound.
void validate(const GenConfig& cfg);

Formula gen_formula(GenKind kind, const GenConfig& cfg, Rng& rng);
Team gen_team(const GenConfig& cfg, Rng& rng);
LassoTrace gen_trace(const GenConfig& cfg, Rng& rng);

/// Deterministic per seed; formulas are classify-checked against `kind`.
GenValue gen_random(GenKind kind, const GenConfig& cfg, std::uint64_t seed);

enum class Suite : std::uint8_t { ThmOv, ThmLeftDc, Flatness, Downward, OracleNf, Prenex, Hyperify, NegDual };

std::string_view to_string(Suite s);
std::optional<Suite> parse_suite(std::string_view s);
const std::vector<Suite>& all_suites();

struct CaseFailure {
  std::size_t index = 0;
  std::string formula;
  std::string team;
  std::map<std::string, bool> verdicts;
  /// Extra context, e.g. the offending subteam.
  std::string detail;
  /// Set when an evaluator threw instead of answering.
  std::string error;
  bool shrunk = false;
};

struct DiffReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::size_t cases = 0;
  std::vector<CaseFailure> failures;
  double duration_ms = 0;

  bool ok() const { return failures.empty(); }
  /// Deterministic JSON; wall-clock time is only included when asked.
  std::string to_json(bool include_duration = false) const;
};

/// Throws InvalidArgument on an invalid config and LimitError when an
/// oracle-backed suite's config exceeds the oracle limits.
DiffReport run_suite(Suite suite, const GenConfig& cfg, std::size_t cases, std::uint64_t seed);

}  // namespace teamhyper
