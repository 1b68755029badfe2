#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace teamhyper {

/// Set of propositions true at one position, kept sorted and duplicate-free.
using Letter = std::vector<std::string>;

Letter make_letter(std::vector<std::string> props);

/// Ultimately periodic trace stem · loop^ω in canonical form.
///
/// The loop is primitive and the stem cannot be folded into it (its last
/// letter differs from the loop's last letter), so two values compare equal
/// iff they denote the same ω-word.
class LassoTrace {
 public:
  /// The constant trace ({})^ω.
  LassoTrace();

  const std::vector<Letter>& stem() const { return stem_; }
  const std::vector<Letter>& loop() const { return loop_; }

  /// Number of distinct positions |stem| + |loop|.
  std::size_t length() const { return stem_.size() + loop_.size(); }

  /// Letter at an arbitrary position of the ω-word.
  const Letter& at(std::size_t pos) const;
  bool holds(std::string_view prop, std::size_t pos) const;

  /// Reduce a position to the representative in [0, length()).
  std::size_t normalize(std::size_t pos) const;

  friend auto operator<=>(const LassoTrace&, const LassoTrace&) = default;
  friend bool operator==(const LassoTrace&, const LassoTrace&) = default;

 private:
  friend LassoTrace canonicalize(std::vector<Letter> stem, std::vector<Letter> loop);
  LassoTrace(std::vector<Letter> stem, std::vector<Letter> loop) : stem_(std::move(stem)), loop_(std::move(loop)) {}

  std::vector<Letter> stem_;
  std::vector<Letter> loop_;
};

/// Throws InvalidArgument on an empty loop.
LassoTrace canonicalize(std::vector<Letter> stem, std::vector<Letter> loop);

/// t[i,∞].
LassoTrace suffix(const LassoTrace& t, std::size_t i);

/// First `n` letters of the ω-word.
std::vector<Letter> unroll(const LassoTrace& t, std::size_t n);

/// Finite set of canonical traces.
class Team {
 public:
  using const_iterator = std::set<LassoTrace>::const_iterator;

  Team() = default;
  Team(std::initializer_list<LassoTrace> traces) : traces_(traces) {}
  explicit Team(const std::vector<LassoTrace>& traces) : traces_(traces.begin(), traces.end()) {}

  bool insert(LassoTrace t) { return traces_.insert(std::move(t)).second; }
  bool contains(const LassoTrace& t) const { return traces_.count(t) != 0; }
  std::size_t size() const { return traces_.size(); }
  bool empty() const { return traces_.empty(); }
  const_iterator begin() const { return traces_.begin(); }
  const_iterator end() const { return traces_.end(); }
  const std::set<LassoTrace>& traces() const { return traces_; }

  friend auto operator<=>(const Team&, const Team&) = default;
  friend bool operator==(const Team&, const Team&) = default;

 private:
  std::set<LassoTrace> traces_;
};

/// Trace variable -> trace.
using TraceAssignment = std::map<std::string, LassoTrace>;

/// Name of the product-alphabet atom standing for p@var.
std::string product_atom(std::string_view prop, std::string_view var);

/// Position-wise product of the assigned traces: stem length is the maximum
/// stem, loop length the lcm of the loops, and position k carries p@var iff p
/// holds at position k of the trace assigned to var.
LassoTrace product(const TraceAssignment& assignment);

/// Suffix-choice function: trace -> nonempty set of positions.
using SuffixChoice = std::map<LassoTrace, std::set<std::size_t>>;

/// T[f,∞] = { t[s,∞] | t ∈ T, s ∈ f(t) }.
Team team_suffix_set(const Team& team, const SuffixChoice& choice);

/// T[1,∞].
Team team_next(const Team& team);

}  // namespace teamhyper
