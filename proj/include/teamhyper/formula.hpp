#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace teamhyper {

/// Node kinds shared by LTL, the team logics and HyperLTL.
///
/// Team and LTL trees are in negation normal form: classical negation only
/// exists as NegAtom. `Not` is the unrestricted negation of HyperLTL matrices
/// and of the Boolean-closure level. `OvOr` is the Boolean (team-level)
/// disjunction and `Sim` the Boolean negation; `Or` is the splitting
/// disjunction. `Release` only arises internally as the dual of `Until`.
enum class Op : std::uint8_t {
  True,
  False,
  Atom,
  NegAtom,
  And,
  Or,
  OvOr,
  Sim,
  Not,
  Next,
  Globally,
  Until,
  Release,
  Forall,
  Exists,
};

class Formula;

namespace detail {
struct Node {
  Op op;
  std::string prop;  // Atom, NegAtom
  std::string var;   // trace variable of a hyper atom, or the bound variable
  std::vector<Formula> children;
  std::size_t hash = 0;
  int depth = 1;
  std::size_t size = 1;
};
}  // namespace detail

/// Immutable formula tree with value semantics. Copies share structure.
class Formula {
 public:
  /// The constant `1`.
  Formula();

  Op op() const { return node_->op; }
  const std::string& prop() const { return node_->prop; }
  const std::string& var() const { return node_->var; }
  std::span<const Formula> children() const { return node_->children; }
  const Formula& child(std::size_t i) const { return node_->children.at(i); }
  const Formula& lhs() const { return child(0); }
  const Formula& rhs() const { return child(1); }

  /// Atoms and constants have depth 1.
  int depth() const { return node_->depth; }
  std::size_t size() const { return node_->size; }
  std::size_t hash() const { return node_->hash; }

  /// Identity of the shared node; equal ids imply structural equality.
  const detail::Node* id() const { return node_.get(); }

  bool is(Op op) const { return node_->op == op; }

  friend bool operator==(const Formula& a, const Formula& b);

  static Formula make(Op op, std::string prop, std::string var, std::vector<Formula> children);

 private:
  explicit Formula(std::shared_ptr<const detail::Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const detail::Node> node_;
};

/// Total structural order; used for canonical child ordering in tests.
bool structurally_less(const Formula& a, const Formula& b);

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

Formula top();
Formula bottom();
Formula atom(std::string prop);
Formula neg_atom(std::string prop);
Formula hyper_atom(std::string prop, std::string var);
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula ovor(Formula a, Formula b);
Formula sim(Formula a);
Formula negation(Formula a);
Formula next(Formula a);
Formula globally(Formula a);
/// F a, stored as 1 U a.
Formula eventually(Formula a);
Formula until(Formula a, Formula b);
Formula release(Formula a, Formula b);
/// G a inside a HyperLTL matrix, stored as !(1 U !a).
Formula hyper_globally(Formula a);
Formula forall(std::string var, Formula body);
Formula exists(std::string var, Formula body);

/// Conjunction dropping a `1` operand.
Formula conj_simplified(Formula a, Formula b);
/// Left fold of `conj_simplified`; `1` when empty.
Formula conj_all(std::span<const Formula> parts);

enum class FragmentTag : std::uint8_t {
  LTL,
  TeamOv,
  TeamLeftDcSim,
  TeamSim,
  HyperQF,
  ForallOne,
  QOne,
  ForallStar,
  PBCForallOne,
  BCQOne,
  BCHyper,
};

std::string_view to_string(FragmentTag tag);

class Fragments {
 public:
  bool contains(FragmentTag t) const { return (bits_ >> static_cast<unsigned>(t)) & 1U; }
  void insert(FragmentTag t) { bits_ |= 1U << static_cast<unsigned>(t); }
  bool empty() const { return bits_ == 0; }
  std::vector<FragmentTag> tags() const;
  friend bool operator==(const Fragments&, const Fragments&) = default;

 private:
  std::uint32_t bits_ = 0;
};

/// Every fragment the formula syntactically belongs to.
///
/// For team trees the tags are nested LTL ⊆ TeamOv ⊆ TeamLeftDcSim ⊆ TeamSim;
/// an LTL tree is also tagged HyperQF since it hyperifies to a quantifier-free
/// matrix. The sentence tags (ForallOne ... BCHyper) require a closed sentence.
Fragments classify(const Formula& f);

bool is_ltl(const Formula& f);
bool is_team_ov(const Formula& f);
bool is_left_dc(const Formula& f);
/// Any tree over the team connectives (no Not, quantifiers or hyper atoms).
bool is_team(const Formula& f);
bool has_quantifier(const Formula& f);
/// Trace variables of atoms not bound on the path to the root.
std::set<std::string> free_variables(const Formula& f);
/// Trace variables occurring in atoms (bound or not).
std::set<std::string> atom_variables(const Formula& f);

/// NNF of the classical negation of a pure LTL formula.
///
/// dual(1 U a) = G dual(a) and dual(G a) = 1 U dual(a); every other Until
/// becomes a Release, so dual is an involution on Release-free input.
Formula dual(const Formula& ltl);

/// Replace every proposition p by p@var. Negated atoms become !(p@var),
/// G becomes !(1 U !a) and Release becomes !(!a U !b).
Formula hyperify(const Formula& ltl, std::string_view var);

/// Inverse of hyperify for a quantifier-free matrix over the single variable
/// `var`: pushes Not to the atoms and strips the variable.
Formula dehyperify(const Formula& matrix, std::string_view var);

/// Push Not through !, &, |, X and constants of a quantifier-free HyperLTL
/// matrix. Negations above Until stay in place.
Formula push_negation(const Formula& matrix);

/// Convert a quantifier-free matrix to an LTL tree in NNF, renaming each atom
/// with `rename(prop, var)`.
Formula matrix_to_ltl(const Formula& matrix,
                      const std::function<std::string(const std::string&, const std::string&)>& rename);

}  // namespace teamhyper
