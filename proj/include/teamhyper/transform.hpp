#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "teamhyper/formula.hpp"

namespace teamhyper {

/// ⩔_i α_i with every α_i pure LTL. Never empty.
struct OvDnf {
  std::vector<Formula> disjuncts;
};

/// α ∧ ⋀_j ∃β_j, where ∃β abbreviates ~dual(β).
struct QuasiConjunct {
  Formula alpha;
  std::vector<Formula> betas;
};

/// ⩔_i (α_i ∧ ⋀_j ∃β_ij). Never empty.
struct QuasiFlat {
  std::vector<QuasiConjunct> conjuncts;
};

struct TransformLimits {
  /// Normal forms and Boolean DNFs abort with LimitError beyond this.
  std::size_t max_disjuncts = 4096;
  /// Rule applications per rewrite run; guards against non-terminating
  /// custom rule sets.
  std::size_t max_rewrites = 1'000'000;
};

/// A root-level rewrite L ↦ R of the ⩔-pulling system.
struct RewriteRule {
  std::string name;
  /// Number of schema metavariables; `schema` builds an instance of L.
  std::size_t metavariables = 0;
  std::function<Formula(std::span<const Formula>)> schema;
  /// Rewrites `f` when its root matches L.
  std::function<std::optional<Formula>(const Formula&)> apply;
};

/// Rules pulling ⩔ through &, |, X, G and both sides of U.
const std::vector<RewriteRule>& ov_rules();

/// Apply `rules` bottom-up until ⩔ only occurs above LTL subformulas, then
/// flatten. Throws FragmentError outside TeamLTL(⩔), LimitError on blow-up.
OvDnf to_ov_dnf(const Formula& phi, const TransformLimits& limits = {});
OvDnf to_ov_dnf(const Formula& phi, std::span<const RewriteRule> rules, const TransformLimits& limits = {});

Formula to_formula(const OvDnf& dnf);
/// ⩔_i (α_i ∧ ⋀_j ~dual(β_ij)), dropping `1` conjuncts.
Formula to_formula(const QuasiFlat& qf);
Formula to_formula(const QuasiConjunct& c);

/// Building blocks of the quasi-flat rewrite system. Each is an equivalence
/// over the lax semantics when its arguments are read through to_formula.
namespace quasi {
QuasiFlat from_ltl(const Formula& ltl);
QuasiFlat from_ov(const OvDnf& dnf);
QuasiFlat negate(const QuasiFlat& a, const TransformLimits& limits = {});
QuasiFlat conjoin(const QuasiFlat& a, const QuasiFlat& b, const TransformLimits& limits = {});
QuasiFlat split_or(const QuasiFlat& a, const QuasiFlat& b, const TransformLimits& limits = {});
QuasiFlat ovor(const QuasiFlat& a, const QuasiFlat& b);
QuasiFlat next(const QuasiFlat& a);
QuasiFlat globally(const OvDnf& a);
QuasiFlat until(const OvDnf& left, const QuasiFlat& right, const TransformLimits& limits = {});
}  // namespace quasi

/// Schema view of the quasi-flat rules, for semantic validation: the team
/// formula `lhs(args)` must be equivalent to to_formula(rhs(args)).
struct QuasiRule {
  std::string name;
  std::size_t arity = 1;
  /// The first argument must carry no ∃-conjuncts (a ⩔-DNF).
  bool first_is_ov = false;
  std::function<Formula(std::span<const QuasiFlat>)> lhs;
  std::function<QuasiFlat(std::span<const QuasiFlat>)> rhs;
};

const std::vector<QuasiRule>& quasi_rules();

/// Throws FragmentError outside left-dc TeamLTL(~).
QuasiFlat to_quasi_flat(const Formula& phi, const TransformLimits& limits = {});

struct SignedSentence {
  bool positive = true;
  Formula sentence;
};

/// Disjunction of conjunctions of (possibly negated) prenex sentences.
using ClosureDnf = std::vector<std::vector<SignedSentence>>;

/// DNF of a Boolean combination of prenex sentences, pushing closure-level
/// negation onto the literals.
ClosureDnf bool_closure_dnf(const Formula& s, const TransformLimits& limits = {});

/// Prenex form of ¬s: dual quantifier prefix, negated matrix with the
/// negation pushed inward.
Formula negate_prenex(const Formula& s);

/// Positive Boolean combination of ∀*-sentences -> one ∀*-sentence.
/// A single disjunct keeps the names of its longest block; otherwise every
/// variable is renamed pi1, pi2, ... left to right.
Formula prenex_pbc(const Formula& s, const TransformLimits& limits = {});

/// Boolean combination of prenex sentences -> one prenex sentence. Variables
/// are renamed pi1, pi2, ...; the prefix starts with ∀ iff the input holds on
/// the empty team.
Formula prenex_bc(const Formula& s, const TransformLimits& limits = {});

/// TeamLTL(⩔) -> ⋁_i ∀pi. α_i(pi).
Formula teamov_to_pbc(const Formula& phi, const TransformLimits& limits = {});

/// Positive Boolean combination of one-variable ∀-sentences -> ⩔_i ⋀_j φ_ij.
Formula pbc_to_teamov(const Formula& s, const TransformLimits& limits = {});

/// left-dc TeamLTL(~) -> ⋁_i (∀pi. α_i(pi) ∧ ⋀_j ∃pi. β_ij(pi)). With
/// `forall_only`, ∃pi. β becomes ¬∀pi. dual(β)(pi).
Formula leftdc_to_bc(const Formula& phi, bool forall_only = false, const TransformLimits& limits = {});

/// Boolean combination of one-variable prenex sentences -> left-dc formula
/// ⩔_i (α_i ∧ ⋀_j ~dual(β_ij)).
Formula bc_to_leftdc(const Formula& s, const TransformLimits& limits = {});

/// Rename bound and atom trace variables according to `map`.
Formula rename_variables(const Formula& f, const std::function<std::string(const std::string&)>& map);

}  // namespace teamhyper
