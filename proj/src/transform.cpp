#include "teamhyper/transform.hpp"

#include <algorithm>
#include <utility>

#include "teamhyper/errors.hpp"
#include "teamhyper/eval_classic.hpp"

namespace teamhyper {

namespace {

void check_cap(std::size_t n, const TransformLimits& limits, const char* what) {
  if (n > limits.max_disjuncts) {
    throw LimitError(std::string(what) + " exceeds " + std::to_string(limits.max_disjuncts) + " disjuncts");
  }
}

std::size_t ov_leaves(const Formula& f) {
  return f.is(Op::OvOr) ? ov_leaves(f.lhs()) + ov_leaves(f.rhs()) : 1;
}

void flatten_ov(const Formula& f, std::vector<Formula>& out) {
  if (f.is(Op::OvOr)) {
    flatten_ov(f.lhs(), out);
    flatten_ov(f.rhs(), out);
    return;
  }
  out.push_back(f);
}

Formula disj_simplified(Formula a, Formula b) {
  if (a.is(Op::True) || b.is(Op::True)) return top();
  return disj(std::move(a), std::move(b));
}

RewriteRule binary_rule(std::string name, Op op, bool ov_on_left) {
  RewriteRule r;
  r.name = std::move(name);
  r.metavariables = 3;
  r.schema = [op, ov_on_left](std::span<const Formula> m) {
    Formula o = ovor(m[0], m[1]);
    return ov_on_left ? Formula::make(op, {}, {}, {o, m[2]}) : Formula::make(op, {}, {}, {m[2], o});
  };
  r.apply = [op, ov_on_left](const Formula& f) -> std::optional<Formula> {
    if (!f.is(op)) return std::nullopt;
    const Formula& o = ov_on_left ? f.lhs() : f.rhs();
    const Formula& other = ov_on_left ? f.rhs() : f.lhs();
    if (!o.is(Op::OvOr)) return std::nullopt;
    auto build = [&](const Formula& x) {
      return ov_on_left ? Formula::make(op, {}, {}, {x, other}) : Formula::make(op, {}, {}, {other, x});
    };
    return ovor(build(o.lhs()), build(o.rhs()));
  };
  return r;
}

RewriteRule unary_rule(std::string name, Op op) {
  RewriteRule r;
  r.name = std::move(name);
  r.metavariables = 2;
  r.schema = [op](std::span<const Formula> m) { return Formula::make(op, {}, {}, {ovor(m[0], m[1])}); };
  r.apply = [op](const Formula& f) -> std::optional<Formula> {
    if (!f.is(op) || !f.child(0).is(Op::OvOr)) return std::nullopt;
    const Formula& o = f.child(0);
    return ovor(Formula::make(op, {}, {}, {o.lhs()}), Formula::make(op, {}, {}, {o.rhs()}));
  };
  return r;
}

Formula rebuild(const Formula& f, std::vector<Formula> children) {
  return Formula::make(f.op(), f.prop(), f.var(), std::move(children));
}

// Budget for one rewrite run. Sound rule sets keep every intermediate
// formula within twice the input depth; anything deeper signals a
// diverging custom rule set.
struct RewriteBudget {
  std::size_t steps = 0;
  int max_depth = 0;
};

Formula normalize_ov(const Formula& f, std::span<const RewriteRule> rules, const TransformLimits& limits,
                     RewriteBudget& budget) {
  if (is_ltl(f)) return f;
  std::vector<Formula> kids;
  std::size_t leaves = 1;
  for (const auto& c : f.children()) {
    kids.push_back(normalize_ov(c, rules, limits, budget));
    leaves = f.is(Op::OvOr) ? (kids.size() == 1 ? 0 : leaves) + ov_leaves(kids.back())
                            : leaves * ov_leaves(kids.back());
  }
  check_cap(leaves, limits, "⩔-normal form");
  Formula g = rebuild(f, std::move(kids));
  if (g.is(Op::OvOr)) return g;
  for (const auto& rule : rules) {
    if (auto r = rule.apply(g)) {
      if (++budget.steps > limits.max_rewrites || r->depth() > budget.max_depth) {
        throw LimitError("⩔-normal form: rewrite budget exhausted");
      }
      return normalize_ov(*r, rules, limits, budget);
    }
  }
  return g;
}

QuasiConjunct conjunct_and(const QuasiConjunct& a, const QuasiConjunct& b) {
  QuasiConjunct out{conj_simplified(a.alpha, b.alpha), a.betas};
  out.betas.insert(out.betas.end(), b.betas.begin(), b.betas.end());
  return out;
}

QuasiConjunct conjunct_split(const QuasiConjunct& a, const QuasiConjunct& b) {
  QuasiConjunct out{disj_simplified(a.alpha, b.alpha), {}};
  for (const auto& beta : a.betas) out.betas.push_back(conj_simplified(a.alpha, beta));
  for (const auto& beta : b.betas) out.betas.push_back(conj_simplified(b.alpha, beta));
  return out;
}

template <typename Combine>
QuasiFlat distribute(const QuasiFlat& a, const QuasiFlat& b, Combine combine, const TransformLimits& limits) {
  check_cap(a.conjuncts.size() * b.conjuncts.size(), limits, "quasi-flat normal form");
  QuasiFlat out;
  for (const auto& x : a.conjuncts) {
    for (const auto& y : b.conjuncts) out.conjuncts.push_back(combine(x, y));
  }
  return out;
}

QuasiFlat qf_rec(const Formula& f, const TransformLimits& limits) {
  if (is_ltl(f)) return quasi::from_ltl(f);
  switch (f.op()) {
    case Op::Sim: return quasi::negate(qf_rec(f.child(0), limits), limits);
    case Op::And: return quasi::conjoin(qf_rec(f.lhs(), limits), qf_rec(f.rhs(), limits), limits);
    case Op::Or: return quasi::split_or(qf_rec(f.lhs(), limits), qf_rec(f.rhs(), limits), limits);
    case Op::OvOr: {
      QuasiFlat out = quasi::ovor(qf_rec(f.lhs(), limits), qf_rec(f.rhs(), limits));
      check_cap(out.conjuncts.size(), limits, "quasi-flat normal form");
      return out;
    }
    case Op::Next: return quasi::next(qf_rec(f.child(0), limits));
    case Op::Globally: return quasi::globally(to_ov_dnf(f.child(0), limits));
    case Op::Until: return quasi::until(to_ov_dnf(f.lhs(), limits), qf_rec(f.rhs(), limits), limits);
    default: break;
  }
  throw FragmentError("formula is not in left-dc TeamLTL(~)");
}

// ---------------------------------------------------------------------------
// HyperLTL helpers

struct PrenexParts {
  std::vector<std::pair<Op, std::string>> prefix;
  Formula matrix;
};

PrenexParts split_prenex(const Formula& s) {
  PrenexParts p;
  const Formula* cur = &s;
  while (cur->is(Op::Forall) || cur->is(Op::Exists)) {
    p.prefix.emplace_back(cur->op(), cur->var());
    cur = &cur->child(0);
  }
  if (has_quantifier(*cur)) throw FragmentError("sentence is not in prenex form");
  p.matrix = *cur;
  return p;
}

Formula join_prenex(const std::vector<std::pair<Op, std::string>>& prefix, Formula matrix) {
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) {
    matrix = it->first == Op::Forall ? forall(it->second, matrix) : exists(it->second, matrix);
  }
  return matrix;
}

Formula fold_or(const std::vector<Formula>& parts) {
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = disj(acc, parts[i]);
  return acc;
}

Formula fold_and(const std::vector<Formula>& parts) {
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = conj(acc, parts[i]);
  return acc;
}

Formula fold_ovor(const std::vector<Formula>& parts) {
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = ovor(acc, parts[i]);
  return acc;
}

bool closure_node(const Formula& f) {
  return (f.is(Op::And) || f.is(Op::Or) || f.is(Op::Not)) && has_quantifier(f);
}

ClosureDnf closure_dnf(const Formula& f, bool negated, const TransformLimits& limits) {
  if (!closure_node(f)) return {{SignedSentence{!negated, f}}};
  if (f.is(Op::Not)) return closure_dnf(f.child(0), !negated, limits);
  ClosureDnf a = closure_dnf(f.lhs(), negated, limits);
  ClosureDnf b = closure_dnf(f.rhs(), negated, limits);
  const bool is_or = f.is(Op::Or) != negated;
  if (is_or) {
    check_cap(a.size() + b.size(), limits, "Boolean DNF");
    a.insert(a.end(), b.begin(), b.end());
    return a;
  }
  check_cap(a.size() * b.size(), limits, "Boolean DNF");
  ClosureDnf out;
  for (const auto& x : a) {
    for (const auto& y : b) {
      auto c = x;
      c.insert(c.end(), y.begin(), y.end());
      out.push_back(std::move(c));
    }
  }
  return out;
}

// Drops constant (quantifier-free, closed) literals. nullopt: the whole
// combination is constant, with the given value in `constant`.
std::optional<ClosureDnf> fold_constants(const ClosureDnf& dnf, bool& constant) {
  ClosureDnf out;
  for (const auto& conjunction : dnf) {
    std::vector<SignedSentence> kept;
    bool dead = false;
    for (const auto& lit : conjunction) {
      if (has_quantifier(lit.sentence)) {
        kept.push_back(lit);
        continue;
      }
      const bool v = eval_hyper(Team{}, lit.sentence) == lit.positive;
      if (!v) {
        dead = true;
        break;
      }
    }
    if (dead) continue;
    if (kept.empty()) {
      constant = true;
      return std::nullopt;
    }
    out.push_back(std::move(kept));
  }
  if (out.empty()) {
    constant = false;
    return std::nullopt;
  }
  return out;
}

void require_sentence(const Formula& s) {
  if (auto free = free_variables(s); !free.empty()) {
    throw InvalidArgument("free trace variable '" + *free.begin() + "'");
  }
  if (!classify(s).contains(FragmentTag::BCHyper)) {
    throw FragmentError("not a Boolean combination of prenex HyperLTL sentences");
  }
}

std::string fresh(std::size_t& counter) { return "pi" + std::to_string(counter++); }

Formula rename_matrix(const PrenexParts& p, const std::vector<std::string>& names) {
  return rename_variables(p.matrix, [&](const std::string& v) {
    for (std::size_t i = 0; i < p.prefix.size(); ++i) {
      if (p.prefix[i].second == v) return names.at(i);
    }
    return v;
  });
}

}  // namespace

// ---------------------------------------------------------------------------

const std::vector<RewriteRule>& ov_rules() {
  static const std::vector<RewriteRule> rules = {
      binary_rule("and-left", Op::And, true),        binary_rule("and-right", Op::And, false),
      binary_rule("split-left", Op::Or, true),       binary_rule("split-right", Op::Or, false),
      unary_rule("next", Op::Next),                  unary_rule("globally", Op::Globally),
      binary_rule("until-left", Op::Until, true),    binary_rule("until-right", Op::Until, false),
  };
  return rules;
}

OvDnf to_ov_dnf(const Formula& phi, const TransformLimits& limits) { return to_ov_dnf(phi, ov_rules(), limits); }

OvDnf to_ov_dnf(const Formula& phi, std::span<const RewriteRule> rules, const TransformLimits& limits) {
  if (!is_team_ov(phi)) throw FragmentError("formula is not in TeamLTL(⩔)");
  OvDnf out;
  RewriteBudget budget{0, 2 * phi.depth() + 8};
  flatten_ov(normalize_ov(phi, rules, limits, budget), out.disjuncts);
  for (const auto& d : out.disjuncts) {
    if (!is_ltl(d)) throw FragmentError("rewrite rules left a disjunct outside LTL: incomplete rule set");
  }
  return out;
}

Formula to_formula(const OvDnf& dnf) { return fold_ovor(dnf.disjuncts); }

Formula to_formula(const QuasiConjunct& c) {
  Formula acc = c.alpha;
  for (const auto& b : c.betas) acc = conj_simplified(acc, sim(dual(b)));
  return acc;
}

Formula to_formula(const QuasiFlat& qf) {
  std::vector<Formula> parts;
  for (const auto& c : qf.conjuncts) parts.push_back(to_formula(c));
  return fold_ovor(parts);
}

namespace quasi {

QuasiFlat from_ltl(const Formula& ltl) {
  if (!is_ltl(ltl)) throw FragmentError("expected an LTL formula");
  return {{QuasiConjunct{ltl, {}}}};
}

QuasiFlat from_ov(const OvDnf& dnf) {
  QuasiFlat out;
  for (const auto& a : dnf.disjuncts) out.conjuncts.push_back({a, {}});
  return out;
}

QuasiFlat negate(const QuasiFlat& a, const TransformLimits& limits) {
  // ~⩔_i C_i = ⋀_i ~C_i,  ~(α ∧ ⋀ ∃β) = ∃dual(α) ⩔ ⩔_j dual(β_j).
  QuasiFlat acc{{QuasiConjunct{top(), {}}}};
  for (const auto& c : a.conjuncts) {
    QuasiFlat options;
    if (!c.alpha.is(Op::True)) options.conjuncts.push_back({top(), {dual(c.alpha)}});
    for (const auto& b : c.betas) options.conjuncts.push_back({dual(b), {}});
    if (options.conjuncts.empty()) options.conjuncts.push_back({top(), {bottom()}});  // ~1
    acc = distribute(acc, options, conjunct_and, limits);
  }
  return acc;
}

QuasiFlat conjoin(const QuasiFlat& a, const QuasiFlat& b, const TransformLimits& limits) {
  return distribute(a, b, conjunct_and, limits);
}

QuasiFlat split_or(const QuasiFlat& a, const QuasiFlat& b, const TransformLimits& limits) {
  return distribute(a, b, conjunct_split, limits);
}

QuasiFlat ovor(const QuasiFlat& a, const QuasiFlat& b) {
  QuasiFlat out = a;
  out.conjuncts.insert(out.conjuncts.end(), b.conjuncts.begin(), b.conjuncts.end());
  return out;
}

QuasiFlat next(const QuasiFlat& a) {
  QuasiFlat out;
  for (const auto& c : a.conjuncts) {
    QuasiConjunct n{teamhyper::next(c.alpha), {}};
    for (const auto& b : c.betas) n.betas.push_back(teamhyper::next(b));
    out.conjuncts.push_back(std::move(n));
  }
  return out;
}

QuasiFlat globally(const OvDnf& a) {
  QuasiFlat out;
  for (const auto& d : a.disjuncts) out.conjuncts.push_back({teamhyper::globally(d), {}});
  return out;
}

QuasiFlat until(const OvDnf& left, const QuasiFlat& right, const TransformLimits& limits) {
  check_cap(left.disjuncts.size() * right.conjuncts.size(), limits, "quasi-flat normal form");
  QuasiFlat out;
  for (const auto& a : left.disjuncts) {
    for (const auto& c : right.conjuncts) {
      QuasiConjunct n{teamhyper::until(a, c.alpha), {}};
      for (const auto& d : c.betas) n.betas.push_back(teamhyper::until(a, conj_simplified(c.alpha, d)));
      out.conjuncts.push_back(std::move(n));
    }
  }
  return out;
}

}  // namespace quasi

const std::vector<QuasiRule>& quasi_rules() {
  static const std::vector<QuasiRule> rules = [] {
    using Args = std::span<const QuasiFlat>;
    auto as_ov = [](const QuasiFlat& q) {
      OvDnf d;
      for (const auto& c : q.conjuncts) {
        if (!c.betas.empty()) throw FragmentError("argument must be a ⩔-DNF");
        d.disjuncts.push_back(c.alpha);
      }
      return d;
    };
    std::vector<QuasiRule> r;
    r.push_back({"negation", 1, false, [](Args a) { return sim(to_formula(a[0])); },
                 [](Args a) { return quasi::negate(a[0]); }});
    r.push_back({"conjunction", 2, false, [](Args a) { return conj(to_formula(a[0]), to_formula(a[1])); },
                 [](Args a) { return quasi::conjoin(a[0], a[1]); }});
    r.push_back({"split-disjunction", 2, false, [](Args a) { return disj(to_formula(a[0]), to_formula(a[1])); },
                 [](Args a) { return quasi::split_or(a[0], a[1]); }});
    r.push_back({"boolean-disjunction", 2, false,
                 [](Args a) { return teamhyper::ovor(to_formula(a[0]), to_formula(a[1])); },
                 [](Args a) { return quasi::ovor(a[0], a[1]); }});
    r.push_back({"next", 1, false, [](Args a) { return teamhyper::next(to_formula(a[0])); },
                 [](Args a) { return quasi::next(a[0]); }});
    r.push_back({"globally", 1, true, [](Args a) { return teamhyper::globally(to_formula(a[0])); },
                 [as_ov](Args a) { return quasi::globally(as_ov(a[0])); }});
    r.push_back({"until", 2, true, [](Args a) { return teamhyper::until(to_formula(a[0]), to_formula(a[1])); },
                 [as_ov](Args a) { return quasi::until(as_ov(a[0]), a[1]); }});
    return r;
  }();
  return rules;
}

QuasiFlat to_quasi_flat(const Formula& phi, const TransformLimits& limits) {
  if (!is_left_dc(phi)) throw FragmentError("formula is not in left-dc TeamLTL(~)");
  return qf_rec(phi, limits);
}

// ---------------------------------------------------------------------------

ClosureDnf bool_closure_dnf(const Formula& s, const TransformLimits& limits) {
  require_sentence(s);
  return closure_dnf(s, false, limits);
}

Formula negate_prenex(const Formula& s) {
  PrenexParts p = split_prenex(s);
  for (auto& q : p.prefix) q.first = q.first == Op::Forall ? Op::Exists : Op::Forall;
  return join_prenex(p.prefix, push_negation(negation(p.matrix)));
}

Formula prenex_pbc(const Formula& s, const TransformLimits& limits) {
  ClosureDnf dnf = bool_closure_dnf(s, limits);
  for (const auto& c : dnf) {
    for (const auto& lit : c) {
      if (!lit.positive) throw FragmentError("negation in a positive Boolean combination");
      for (const auto& [q, v] : split_prenex(lit.sentence).prefix) {
        if (q != Op::Forall) throw FragmentError("existential quantifier in a ∀*-sentence");
      }
    }
  }
  bool constant = false;
  auto folded = fold_constants(dnf, constant);
  if (!folded) return constant ? top() : bottom();

  struct Merged {
    std::vector<std::string> names;
    std::vector<Formula> matrices;
  };
  const bool single = folded->size() == 1;
  std::size_t counter = 1;
  std::vector<std::string> all_names;
  std::vector<Formula> disjuncts;
  for (const auto& conjunction : *folded) {
    std::vector<PrenexParts> parts;
    std::size_t longest = 0;
    for (const auto& lit : conjunction) {
      parts.push_back(split_prenex(lit.sentence));
      if (parts.back().prefix.size() > parts[longest].prefix.size()) longest = parts.size() - 1;
    }
    std::vector<std::string> names;
    for (std::size_t k = 0; k < parts[longest].prefix.size(); ++k) {
      names.push_back(single ? parts[longest].prefix[k].second : fresh(counter));
    }
    std::vector<Formula> matrices;
    for (const auto& p : parts) matrices.push_back(rename_matrix(p, names));
    disjuncts.push_back(fold_and(matrices));
    all_names.insert(all_names.end(), names.begin(), names.end());
  }
  std::vector<std::pair<Op, std::string>> prefix;
  for (auto& n : all_names) prefix.emplace_back(Op::Forall, n);
  return join_prenex(prefix, fold_or(disjuncts));
}

Formula prenex_bc(const Formula& s, const TransformLimits& limits) {
  ClosureDnf dnf = bool_closure_dnf(s, limits);
  bool constant = false;
  auto folded = fold_constants(dnf, constant);
  if (!folded) return constant ? top() : bottom();
  if (folded->size() == 1 && folded->front().size() == 1) {
    const auto& lit = folded->front().front();
    return lit.positive ? lit.sentence : negate_prenex(lit.sentence);
  }

  std::size_t counter = 1;
  std::vector<std::pair<Op, std::string>> prefix;
  std::vector<Formula> disjuncts;
  bool holds_on_empty = false;
  for (const auto& conjunction : *folded) {
    std::vector<Formula> matrices;
    bool conj_on_empty = true;
    for (const auto& lit : conjunction) {
      PrenexParts p = split_prenex(lit.positive ? lit.sentence : negate_prenex(lit.sentence));
      // A prenex sentence with a nonempty prefix holds on ∅ iff it starts with ∀.
      conj_on_empty = conj_on_empty && p.prefix.front().first == Op::Forall;
      std::vector<std::string> names;
      for (const auto& q : p.prefix) {
        names.push_back(fresh(counter));
        prefix.emplace_back(q.first, names.back());
      }
      matrices.push_back(rename_matrix(p, names));
    }
    holds_on_empty = holds_on_empty || conj_on_empty;
    disjuncts.push_back(fold_and(matrices));
  }
  // Pulling quantifiers out of ∧/∨ is order-independent on nonempty teams;
  // the leading quantifier fixes the verdict on the empty team.
  const Op lead = holds_on_empty ? Op::Forall : Op::Exists;
  auto it = std::find_if(prefix.begin(), prefix.end(), [&](const auto& q) { return q.first == lead; });
  if (it == prefix.end()) {
    prefix.insert(prefix.begin(), {lead, fresh(counter)});
  } else {
    std::rotate(prefix.begin(), it, it + 1);
  }
  return join_prenex(prefix, fold_or(disjuncts));
}

Formula teamov_to_pbc(const Formula& phi, const TransformLimits& limits) {
  OvDnf dnf = to_ov_dnf(phi, limits);
  std::vector<Formula> parts;
  for (const auto& a : dnf.disjuncts) parts.push_back(forall("pi", hyperify(a, "pi")));
  return fold_or(parts);
}

Formula pbc_to_teamov(const Formula& s, const TransformLimits& limits) {
  require_sentence(s);
  if (!classify(s).contains(FragmentTag::PBCForallOne)) {
    throw FragmentError("not a positive Boolean combination of one-variable ∀-sentences");
  }
  ClosureDnf dnf = bool_closure_dnf(s, limits);
  std::vector<Formula> disjuncts;
  for (const auto& conjunction : dnf) {
    std::vector<Formula> parts;
    for (const auto& lit : conjunction) {
      PrenexParts p = split_prenex(lit.sentence);
      parts.push_back(dehyperify(p.matrix, p.prefix.front().second));
    }
    disjuncts.push_back(fold_and(parts));
  }
  return fold_ovor(disjuncts);
}

Formula leftdc_to_bc(const Formula& phi, bool forall_only, const TransformLimits& limits) {
  QuasiFlat qf = to_quasi_flat(phi, limits);
  std::vector<Formula> disjuncts;
  for (const auto& c : qf.conjuncts) {
    std::vector<Formula> parts;
    if (!(c.alpha.is(Op::True) && !c.betas.empty())) parts.push_back(forall("pi", hyperify(c.alpha, "pi")));
    for (const auto& b : c.betas) {
      parts.push_back(forall_only ? negation(forall("pi", hyperify(dual(b), "pi")))
                                  : exists("pi", hyperify(b, "pi")));
    }
    disjuncts.push_back(fold_and(parts));
  }
  return fold_or(disjuncts);
}

Formula bc_to_leftdc(const Formula& s, const TransformLimits& limits) {
  require_sentence(s);
  if (!classify(s).contains(FragmentTag::BCQOne)) {
    throw FragmentError("not a Boolean combination of one-variable sentences");
  }
  ClosureDnf dnf = bool_closure_dnf(s, limits);
  std::vector<Formula> disjuncts;
  for (const auto& conjunction : dnf) {
    std::vector<Formula> alphas;
    std::vector<Formula> exists_parts;
    for (const auto& lit : conjunction) {
      PrenexParts p = split_prenex(lit.positive ? lit.sentence : negate_prenex(lit.sentence));
      Formula ltl = dehyperify(p.matrix, p.prefix.front().second);
      if (p.prefix.front().first == Op::Forall) {
        alphas.push_back(ltl);
      } else {
        exists_parts.push_back(sim(dual(ltl)));
      }
    }
    Formula acc = conj_all(alphas);
    for (const auto& e : exists_parts) acc = conj_simplified(acc, e);
    disjuncts.push_back(acc);
  }
  return fold_ovor(disjuncts);
}

Formula rename_variables(const Formula& f, const std::function<std::string(const std::string&)>& map) {
  if (f.is(Op::Atom) && !f.var().empty()) return hyper_atom(f.prop(), map(f.var()));
  std::vector<Formula> kids;
  for (const auto& c : f.children()) kids.push_back(rename_variables(c, map));
  std::string var = (f.is(Op::Forall) || f.is(Op::Exists)) ? map(f.var()) : f.var();
  return Formula::make(f.op(), f.prop(), std::move(var), std::move(kids));
}

}  // namespace teamhyper
