#include "teamhyper/formula.hpp"

#include <algorithm>
#include <functional>

#include "teamhyper/errors.hpp"

namespace teamhyper {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t arity(Op op) {
  switch (op) {
    case Op::True:
    case Op::False:
    case Op::Atom:
    case Op::NegAtom:
      return 0;
    case Op::Sim:
    case Op::Not:
    case Op::Next:
    case Op::Globally:
    case Op::Forall:
    case Op::Exists:
      return 1;
    case Op::And:
    case Op::Or:
    case Op::OvOr:
    case Op::Until:
    case Op::Release:
      return 2;
  }
  return 0;
}

}  // namespace

Formula::Formula() : Formula(make(Op::True, {}, {}, {})) {}

Formula Formula::make(Op op, std::string prop, std::string var, std::vector<Formula> children) {
  if (children.size() != arity(op)) {
    throw InvalidArgument("wrong number of children for formula node");
  }
  auto node = std::make_shared<detail::Node>();
  node->op = op;
  node->prop = std::move(prop);
  node->var = std::move(var);
  node->children = std::move(children);
  std::size_t h = mix(0, static_cast<std::size_t>(op));
  h = mix(h, std::hash<std::string>{}(node->prop));
  h = mix(h, std::hash<std::string>{}(node->var));
  for (const auto& c : node->children) {
    h = mix(h, c.hash());
    node->depth = std::max(node->depth, c.depth() + 1);
    node->size += c.size();
  }
  node->hash = h;
  return Formula(std::move(node));
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.id() == b.id()) return true;
  if (a.hash() != b.hash() || a.op() != b.op() || a.prop() != b.prop() || a.var() != b.var()) {
    return false;
  }
  auto ac = a.children();
  auto bc = b.children();
  return std::equal(ac.begin(), ac.end(), bc.begin(), bc.end());
}

bool structurally_less(const Formula& a, const Formula& b) {
  if (a.id() == b.id()) return false;
  if (a.op() != b.op()) return a.op() < b.op();
  if (a.prop() != b.prop()) return a.prop() < b.prop();
  if (a.var() != b.var()) return a.var() < b.var();
  for (std::size_t i = 0; i < a.children().size(); ++i) {
    if (structurally_less(a.child(i), b.child(i))) return true;
    if (structurally_less(b.child(i), a.child(i))) return false;
  }
  return false;
}

Formula top() {
  static const Formula t = Formula::make(Op::True, {}, {}, {});
  return t;
}
Formula bottom() {
  static const Formula f = Formula::make(Op::False, {}, {}, {});
  return f;
}
Formula atom(std::string prop) {
  if (prop.empty()) throw InvalidArgument("empty proposition name");
  return Formula::make(Op::Atom, std::move(prop), {}, {});
}
Formula neg_atom(std::string prop) {
  if (prop.empty()) throw InvalidArgument("empty proposition name");
  return Formula::make(Op::NegAtom, std::move(prop), {}, {});
}
Formula hyper_atom(std::string prop, std::string var) {
  if (prop.empty() || var.empty()) throw InvalidArgument("hyper atom needs a proposition and a variable");
  return Formula::make(Op::Atom, std::move(prop), std::move(var), {});
}
Formula conj(Formula a, Formula b) { return Formula::make(Op::And, {}, {}, {std::move(a), std::move(b)}); }
Formula disj(Formula a, Formula b) { return Formula::make(Op::Or, {}, {}, {std::move(a), std::move(b)}); }
Formula ovor(Formula a, Formula b) { return Formula::make(Op::OvOr, {}, {}, {std::move(a), std::move(b)}); }
Formula sim(Formula a) { return Formula::make(Op::Sim, {}, {}, {std::move(a)}); }
Formula negation(Formula a) { return Formula::make(Op::Not, {}, {}, {std::move(a)}); }
Formula next(Formula a) { return Formula::make(Op::Next, {}, {}, {std::move(a)}); }
Formula globally(Formula a) { return Formula::make(Op::Globally, {}, {}, {std::move(a)}); }
Formula eventually(Formula a) { return until(top(), std::move(a)); }
Formula until(Formula a, Formula b) { return Formula::make(Op::Until, {}, {}, {std::move(a), std::move(b)}); }
Formula release(Formula a, Formula b) {
  return Formula::make(Op::Release, {}, {}, {std::move(a), std::move(b)});
}
Formula hyper_globally(Formula a) { return negation(until(top(), negation(std::move(a)))); }
Formula forall(std::string var, Formula body) {
  if (var.empty()) throw InvalidArgument("empty trace variable");
  return Formula::make(Op::Forall, {}, std::move(var), {std::move(body)});
}
Formula exists(std::string var, Formula body) {
  if (var.empty()) throw InvalidArgument("empty trace variable");
  return Formula::make(Op::Exists, {}, std::move(var), {std::move(body)});
}

Formula conj_simplified(Formula a, Formula b) {
  if (a.is(Op::True)) return b;
  if (b.is(Op::True)) return a;
  return conj(std::move(a), std::move(b));
}

Formula conj_all(std::span<const Formula> parts) {
  Formula acc = top();
  for (const auto& p : parts) acc = conj_simplified(acc, p);
  return acc;
}

// ---------------------------------------------------------------------------
// Fragment classification

std::string_view to_string(FragmentTag tag) {
  switch (tag) {
    case FragmentTag::LTL: return "LTL";
    case FragmentTag::TeamOv: return "TeamOv";
    case FragmentTag::TeamLeftDcSim: return "TeamLeftDcSim";
    case FragmentTag::TeamSim: return "TeamSim";
    case FragmentTag::HyperQF: return "HyperQF";
    case FragmentTag::ForallOne: return "ForallOne";
    case FragmentTag::QOne: return "QOne";
    case FragmentTag::ForallStar: return "ForallStar";
    case FragmentTag::PBCForallOne: return "PBCForallOne";
    case FragmentTag::BCQOne: return "BCQOne";
    case FragmentTag::BCHyper: return "BCHyper";
  }
  return "?";
}

std::vector<FragmentTag> Fragments::tags() const {
  std::vector<FragmentTag> out;
  for (unsigned i = 0; i <= static_cast<unsigned>(FragmentTag::BCHyper); ++i) {
    if (contains(static_cast<FragmentTag>(i))) out.push_back(static_cast<FragmentTag>(i));
  }
  return out;
}

namespace {

bool is_hyper_node(const Formula& f) {
  return f.is(Op::Not) || f.is(Op::Forall) || f.is(Op::Exists) || (f.is(Op::Atom) && !f.var().empty());
}

bool any_node(const Formula& f, const std::function<bool(const Formula&)>& pred) {
  if (pred(f)) return true;
  for (const auto& c : f.children()) {
    if (any_node(c, pred)) return true;
  }
  return false;
}

// Team-tree fragment levels: 0 = LTL, 1 = TeamOv, 2 = left-dc, 3 = full ~, -1 = not a team tree.
int team_level(const Formula& f) {
  switch (f.op()) {
    case Op::True:
    case Op::False:
    case Op::NegAtom:
      return 0;
    case Op::Atom:
      return f.var().empty() ? 0 : -1;
    case Op::Not:
    case Op::Forall:
    case Op::Exists:
      return -1;
    case Op::Release: {
      // Release only has a per-trace reading, so both sides must be LTL.
      int a = team_level(f.lhs());
      int b = team_level(f.rhs());
      return (a == 0 && b == 0) ? 0 : -1;
    }
    case Op::Sim: {
      int a = team_level(f.child(0));
      return a < 0 ? -1 : std::max(a, 2);
    }
    case Op::Globally: {
      int a = team_level(f.child(0));
      if (a < 0) return -1;
      return a <= 1 ? a : 3;
    }
    case Op::Until: {
      int a = team_level(f.lhs());
      int b = team_level(f.rhs());
      if (a < 0 || b < 0) return -1;
      if (a >= 2) return 3;
      return std::max(a, b);
    }
    case Op::OvOr: {
      int a = team_level(f.lhs());
      int b = team_level(f.rhs());
      if (a < 0 || b < 0) return -1;
      return std::max({a, b, 1});
    }
    case Op::Next:
    case Op::And:
    case Op::Or: {
      int lvl = 0;
      for (const auto& c : f.children()) {
        int l = team_level(c);
        if (l < 0) return -1;
        lvl = std::max(lvl, l);
      }
      return lvl;
    }
  }
  return -1;
}

bool quantifier_free(const Formula& f) {
  return !any_node(f, [](const Formula& n) { return n.is(Op::Forall) || n.is(Op::Exists); });
}

bool matrix_node_ok(const Formula& f) {
  // Quantifier-free and built from the HyperLTL matrix connectives.
  return !any_node(f, [](const Formula& n) {
    switch (n.op()) {
      case Op::Forall:
      case Op::Exists:
      case Op::OvOr:
      case Op::Sim:
        return true;
      default:
        return false;
    }
  });
}

struct Prenex {
  bool ok = false;
  std::size_t quantifiers = 0;
  bool all_forall = true;
};

Prenex prenex_shape(const Formula& f) {
  Prenex p;
  const Formula* cur = &f;
  while (cur->is(Op::Forall) || cur->is(Op::Exists)) {
    ++p.quantifiers;
    if (cur->is(Op::Exists)) p.all_forall = false;
    cur = &cur->child(0);
  }
  p.ok = matrix_node_ok(*cur);
  return p;
}

// Boolean closure over prenex sentences; `literal` decides which prenex
// sentences are admissible, `allow_not` whether closure-level ! is.
bool closure_of(const Formula& f, const std::function<bool(const Prenex&)>& literal, bool allow_not) {
  switch (f.op()) {
    case Op::And:
    case Op::Or:
      if (!quantifier_free(f)) {
        return closure_of(f.lhs(), literal, allow_not) && closure_of(f.rhs(), literal, allow_not);
      }
      break;
    case Op::Not:
      if (!quantifier_free(f)) return allow_not && closure_of(f.child(0), literal, allow_not);
      break;
    default:
      break;
  }
  Prenex p = prenex_shape(f);
  return p.ok && literal(p);
}

bool well_formed_sentence_level(const Formula& f) {
  // Closure level: And/Or/Not over prenex sentences; no quantifier below a
  // temporal operator or inside a matrix.
  if (f.is(Op::And) || f.is(Op::Or)) {
    return well_formed_sentence_level(f.lhs()) && well_formed_sentence_level(f.rhs());
  }
  if (f.is(Op::Not) && !quantifier_free(f)) return well_formed_sentence_level(f.child(0));
  return prenex_shape(f).ok;
}

void collect_free(const Formula& f, std::vector<std::string>& bound, std::set<std::string>& out) {
  if (f.is(Op::Atom) && !f.var().empty()) {
    if (std::find(bound.begin(), bound.end(), f.var()) == bound.end()) out.insert(f.var());
    return;
  }
  if (f.is(Op::Forall) || f.is(Op::Exists)) {
    bound.push_back(f.var());
    collect_free(f.child(0), bound, out);
    bound.pop_back();
    return;
  }
  for (const auto& c : f.children()) collect_free(c, bound, out);
}

}  // namespace

bool is_team(const Formula& f) { return team_level(f) >= 0; }
bool is_ltl(const Formula& f) { return team_level(f) == 0; }
bool is_team_ov(const Formula& f) {
  int l = team_level(f);
  return l >= 0 && l <= 1;
}
bool is_left_dc(const Formula& f) {
  int l = team_level(f);
  return l >= 0 && l <= 2;
}

bool has_quantifier(const Formula& f) { return !quantifier_free(f); }

std::set<std::string> free_variables(const Formula& f) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  collect_free(f, bound, out);
  return out;
}

std::set<std::string> atom_variables(const Formula& f) {
  std::set<std::string> out;
  std::function<void(const Formula&)> walk = [&](const Formula& n) {
    if (n.is(Op::Atom) && !n.var().empty()) out.insert(n.var());
    for (const auto& c : n.children()) walk(c);
  };
  walk(f);
  return out;
}

Fragments classify(const Formula& f) {
  Fragments tags;
  int lvl = team_level(f);
  if (lvl >= 0) {
    if (lvl == 0) {
      tags.insert(FragmentTag::LTL);
      tags.insert(FragmentTag::HyperQF);
    }
    if (lvl <= 1) tags.insert(FragmentTag::TeamOv);
    if (lvl <= 2) tags.insert(FragmentTag::TeamLeftDcSim);
    tags.insert(FragmentTag::TeamSim);
  }
  bool hyper = any_node(f, is_hyper_node);
  if (!hyper) return tags;
  if (matrix_node_ok(f)) tags.insert(FragmentTag::HyperQF);
  if (!free_variables(f).empty() || !well_formed_sentence_level(f)) return tags;

  Prenex p = prenex_shape(f);
  if (p.ok) {
    if (p.all_forall) tags.insert(FragmentTag::ForallStar);
    if (p.quantifiers == 1) {
      tags.insert(FragmentTag::QOne);
      if (p.all_forall) tags.insert(FragmentTag::ForallOne);
    }
  }
  auto forall_one = [](const Prenex& q) { return q.quantifiers == 1 && q.all_forall; };
  auto q_one = [](const Prenex& q) { return q.quantifiers == 1; };
  if (closure_of(f, forall_one, false)) tags.insert(FragmentTag::PBCForallOne);
  if (closure_of(f, q_one, true)) tags.insert(FragmentTag::BCQOne);
  tags.insert(FragmentTag::BCHyper);
  return tags;
}

// ---------------------------------------------------------------------------
// Syntactic maps

Formula dual(const Formula& a) {
  switch (a.op()) {
    case Op::True: return bottom();
    case Op::False: return top();
    case Op::Atom:
      if (!a.var().empty()) break;
      return neg_atom(a.prop());
    case Op::NegAtom: return atom(a.prop());
    case Op::And: return disj(dual(a.lhs()), dual(a.rhs()));
    case Op::Or: return conj(dual(a.lhs()), dual(a.rhs()));
    case Op::Next: return next(dual(a.child(0)));
    case Op::Globally: return eventually(dual(a.child(0)));
    case Op::Until:
      if (a.lhs().is(Op::True)) return globally(dual(a.rhs()));
      return release(dual(a.lhs()), dual(a.rhs()));
    case Op::Release: return until(dual(a.lhs()), dual(a.rhs()));
    default: break;
  }
  throw FragmentError("dual is only defined for LTL formulas");
}

Formula hyperify(const Formula& a, std::string_view var) {
  const std::string v(var);
  switch (a.op()) {
    case Op::True:
    case Op::False:
      return a;
    case Op::Atom:
      if (!a.var().empty()) break;
      return hyper_atom(a.prop(), v);
    case Op::NegAtom: return negation(hyper_atom(a.prop(), v));
    case Op::And: return conj(hyperify(a.lhs(), v), hyperify(a.rhs(), v));
    case Op::Or: return disj(hyperify(a.lhs(), v), hyperify(a.rhs(), v));
    case Op::Next: return next(hyperify(a.child(0), v));
    case Op::Globally: return hyper_globally(hyperify(a.child(0), v));
    case Op::Until: return until(hyperify(a.lhs(), v), hyperify(a.rhs(), v));
    case Op::Release:
      return negation(until(negation(hyperify(a.lhs(), v)), negation(hyperify(a.rhs(), v))));
    default: break;
  }
  throw FragmentError("hyperify is only defined for LTL formulas");
}

Formula matrix_to_ltl(const Formula& m,
                      const std::function<std::string(const std::string&, const std::string&)>& rename) {
  std::function<Formula(const Formula&, bool)> go = [&](const Formula& f, bool neg) -> Formula {
    switch (f.op()) {
      case Op::True: return neg ? bottom() : top();
      case Op::False: return neg ? top() : bottom();
      case Op::Atom: {
        std::string p = rename(f.prop(), f.var());
        return neg ? neg_atom(std::move(p)) : atom(std::move(p));
      }
      case Op::NegAtom: {
        std::string p = rename(f.prop(), f.var());
        return neg ? atom(std::move(p)) : neg_atom(std::move(p));
      }
      case Op::Not: return go(f.child(0), !neg);
      case Op::And:
        return neg ? disj(go(f.lhs(), true), go(f.rhs(), true)) : conj(go(f.lhs(), false), go(f.rhs(), false));
      case Op::Or:
        return neg ? conj(go(f.lhs(), true), go(f.rhs(), true)) : disj(go(f.lhs(), false), go(f.rhs(), false));
      case Op::Next: return next(go(f.child(0), neg));
      case Op::Globally:
        return neg ? eventually(go(f.child(0), true)) : globally(go(f.child(0), false));
      case Op::Until:
        if (!neg) return until(go(f.lhs(), false), go(f.rhs(), false));
        if (f.lhs().is(Op::True)) return globally(go(f.rhs(), true));
        return release(go(f.lhs(), true), go(f.rhs(), true));
      case Op::Release:
        if (neg) return until(go(f.lhs(), true), go(f.rhs(), true));
        return release(go(f.lhs(), false), go(f.rhs(), false));
      default:
        throw FragmentError("matrix contains a quantifier or team connective");
    }
  };
  return go(m, false);
}

Formula dehyperify(const Formula& m, std::string_view var) {
  return matrix_to_ltl(m, [var](const std::string& prop, const std::string& v) {
    if (v != var) {
      throw InvalidArgument("matrix mentions trace variable '" + v + "' besides '" + std::string(var) + "'");
    }
    return prop;
  });
}

Formula push_negation(const Formula& m) {
  std::function<Formula(const Formula&, bool)> go = [&](const Formula& f, bool neg) -> Formula {
    switch (f.op()) {
      case Op::True: return neg ? bottom() : top();
      case Op::False: return neg ? top() : bottom();
      case Op::Not: return go(f.child(0), !neg);
      case Op::And:
        return neg ? disj(go(f.lhs(), true), go(f.rhs(), true)) : conj(go(f.lhs(), false), go(f.rhs(), false));
      case Op::Or:
        return neg ? conj(go(f.lhs(), true), go(f.rhs(), true)) : disj(go(f.lhs(), false), go(f.rhs(), false));
      case Op::Next: return next(go(f.child(0), neg));
      case Op::Until: {
        Formula u = until(go(f.lhs(), false), go(f.rhs(), false));
        return neg ? negation(u) : u;
      }
      case Op::Atom: return neg ? negation(f) : f;
      default:
        throw FragmentError("push_negation expects a quantifier-free HyperLTL matrix");
    }
  };
  return go(m, false);
}

}  // namespace teamhyper
