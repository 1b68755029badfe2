#include "teamhyper/eval_classic.hpp"

#include <algorithm>
#include <unordered_map>

#include "teamhyper/errors.hpp"

namespace teamhyper {

namespace {

using Column = std::vector<char>;

class PositionTable {
 public:
  PositionTable(std::span<const Letter> stem, std::span<const Letter> loop) : stem_(stem), loop_(loop) {
    if (loop.empty()) throw InvalidArgument("empty loop");
    n_ = stem.size() + loop.size();
  }

  const Column& column(const Formula& f) {
    if (auto it = memo_.find(f.id()); it != memo_.end()) return it->second;
    Column c = compute(f);
    return memo_.emplace(f.id(), std::move(c)).first->second;
  }

 private:
  std::size_t succ(std::size_t k) const { return k + 1 < n_ ? k + 1 : stem_.size(); }

  const Letter& letter(std::size_t k) const { return k < stem_.size() ? stem_[k] : loop_[k - stem_.size()]; }

  static Column negate(Column c) {
    for (auto& v : c) v = !v;
    return c;
  }

  // Least fixpoint of  res = b | (a & X res)  on the lasso.
  Column until_table(const Column& a, const Column& b) const {
    Column res = b;
    const std::size_t s = stem_.size();
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = n_; k-- > s;) res[k] = b[k] || (a[k] && res[succ(k)]);
    }
    for (std::size_t k = s; k-- > 0;) res[k] = b[k] || (a[k] && res[k + 1]);
    return res;
  }

  Column compute(const Formula& f) {
    Column out(n_, 0);
    switch (f.op()) {
      case Op::True: std::fill(out.begin(), out.end(), 1); return out;
      case Op::False: return out;
      case Op::Atom:
      case Op::NegAtom: {
        if (!f.var().empty()) break;
        const bool positive = f.is(Op::Atom);
        for (std::size_t k = 0; k < n_; ++k) {
          const Letter& l = letter(k);
          out[k] = std::binary_search(l.begin(), l.end(), f.prop()) == positive;
        }
        return out;
      }
      case Op::And:
      case Op::Or: {
        const Column a = column(f.lhs());
        const Column& b = column(f.rhs());
        for (std::size_t k = 0; k < n_; ++k) out[k] = f.is(Op::And) ? (a[k] && b[k]) : (a[k] || b[k]);
        return out;
      }
      case Op::Next: {
        const Column& a = column(f.child(0));
        for (std::size_t k = 0; k < n_; ++k) out[k] = a[succ(k)];
        return out;
      }
      case Op::Until: {
        const Column a = column(f.lhs());
        return until_table(a, column(f.rhs()));
      }
      case Op::Release: {
        const Column a = negate(column(f.lhs()));
        return negate(until_table(a, negate(column(f.rhs()))));
      }
      case Op::Globally: {
        const Column ones(n_, 1);
        return negate(until_table(ones, negate(column(f.child(0)))));
      }
      default: break;
    }
    throw FragmentError("eval_ltl: formula contains a team-only or hyper node");
  }

  std::span<const Letter> stem_;
  std::span<const Letter> loop_;
  std::size_t n_ = 0;
  std::unordered_map<const detail::Node*, Column> memo_;
};

class HyperEvaluator {
 public:
  explicit HyperEvaluator(const Team& team) : traces_(team.begin(), team.end()) {}

  bool eval(const Formula& f) {
    switch (f.op()) {
      case Op::Forall:
      case Op::Exists: {
        const bool universal = f.is(Op::Forall);
        for (const auto& t : traces_) {
          assignment_[f.var()] = t;
          const bool v = eval(f.child(0));
          assignment_.erase(f.var());
          if (v != universal) return !universal;
        }
        return universal;
      }
      case Op::And:
      case Op::Or:
      case Op::Not:
        if (quantified(f)) {
          if (f.is(Op::Not)) return !eval(f.child(0));
          const bool l = eval(f.lhs());
          if (f.is(Op::And)) return l && eval(f.rhs());
          return l || eval(f.rhs());
        }
        break;
      default: break;
    }
    return eval_matrix(f);
  }

 private:
  bool quantified(const Formula& f) {
    auto it = quantified_.find(f.id());
    if (it != quantified_.end()) return it->second;
    return quantified_[f.id()] = has_quantifier(f);
  }

  struct Converted {
    Formula ltl;
    std::set<std::string> vars;
  };

  const Converted& converted(const Formula& m) {
    auto it = converted_.find(m.id());
    if (it != converted_.end()) return it->second;
    Converted c{matrix_to_ltl(m,
                              [](const std::string& p, const std::string& v) {
                                if (v.empty()) throw FragmentError("HyperLTL atom '" + p + "' has no trace variable");
                                return product_atom(p, v);
                              }),
                atom_variables(m)};
    return converted_.emplace(m.id(), std::move(c)).first->second;
  }

  bool eval_matrix(const Formula& m) {
    const Converted& c = converted(m);
    if (c.vars.empty()) return eval_ltl(LassoTrace(), c.ltl);
    TraceAssignment restricted;
    for (const auto& v : c.vars) {
      auto it = assignment_.find(v);
      if (it == assignment_.end()) throw InvalidArgument("free trace variable '" + v + "'");
      restricted.emplace(v, it->second);
    }
    return eval_ltl(product(restricted), c.ltl);
  }

  std::vector<LassoTrace> traces_;
  TraceAssignment assignment_;
  std::unordered_map<const detail::Node*, bool> quantified_;
  std::unordered_map<const detail::Node*, Converted> converted_;
};

}  // namespace

bool eval_ltl(std::span<const Letter> stem, std::span<const Letter> loop, const Formula& ltl) {
  PositionTable table(stem, loop);
  return table.column(ltl)[0] != 0;
}

bool eval_ltl(const LassoTrace& t, const Formula& ltl) { return eval_ltl(t.stem(), t.loop(), ltl); }

std::vector<bool> ltl_positions(const LassoTrace& t, const Formula& ltl) {
  PositionTable table(t.stem(), t.loop());
  const auto& c = table.column(ltl);
  return {c.begin(), c.end()};
}

bool eval_hyper(const Team& team, const Formula& sentence) {
  if (auto free = free_variables(sentence); !free.empty()) {
    throw InvalidArgument("free trace variable '" + *free.begin() + "'");
  }
  if (!classify(sentence).contains(FragmentTag::BCHyper) && !classify(sentence).contains(FragmentTag::HyperQF)) {
    throw FragmentError("not a HyperLTL sentence or Boolean combination of sentences");
  }
  return HyperEvaluator(team).eval(sentence);
}

}  // namespace teamhyper
