#include "teamhyper/harness.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "teamhyper/errors.hpp"
#include "teamhyper/eval_classic.hpp"
#include "teamhyper/syntax.hpp"

namespace teamhyper {

// ---------------------------------------------------------------------------
// Rng

std::uint64_t Rng::substream(std::uint64_t seed, std::uint64_t index) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(seed ^ mix(index));
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("Rng::below(0)");
  // Reject the incomplete top block so every residue is equally likely.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return x % n;
}

std::size_t Rng::weighted(const std::vector<unsigned>& weights) {
  std::uint64_t total = 0;
  for (unsigned w : weights) total += w;
  if (total == 0) throw InvalidArgument("all weights are zero");
  std::uint64_t x = below(total);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (x < weights[i]) return i;
    x -= weights[i];
  }
  return weights.size() - 1;
}

// ---------------------------------------------------------------------------
// Names

std::string_view to_string(Connective c) {
  switch (c) {
    case Connective::And: return "and";
    case Connective::Or: return "or";
    case Connective::OvOr: return "ovor";
    case Connective::Sim: return "sim";
    case Connective::Next: return "next";
    case Connective::Globally: return "globally";
    case Connective::Until: return "until";
    case Connective::Eventually: return "eventually";
  }
  return "?";
}

std::string_view to_string(GenKind k) {
  switch (k) {
    case GenKind::Ltl: return "ltl";
    case GenKind::TeamOv: return "teamov";
    case GenKind::LeftDc: return "leftdc";
    case GenKind::HyperPbc: return "hyper-pbc";
    case GenKind::HyperBc: return "hyper-bc";
    case GenKind::TeamOfTraces: return "team-of-traces";
  }
  return "?";
}

std::optional<GenKind> parse_gen_kind(std::string_view s) {
  for (auto k : {GenKind::Ltl, GenKind::TeamOv, GenKind::LeftDc, GenKind::HyperPbc, GenKind::HyperBc,
                 GenKind::TeamOfTraces}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

std::string_view to_string(Suite s) {
  switch (s) {
    case Suite::ThmOv: return "thm-ov";
    case Suite::ThmLeftDc: return "thm-leftdc";
    case Suite::Flatness: return "flatness";
    case Suite::Downward: return "downward";
    case Suite::OracleNf: return "oracle-nf";
    case Suite::Prenex: return "prenex";
    case Suite::Hyperify: return "hyperify";
    case Suite::NegDual: return "negdual";
  }
  return "?";
}

const std::vector<Suite>& all_suites() {
  static const std::vector<Suite> suites = {Suite::ThmOv,    Suite::ThmLeftDc, Suite::Flatness, Suite::Downward,
                                            Suite::OracleNf, Suite::Prenex,    Suite::Hyperify, Suite::NegDual};
  return suites;
}

std::optional<Suite> parse_suite(std::string_view s) {
  for (auto suite : all_suites()) {
    if (to_string(suite) == s) return suite;
  }
  return std::nullopt;
}

std::vector<std::string> GenConfig::props() const {
  static const std::vector<std::string> names = {"p", "q", "r", "s", "u", "v", "w"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < ap_size; ++i) {
    out.push_back(i < names.size() ? names[i] : "a" + std::to_string(i));
  }
  return out;
}

void validate(const GenConfig& cfg) {
  if (cfg.max_team == 0 || cfg.max_stem == 0 || cfg.max_period == 0 || cfg.max_depth < 1 || cfg.ap_size == 0 ||
      cfg.max_block == 0 || cfg.max_literals == 0) {
    throw InvalidArgument("generator bounds must be at least 1");
  }
  if (cfg.leaf_permille > 1000) throw InvalidArgument("leaf_permille must be at most 1000");
}

// ---------------------------------------------------------------------------
// Generators

namespace {

const std::vector<Connective> kLtlSet = {Connective::And, Connective::Or, Connective::Next, Connective::Globally,
                                         Connective::Until, Connective::Eventually};
const std::vector<Connective> kOvSet = {Connective::And,      Connective::Or,    Connective::OvOr,
                                        Connective::Next,     Connective::Globally, Connective::Until,
                                        Connective::Eventually};
const std::vector<Connective> kLeftDcSet = {Connective::And,      Connective::Or,    Connective::OvOr,
                                            Connective::Sim,      Connective::Next,  Connective::Globally,
                                            Connective::Until,    Connective::Eventually};

class FormulaGen {
 public:
  FormulaGen(const GenConfig& cfg, Rng& rng) : cfg_(cfg), rng_(rng), props_(cfg.props()) {}

  Formula team_tree(int depth, const std::vector<Connective>& set) {
    if (depth <= 1 || rng_.chance(cfg_.leaf_permille, 1000)) return leaf();
    const Connective c = pick(set);
    // Positions under G and left of U must stay downward closed.
    const auto& inner = (&set == &kLeftDcSet) ? kOvSet : set;
    switch (c) {
      case Connective::And: return conj(team_tree(depth - 1, set), team_tree(depth - 1, set));
      case Connective::Or: return disj(team_tree(depth - 1, set), team_tree(depth - 1, set));
      case Connective::OvOr: return ovor(team_tree(depth - 1, set), team_tree(depth - 1, set));
      case Connective::Sim: return sim(team_tree(depth - 1, set));
      case Connective::Next: return next(team_tree(depth - 1, set));
      case Connective::Globally: return globally(team_tree(depth - 1, inner));
      case Connective::Until: return until(team_tree(depth - 1, inner), team_tree(depth - 1, set));
      case Connective::Eventually: return eventually(team_tree(depth - 1, set));
    }
    return leaf();
  }

  Formula matrix(int depth, const std::vector<std::string>& vars) {
    if (depth <= 1 || rng_.chance(cfg_.leaf_permille, 1000)) {
      Formula a = hyper_atom(prop(), vars[rng_.below(vars.size())]);
      return rng_.chance(1, 2) ? negation(a) : a;
    }
    switch (pick(kLeftDcSet)) {
      case Connective::And: return conj(matrix(depth - 1, vars), matrix(depth - 1, vars));
      case Connective::Or:
      case Connective::OvOr: return disj(matrix(depth - 1, vars), matrix(depth - 1, vars));
      case Connective::Sim: return negation(matrix(depth - 1, vars));
      case Connective::Next: return next(matrix(depth - 1, vars));
      case Connective::Globally: return hyper_globally(matrix(depth - 1, vars));
      case Connective::Until: return until(matrix(depth - 1, vars), matrix(depth - 1, vars));
      case Connective::Eventually: return eventually(matrix(depth - 1, vars));
    }
    return top();
  }

  Formula prenex(bool allow_exists) {
    static const std::vector<std::string> names = {"pi", "rho", "tau", "sigma", "mu", "nu"};
    const std::size_t k = 1 + rng_.below(std::min(cfg_.max_block, names.size()));
    std::vector<std::string> vars(names.begin(), names.begin() + static_cast<std::ptrdiff_t>(k));
    Formula body = matrix(std::max(1, cfg_.max_depth - 1), vars);
    for (std::size_t i = k; i-- > 0;) {
      body = (allow_exists && rng_.chance(1, 2)) ? exists(vars[i], body) : forall(vars[i], body);
    }
    return body;
  }

  Formula closure(bool boolean) {
    const std::size_t n = 1 + rng_.below(cfg_.max_literals);
    std::vector<Formula> parts;
    for (std::size_t i = 0; i < n; ++i) {
      Formula lit = prenex(boolean);
      parts.push_back(boolean && rng_.chance(1, 3) ? negation(lit) : lit);
    }
    while (parts.size() > 1) {
      const std::size_t i = rng_.below(parts.size() - 1);
      Formula c = rng_.chance(1, 2) ? conj(parts[i], parts[i + 1]) : disj(parts[i], parts[i + 1]);
      if (boolean && rng_.chance(1, 4)) c = negation(c);
      parts[i] = c;
      parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    }
    return parts.front();
  }

 private:
  Connective pick(const std::vector<Connective>& set) {
    std::vector<unsigned> w;
    for (auto c : set) {
      auto it = cfg_.weights.find(c);
      w.push_back(it == cfg_.weights.end() ? 0 : it->second);
    }
    return set[rng_.weighted(w)];
  }

  const std::string& prop() { return props_[rng_.below(props_.size())]; }

  Formula leaf() {
    const auto r = rng_.below(20);
    if (r == 0) return top();
    if (r == 1) return bottom();
    return r % 2 == 0 ? atom(prop()) : neg_atom(prop());
  }

  const GenConfig& cfg_;
  Rng& rng_;
  std::vector<std::string> props_;
};

bool in_kind(GenKind kind, const Formula& f) {
  const Fragments tags = classify(f);
  switch (kind) {
    case GenKind::Ltl: return tags.contains(FragmentTag::LTL);
    case GenKind::TeamOv: return tags.contains(FragmentTag::TeamOv);
    case GenKind::LeftDc: return tags.contains(FragmentTag::TeamLeftDcSim);
    case GenKind::HyperPbc:
    case GenKind::HyperBc: return tags.contains(FragmentTag::BCHyper);
    case GenKind::TeamOfTraces: return false;
  }
  return false;
}

}  // namespace

Formula gen_formula(GenKind kind, const GenConfig& cfg, Rng& rng) {
  validate(cfg);
  FormulaGen g(cfg, rng);
  Formula f;
  switch (kind) {
    case GenKind::Ltl: f = g.team_tree(cfg.max_depth, kLtlSet); break;
    case GenKind::TeamOv: f = g.team_tree(cfg.max_depth, kOvSet); break;
    case GenKind::LeftDc: f = g.team_tree(cfg.max_depth, kLeftDcSet); break;
    case GenKind::HyperPbc: f = g.closure(false); break;
    case GenKind::HyperBc: f = g.closure(true); break;
    case GenKind::TeamOfTraces: throw InvalidArgument("team-of-traces does not generate a formula");
  }
  if (!in_kind(kind, f)) throw std::logic_error("generator left its fragment");
  return f;
}

LassoTrace gen_trace(const GenConfig& cfg, Rng& rng) {
  const auto props = cfg.props();
  auto letter = [&] {
    std::vector<std::string> l;
    for (const auto& p : props) {
      if (rng.chance(1, 2)) l.push_back(p);
    }
    return make_letter(std::move(l));
  };
  std::vector<Letter> stem(rng.below(cfg.max_stem + 1));
  std::vector<Letter> loop(1 + rng.below(cfg.max_period));
  for (auto& l : stem) l = letter();
  for (auto& l : loop) l = letter();
  return canonicalize(std::move(stem), std::move(loop));
}

Team gen_team(const GenConfig& cfg, Rng& rng) {
  validate(cfg);
  Team team;
  if (rng.chance(1, 10)) return team;
  const std::size_t n = 1 + rng.below(cfg.max_team);
  for (std::size_t i = 0; i < n; ++i) team.insert(gen_trace(cfg, rng));
  return team;
}

GenValue gen_random(GenKind kind, const GenConfig& cfg, std::uint64_t seed) {
  Rng rng(seed);
  if (kind == GenKind::TeamOfTraces) return gen_team(cfg, rng);
  return gen_formula(kind, cfg, rng);
}

// ---------------------------------------------------------------------------
// Suites

namespace {

using Verdicts = std::map<std::string, bool>;

struct Outcome {
  Verdicts verdicts;
  bool ok = true;
  std::string detail;
};

using Checker = std::function<Outcome(const Formula&, const Team&)>;

std::string team_text(const Team& t) {
  std::string out = "[";
  for (const auto& tr : t) {
    if (out.size() > 1) out += ", ";
    out += print_trace(tr);
  }
  return out + "]";
}

bool all_equal(const Verdicts& v) {
  return std::adjacent_find(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.second != b.second; }) ==
         v.end();
}

Outcome equal_outcome(Verdicts v) {
  Outcome o;
  o.ok = all_equal(v);
  o.verdicts = std::move(v);
  return o;
}

std::vector<Formula> formula_shrinks(const Formula& f) {
  std::vector<Formula> out;
  for (const auto& c : f.children()) out.push_back(c);
  for (std::size_t i = 0; i < f.children().size(); ++i) {
    for (const auto& smaller : formula_shrinks(f.child(i))) {
      std::vector<Formula> kids(f.children().begin(), f.children().end());
      kids[i] = smaller;
      out.push_back(Formula::make(f.op(), f.prop(), f.var(), std::move(kids)));
    }
  }
  return out;
}

std::vector<Team> team_shrinks(const Team& team) {
  std::vector<Team> out;
  std::vector<LassoTrace> traces(team.begin(), team.end());
  auto with = [&](std::size_t skip, const std::optional<LassoTrace>& replacement) {
    Team t;
    for (std::size_t i = 0; i < traces.size(); ++i) {
      if (i != skip) t.insert(traces[i]);
    }
    if (replacement) t.insert(*replacement);
    return t;
  };
  for (std::size_t i = 0; i < traces.size(); ++i) out.push_back(with(i, std::nullopt));
  for (std::size_t i = 0; i < traces.size(); ++i) {
    const auto& stem = traces[i].stem();
    const auto& loop = traces[i].loop();
    for (std::size_t k = 0; k < stem.size(); ++k) {
      auto s = stem;
      s.erase(s.begin() + static_cast<std::ptrdiff_t>(k));
      out.push_back(with(i, canonicalize(s, loop)));
    }
    for (std::size_t k = 0; loop.size() > 1 && k < loop.size(); ++k) {
      auto l = loop;
      l.erase(l.begin() + static_cast<std::ptrdiff_t>(k));
      out.push_back(with(i, canonicalize(stem, l)));
    }
    for (std::size_t k = 0; k < stem.size() + loop.size(); ++k) {
      const Letter& letter = k < stem.size() ? stem[k] : loop[k - stem.size()];
      for (std::size_t j = 0; j < letter.size(); ++j) {
        auto s = stem;
        auto l = loop;
        Letter& target = k < stem.size() ? s[k] : l[k - stem.size()];
        target.erase(target.begin() + static_cast<std::ptrdiff_t>(j));
        out.push_back(with(i, canonicalize(s, l)));
      }
    }
  }
  return out;
}

std::optional<Outcome> failing(const Checker& check, const Formula& f, const Team& t) {
  try {
    Outcome o = check(f, t);
    if (!o.ok) return o;
  } catch (const std::exception&) {
    // Candidates outside the suite's fragment are not counterexamples.
  }
  return std::nullopt;
}

/// Greedy: take the first strictly smaller candidate that still fails.
std::tuple<Formula, Team, Outcome> shrink(const Checker& check, Formula f, Team t, Outcome o) {
  for (int round = 0; round < 1000; ++round) {
    bool progressed = false;
    for (const auto& g : formula_shrinks(f)) {
      if (auto r = failing(check, g, t)) {
        f = g;
        o = *r;
        progressed = true;
        break;
      }
    }
    if (progressed) continue;
    for (const auto& s : team_shrinks(t)) {
      if (auto r = failing(check, f, s)) {
        t = s;
        o = *r;
        progressed = true;
        break;
      }
    }
    if (!progressed) break;
  }
  return {f, t, o};
}

constexpr std::size_t kMaxPrenexDisjuncts = 3;

void check_oracle_bounds(const GenConfig& cfg) {
  if (cfg.max_team > cfg.oracle.max_team || cfg.max_stem + cfg.max_period > cfg.oracle.max_lasso ||
      cfg.max_depth > cfg.oracle.max_depth) {
    throw LimitError("generator bounds exceed the oracle limits");
  }
}

}  // namespace

DiffReport run_suite(Suite suite, const GenConfig& cfg, std::size_t cases, std::uint64_t seed) {
  validate(cfg);
  const bool oracle_suite = suite == Suite::Flatness || suite == Suite::Downward || suite == Suite::OracleNf;
  if (oracle_suite) check_oracle_bounds(cfg);
  const auto started = std::chrono::steady_clock::now();

  const TransformLimits& tl = cfg.transform;
  auto nf = [&](const Team& t, const Formula& f) { return eval_team_nf(t, f, tl); };

  GenKind kind = GenKind::Ltl;
  Checker check;
  switch (suite) {
    case Suite::ThmOv:
      kind = GenKind::TeamOv;
      check = [&](const Formula& f, const Team& t) {
        const Formula s = teamov_to_pbc(f, tl);
        Verdicts v{{"nf", nf(t, f)}, {"hyper", eval_hyper(t, s)}, {"roundtrip", nf(t, pbc_to_teamov(s, tl))}};
        // The prenex form quantifies once per disjunct; keep evaluation cheap.
        if (to_ov_dnf(f, tl).disjuncts.size() <= kMaxPrenexDisjuncts) v["prenex"] = eval_hyper(t, prenex_pbc(s, tl));
        return equal_outcome(std::move(v));
      };
      break;
    case Suite::ThmLeftDc:
      kind = GenKind::LeftDc;
      check = [&](const Formula& f, const Team& t) {
        const Formula e = leftdc_to_bc(f, false, tl);
        const Formula a = leftdc_to_bc(f, true, tl);
        return equal_outcome({{"nf", nf(t, f)},
                              {"hyper_exists", eval_hyper(t, e)},
                              {"hyper_forall_only", eval_hyper(t, a)},
                              {"roundtrip", nf(t, bc_to_leftdc(e, tl))},
                              {"roundtrip_forall_only", nf(t, bc_to_leftdc(a, tl))}});
      };
      break;
    case Suite::Flatness:
      kind = GenKind::Ltl;
      check = [&](const Formula& f, const Team& t) {
        const bool flat = std::all_of(t.begin(), t.end(), [&](const LassoTrace& x) { return eval_ltl(x, f); });
        return equal_outcome({{"oracle", oracle_eval(t, f, cfg.oracle)}, {"pointwise", flat}});
      };
      break;
    case Suite::Downward:
      kind = GenKind::TeamOv;
      check = [&](const Formula& f, const Team& t) {
        TeamOracle oracle(t, cfg.oracle);
        Outcome o;
        const bool whole = oracle.eval(f);
        o.verdicts["team"] = whole;
        if (!whole) return o;
        std::vector<LassoTrace> traces(t.begin(), t.end());
        for (std::size_t m = 0; m < (std::size_t{1} << traces.size()); ++m) {
          Team sub;
          for (std::size_t i = 0; i < traces.size(); ++i) {
            if ((m >> i) & 1U) sub.insert(traces[i]);
          }
          if (!oracle.eval(f, sub)) {
            o.ok = false;
            o.verdicts["subteam"] = false;
            o.detail = "subteam " + team_text(sub);
            break;
          }
        }
        return o;
      };
      break;
    case Suite::OracleNf:
      kind = GenKind::TeamOv;
      check = [&](const Formula& f, const Team& t) {
        bool v_nf = false;
        if (cfg.rule_override && is_team_ov(f)) {
          v_nf = eval_ov_dnf(t, to_ov_dnf(f, *cfg.rule_override, tl));
        } else {
          v_nf = nf(t, f);
        }
        return equal_outcome({{"oracle", oracle_eval(t, f, cfg.oracle)}, {"nf", v_nf}});
      };
      break;
    case Suite::Prenex:
      kind = GenKind::HyperPbc;
      check = [&](const Formula& s, const Team& t) {
        Verdicts v{{"input", eval_hyper(t, s)}};
        try {
          v["prenex_pbc"] = eval_hyper(t, prenex_pbc(s, tl));
        } catch (const FragmentError&) {
          // Not a positive combination of ∀*-sentences.
        }
        const Formula p = prenex_bc(s, tl);
        v["prenex_bc"] = eval_hyper(t, p);
        if (has_quantifier(p)) v["not_negate_prenex"] = !eval_hyper(t, negate_prenex(p));
        return equal_outcome(std::move(v));
      };
      break;
    case Suite::Hyperify:
      kind = GenKind::Ltl;
      check = [&](const Formula& a, const Team& t) {
        if (t.size() != 1) throw InvalidArgument("hyperify cases use a single trace");
        const LassoTrace& x = *t.begin();
        const Formula m = hyperify(a, "pi");
        return equal_outcome({{"ltl", eval_ltl(x, a)},
                              {"hyper", eval_hyper(t, forall("pi", m))},
                              {"dehyperify", eval_ltl(x, dehyperify(m, "pi"))}});
      };
      break;
    case Suite::NegDual:
      kind = GenKind::Ltl;
      check = [&](const Formula& a, const Team& t) {
        if (t.size() != 1) throw InvalidArgument("negdual cases use a single trace");
        const LassoTrace& x = *t.begin();
        const Formula d = dual(a);
        Outcome o = equal_outcome(
            {{"ltl", eval_ltl(x, a)}, {"not_dual", !eval_ltl(x, d)}, {"dual_dual", eval_ltl(x, dual(d))}});
        if (!(dual(d) == a)) {
          o.ok = false;
          o.detail = "dual is not an involution: " + print(dual(d));
        }
        return o;
      };
      break;
  }

  DiffReport report;
  report.suite = std::string(to_string(suite));
  report.seed = seed;
  report.cases = cases;
  for (std::size_t i = 0; i < cases; ++i) {
    Rng rng(Rng::substream(seed, i));
    GenKind k = kind;
    if (suite == Suite::OracleNf && rng.chance(1, 2)) k = GenKind::LeftDc;
    if (suite == Suite::Prenex && i % 2 == 1) k = GenKind::HyperBc;
    const Formula f = gen_formula(k, cfg, rng);
    Team t;
    if (suite == Suite::Hyperify || suite == Suite::NegDual) {
      t.insert(gen_trace(cfg, rng));
    } else {
      t = gen_team(cfg, rng);
    }

    CaseFailure failure;
    failure.index = i;
    try {
      Outcome o = check(f, t);
      if (o.ok) continue;
      auto [sf, st, so] = shrink(check, f, t, o);
      failure.formula = print(sf);
      failure.team = team_text(st);
      failure.verdicts = so.verdicts;
      failure.detail = so.detail;
      failure.shrunk = !(sf == f) || !(st == t);
    } catch (const std::exception& e) {
      failure.formula = print(f);
      failure.team = team_text(t);
      failure.error = e.what();
    }
    report.failures.push_back(std::move(failure));
  }
  report.duration_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return report;
}

std::string DiffReport::to_json(bool include_duration) const {
  nlohmann::ordered_json j;
  j["suite"] = suite;
  j["seed"] = seed;
  j["cases"] = cases;
  j["ok"] = ok();
  auto arr = nlohmann::ordered_json::array();
  for (const auto& f : failures) {
    nlohmann::ordered_json e;
    e["index"] = f.index;
    e["formula"] = f.formula;
    e["team"] = f.team;
    e["verdicts"] = f.verdicts;
    if (!f.detail.empty()) e["detail"] = f.detail;
    if (!f.error.empty()) e["error"] = f.error;
    e["shrunk"] = f.shrunk;
    arr.push_back(std::move(e));
  }
  j["failures"] = std::move(arr);
  if (include_duration) j["duration_ms"] = duration_ms;
  return j.dump(2);
}

}  // namespace teamhyper
