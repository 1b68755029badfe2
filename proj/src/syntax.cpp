#include "teamhyper/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

#include "teamhyper/errors.hpp"

namespace teamhyper {

namespace {

enum class Tok {
  Ident,
  At,
  Dot,
  LParen,
  RParen,
  Bang,
  Tilde,
  Amp,
  Bar,
  OvOr,
  Next,
  Finally,
  Globally,
  Until,
  Release,
  Zero,
  One,
  Forall,
  Exists,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto push = [&](Tok k, std::size_t start, std::size_t end) {
    out.push_back({k, std::string(s.substr(start, end - start)), {start, end}});
  };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    switch (c) {
      case '@': push(Tok::At, i, i + 1); ++i; continue;
      case '.': push(Tok::Dot, i, i + 1); ++i; continue;
      case '(': push(Tok::LParen, i, i + 1); ++i; continue;
      case ')': push(Tok::RParen, i, i + 1); ++i; continue;
      case '!': push(Tok::Bang, i, i + 1); ++i; continue;
      case '~': push(Tok::Tilde, i, i + 1); ++i; continue;
      case '&': push(Tok::Amp, i, i + 1); ++i; continue;
      case '|': push(Tok::Bar, i, i + 1); ++i; continue;
      default: break;
    }
    // ⩔ (U+2A54) and ∼ (U+223C)
    if (s.substr(i, 3) == "\xE2\xA9\x94") {
      push(Tok::OvOr, i, i + 3);
      i += 3;
      continue;
    }
    if (s.substr(i, 3) == "\xE2\x88\xBC") {
      push(Tok::Tilde, i, i + 3);
      i += 3;
      continue;
    }
    if (!is_word_char(c)) throw ParseError("lexical error: unexpected character", {i, i + 1});
    while (i < s.size() && is_word_char(s[i])) ++i;
    std::string_view w = s.substr(start, i - start);
    if (w == "X") push(Tok::Next, start, i);
    else if (w == "F") push(Tok::Finally, start, i);
    else if (w == "G") push(Tok::Globally, start, i);
    else if (w == "U") push(Tok::Until, start, i);
    else if (w == "R") push(Tok::Release, start, i);
    else if (w == "OR") push(Tok::OvOr, start, i);
    else if (w == "0") push(Tok::Zero, start, i);
    else if (w == "1") push(Tok::One, start, i);
    else if (w == "forall") push(Tok::Forall, start, i);
    else if (w == "exists") push(Tok::Exists, start, i);
    else if (std::islower(static_cast<unsigned char>(w.front()))) push(Tok::Ident, start, i);
    else throw ParseError("lexical error: unknown token '" + std::string(w) + "'", {start, i});
  }
  out.push_back({Tok::End, "", {s.size(), s.size()}});
  return out;
}

struct Parsed {
  Formula f;
  SourceSpan span;
};

class Parser {
 public:
  Parser(std::string_view text, Logic logic) : toks_(lex(text)), logic_(logic) {}

  Formula run() {
    Parsed p = parse_ovor();
    if (peek().kind != Tok::End) fail("unexpected token '" + peek().text + "'", peek().span);
    if (logic_ == Logic::Hyper && has_quantifier(p.f)) {
      auto free = free_variables(p.f);
      if (!free.empty()) fail("free trace variable '" + *free.begin() + "' in a sentence", p.span);
    }
    return p.f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }

  [[noreturn]] static void fail(const std::string& msg, SourceSpan span) { throw ParseError(msg, span); }

  void expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what, peek().span);
    ++pos_;
  }

  static SourceSpan join(SourceSpan a, SourceSpan b) { return {a.start, b.end}; }

  // A quantifier below a temporal operator or inside a matrix is rejected.
  void require_matrix(const Parsed& p) {
    if (has_quantifier(p.f)) fail("quantifier in non-prefix position", p.span);
  }

  Parsed parse_ovor() {
    Parsed left = parse_or();
    while (peek().kind == Tok::OvOr) {
      const Token& op = take();
      if (logic_ != Logic::Team) fail("'OR' is only available in the team logic", op.span);
      Parsed right = parse_or();
      left = {ovor(left.f, right.f), join(left.span, right.span)};
    }
    return left;
  }

  Parsed parse_or() {
    Parsed left = parse_and();
    while (peek().kind == Tok::Bar) {
      take();
      Parsed right = parse_and();
      left = {disj(left.f, right.f), join(left.span, right.span)};
    }
    return left;
  }

  Parsed parse_and() {
    Parsed left = parse_until();
    while (peek().kind == Tok::Amp) {
      take();
      Parsed right = parse_until();
      left = {conj(left.f, right.f), join(left.span, right.span)};
    }
    return left;
  }

  Parsed parse_until() {
    Parsed left = parse_unary();
    if (peek().kind == Tok::Until || peek().kind == Tok::Release) {
      const Token& op = take();
      Parsed right = parse_until();
      if (logic_ == Logic::Hyper) {
        if (op.kind == Tok::Release) fail("'R' is not part of the HyperLTL syntax", op.span);
        require_matrix(left);
        require_matrix(right);
      }
      Formula f = op.kind == Tok::Until ? until(left.f, right.f) : release(left.f, right.f);
      return {f, join(left.span, right.span)};
    }
    return left;
  }

  Parsed parse_unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Next:
      case Tok::Finally:
      case Tok::Globally: {
        take();
        Parsed arg = parse_unary();
        if (logic_ == Logic::Hyper) require_matrix(arg);
        Formula f = t.kind == Tok::Next      ? next(arg.f)
                    : t.kind == Tok::Finally ? eventually(arg.f)
                    : logic_ == Logic::Hyper ? hyper_globally(arg.f)
                                             : globally(arg.f);
        return {f, join(t.span, arg.span)};
      }
      case Tok::Tilde: {
        take();
        if (logic_ != Logic::Team) fail("'~' is only available in the team logic", t.span);
        Parsed arg = parse_unary();
        return {sim(arg.f), join(t.span, arg.span)};
      }
      case Tok::Bang: {
        take();
        if (logic_ == Logic::Hyper) {
          Parsed arg = parse_unary();
          return {negation(arg.f), join(t.span, arg.span)};
        }
        const Token& p = peek();
        if (p.kind != Tok::Ident || toks_[pos_ + 1].kind == Tok::At) {
          fail("NNF violation: '!' applied to non-atom", join(t.span, p.span));
        }
        take();
        return {neg_atom(p.text), join(t.span, p.span)};
      }
      case Tok::Forall:
      case Tok::Exists: return parse_quantifier();
      default: return parse_primary();
    }
  }

  Parsed parse_quantifier() {
    const Token& q = take();
    if (logic_ != Logic::Hyper) fail("quantifiers are only available in the hyper logic", q.span);
    const Token& v = peek();
    if (v.kind != Tok::Ident) fail("expected a trace variable after quantifier", v.span);
    take();
    if (std::find(scope_.begin(), scope_.end(), v.text) != scope_.end()) {
      fail("trace variable '" + v.text + "' is already bound", v.span);
    }
    expect(Tok::Dot, "'.' after quantified variable");
    scope_.push_back(v.text);
    Parsed body = parse_ovor();
    scope_.pop_back();
    if (!body.f.is(Op::Forall) && !body.f.is(Op::Exists)) require_matrix(body);
    Formula f = q.kind == Tok::Forall ? forall(v.text, body.f) : exists(v.text, body.f);
    return {f, join(q.span, body.span)};
  }

  Parsed parse_primary() {
    const Token& t = take();
    switch (t.kind) {
      case Tok::Zero: return {bottom(), t.span};
      case Tok::One: return {top(), t.span};
      case Tok::LParen: {
        // Closing a group resets the precedence climb.
        Parsed inner = parse_ovor();
        const Token& r = peek();
        expect(Tok::RParen, "')'");
        return {inner.f, join(t.span, r.span)};
      }
      case Tok::Ident: {
        if (peek().kind == Tok::At) {
          const Token& at = take();
          if (logic_ != Logic::Hyper) fail("trace-indexed atoms are only available in the hyper logic", at.span);
          const Token& v = peek();
          if (v.kind != Tok::Ident) fail("expected a trace variable after '@'", v.span);
          take();
          return {hyper_atom(t.text, v.text), join(t.span, v.span)};
        }
        if (logic_ == Logic::Hyper) fail("HyperLTL atoms need a trace variable (p@pi)", t.span);
        return {atom(t.text), t.span};
      }
      case Tok::End: fail("unexpected end of input", t.span);
      default: fail("unexpected token '" + t.text + "'", t.span);
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Logic logic_;
  std::vector<std::string> scope_;
};

// ---------------------------------------------------------------------------
// Printer

bool is_finally(const Formula& f) { return f.is(Op::Until) && f.lhs().is(Op::True); }

bool is_hyper_globally(const Formula& f) {
  return f.is(Op::Not) && is_finally(f.child(0)) && f.child(0).rhs().is(Op::Not);
}

int precedence(const Formula& f) {
  switch (f.op()) {
    case Op::Forall:
    case Op::Exists: return 0;
    case Op::OvOr: return 1;
    case Op::Or: return 2;
    case Op::And: return 3;
    case Op::Until: return is_finally(f) ? 5 : 4;
    case Op::Release: return 4;
    case Op::Sim:
    case Op::Not:
    case Op::Next:
    case Op::Globally:
    case Op::NegAtom: return 5;
    default: return 6;
  }
}

bool is_binary(const Formula& f) {
  int p = precedence(f);
  return p >= 1 && p <= 4;
}

bool right_assoc(Op op) { return op == Op::Until || op == Op::Release; }

std::string render(const Formula& f);

std::string wrap(const Formula& f) { return "(" + render(f) + ")"; }

std::string operand(const Formula& f) { return precedence(f) < 5 ? wrap(f) : render(f); }

std::string side(const Formula& parent, const Formula& child, bool left) {
  if (precedence(child) == 0) return wrap(child);
  if (!is_binary(child)) return render(child);
  bool assoc_side = right_assoc(parent.op()) ? !left : left;
  if (child.op() == parent.op() && assoc_side) return render(child);
  return wrap(child);
}

std::string render(const Formula& f) {
  switch (f.op()) {
    case Op::True: return "1";
    case Op::False: return "0";
    case Op::Atom: return f.var().empty() ? f.prop() : f.prop() + "@" + f.var();
    case Op::NegAtom: return "!" + f.prop();
    case Op::Sim: return "~" + operand(f.child(0));
    case Op::Not:
      if (is_hyper_globally(f)) return "G " + operand(f.child(0).rhs().child(0));
      return "!" + operand(f.child(0));
    case Op::Next: return "X " + operand(f.child(0));
    case Op::Globally: return "G " + operand(f.child(0));
    case Op::Forall: return "forall " + f.var() + ". " + render(f.child(0));
    case Op::Exists: return "exists " + f.var() + ". " + render(f.child(0));
    case Op::Until:
      if (is_finally(f)) return "F " + operand(f.rhs());
      break;
    default: break;
  }
  const char* sym = f.is(Op::And) ? " & " : f.is(Op::Or) ? " | " : f.is(Op::OvOr) ? " OR " : f.is(Op::Until) ? " U " : " R ";
  return side(f, f.lhs(), true) + sym + side(f, f.rhs(), false);
}

// ---------------------------------------------------------------------------
// Team files

class TraceReader {
 public:
  TraceReader(std::string_view text, std::size_t base) : s_(text), base_(base) {}

  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool at_end() {
    skip_ws();
    return i_ == s_.size();
  }
  char peek() {
    skip_ws();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  SourceSpan here(std::size_t len = 1) const { return {base_ + i_, base_ + std::min(i_ + len, s_.size())}; }

  std::string ident() {
    skip_ws();
    std::size_t start = i_;
    while (i_ < s_.size() && is_word_char(s_[i_])) ++i_;
    if (start == i_) throw ParseError("unknown token in team file", {base_ + start, base_ + start + 1});
    return std::string(s_.substr(start, i_ - start));
  }

  void expect(char c) {
    if (peek() != c) throw ParseError(std::string("unknown token in team file, expected '") + c + "'", here());
    ++i_;
  }

  Letter step() {
    expect('{');
    std::vector<std::string> props;
    if (peek() == '}') {
      ++i_;
      return make_letter({});
    }
    for (;;) {
      std::size_t start = i_;
      std::string p = ident();
      if (!std::islower(static_cast<unsigned char>(p.front()))) {
        throw ParseError("proposition names start with a lowercase letter", {base_ + start, base_ + i_});
      }
      props.push_back(std::move(p));
      if (peek() == ',') {
        ++i_;
        continue;
      }
      expect('}');
      return make_letter(std::move(props));
    }
  }

  LassoTrace trace() {
    std::vector<Letter> stem;
    while (peek() == '{') stem.push_back(step());
    SourceSpan open = here();
    expect('(');
    std::vector<Letter> loop;
    while (peek() == '{') loop.push_back(step());
    if (loop.empty()) throw ParseError("empty loop", {open.start, here().end});
    expect(')');
    return canonicalize(std::move(stem), std::move(loop));
  }

 private:
  std::string_view s_;
  std::size_t base_;
  std::size_t i_ = 0;
};

std::string print_letter(const Letter& l) {
  std::string out = "{";
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (i) out += ",";
    out += l[i];
  }
  return out + "}";
}

}  // namespace

Formula parse_formula(std::string_view text, Logic logic) { return Parser(text, logic).run(); }

std::string print(const Formula& f) { return render(f); }

TeamFile parse_team_file(std::string_view text) {
  TeamFile out;
  std::size_t line_start = 0;
  while (line_start <= text.size()) {
    std::size_t nl = text.find('\n', line_start);
    std::size_t line_end = nl == std::string_view::npos ? text.size() : nl;
    std::string_view line = text.substr(line_start, line_end - line_start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    TraceReader r(line, line_start);
    if (!r.at_end()) {
      SourceSpan name_span = r.here();
      std::string name = r.ident();
      if (std::find(out.names.begin(), out.names.end(), name) != out.names.end()) {
        out.warnings.push_back("duplicate trace name '" + name + "' at offset " + std::to_string(name_span.start));
      }
      r.expect('=');
      LassoTrace t = r.trace();
      if (!r.at_end()) throw ParseError("unknown token in team file", r.here());
      out.names.push_back(std::move(name));
      out.team.insert(std::move(t));
    }
    if (nl == std::string_view::npos) break;
    line_start = nl + 1;
  }
  return out;
}

LassoTrace parse_trace(std::string_view text) {
  TraceReader r(text, 0);
  LassoTrace t = r.trace();
  if (!r.at_end()) throw ParseError("trailing input after trace", r.here());
  return t;
}

std::string print_trace(const LassoTrace& t) {
  std::string out;
  for (const auto& l : t.stem()) out += print_letter(l);
  out += "(";
  for (const auto& l : t.loop()) out += print_letter(l);
  return out + ")";
}

std::string print_team(const Team& team) {
  std::ostringstream os;
  std::size_t i = 1;
  for (const auto& t : team) os << "t" << i++ << " = " << print_trace(t) << "\n";
  return os.str();
}

}  // namespace teamhyper
