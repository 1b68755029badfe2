#include "teamhyper/trace.hpp"

#include <algorithm>
#include <numeric>

#include "teamhyper/errors.hpp"

namespace teamhyper {

Letter make_letter(std::vector<std::string> props) {
  std::sort(props.begin(), props.end());
  props.erase(std::unique(props.begin(), props.end()), props.end());
  return props;
}

LassoTrace::LassoTrace() : loop_{Letter{}} {}

std::size_t LassoTrace::normalize(std::size_t pos) const {
  if (pos < stem_.size()) return pos;
  return stem_.size() + (pos - stem_.size()) % loop_.size();
}

const Letter& LassoTrace::at(std::size_t pos) const {
  if (pos < stem_.size()) return stem_[pos];
  return loop_[(pos - stem_.size()) % loop_.size()];
}

bool LassoTrace::holds(std::string_view prop, std::size_t pos) const {
  const Letter& l = at(pos);
  return std::binary_search(l.begin(), l.end(), prop, std::less<>{});
}

namespace {

std::size_t primitive_period(const std::vector<Letter>& w) {
  const std::size_t n = w.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = d; i < n && periodic; ++i) periodic = w[i] == w[i - d];
    if (periodic) return d;
  }
  return n;
}

}  // namespace

LassoTrace canonicalize(std::vector<Letter> stem, std::vector<Letter> loop) {
  if (loop.empty()) throw InvalidArgument("empty loop");
  for (auto& l : stem) l = make_letter(std::move(l));
  for (auto& l : loop) l = make_letter(std::move(l));
  loop.resize(primitive_period(loop));
  while (!stem.empty() && stem.back() == loop.back()) {
    stem.pop_back();
    std::rotate(loop.rbegin(), loop.rbegin() + 1, loop.rend());
  }
  return LassoTrace(std::move(stem), std::move(loop));
}

LassoTrace suffix(const LassoTrace& t, std::size_t i) {
  const auto& stem = t.stem();
  const auto& loop = t.loop();
  if (i < stem.size()) {
    return canonicalize({stem.begin() + static_cast<std::ptrdiff_t>(i), stem.end()}, loop);
  }
  std::size_t shift = (i - stem.size()) % loop.size();
  std::vector<Letter> rotated(loop.begin() + static_cast<std::ptrdiff_t>(shift), loop.end());
  rotated.insert(rotated.end(), loop.begin(), loop.begin() + static_cast<std::ptrdiff_t>(shift));
  return canonicalize({}, std::move(rotated));
}

std::vector<Letter> unroll(const LassoTrace& t, std::size_t n) {
  std::vector<Letter> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(t.at(i));
  return out;
}

std::string product_atom(std::string_view prop, std::string_view var) {
  std::string out(prop);
  out += '@';
  out += var;
  return out;
}

LassoTrace product(const TraceAssignment& assignment) {
  if (assignment.empty()) throw InvalidArgument("product of an empty assignment");
  std::size_t stem_len = 0;
  std::size_t loop_len = 1;
  for (const auto& [var, t] : assignment) {
    stem_len = std::max(stem_len, t.stem().size());
    loop_len = std::lcm(loop_len, t.loop().size());
  }
  auto letter_at = [&](std::size_t k) {
    std::vector<std::string> props;
    for (const auto& [var, t] : assignment) {
      for (const auto& p : t.at(k)) props.push_back(product_atom(p, var));
    }
    return make_letter(std::move(props));
  };
  std::vector<Letter> stem;
  std::vector<Letter> loop;
  for (std::size_t k = 0; k < stem_len; ++k) stem.push_back(letter_at(k));
  for (std::size_t k = 0; k < loop_len; ++k) loop.push_back(letter_at(stem_len + k));
  return canonicalize(std::move(stem), std::move(loop));
}

Team team_suffix_set(const Team& team, const SuffixChoice& choice) {
  Team out;
  for (const auto& t : team) {
    auto it = choice.find(t);
    if (it == choice.end()) throw InvalidArgument("suffix choice is missing a trace of the team");
    if (it->second.empty()) throw InvalidArgument("suffix choice maps a trace to the empty set");
    for (std::size_t s : it->second) out.insert(suffix(t, s));
  }
  return out;
}

Team team_next(const Team& team) {
  Team out;
  for (const auto& t : team) out.insert(suffix(t, 1));
  return out;
}

}  // namespace teamhyper
