#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pidec/decompose.hpp"
#include "pidec/normalize.hpp"
#include "pidec/parser.hpp"

namespace pidec::test {

inline Process P(const char* text) { return parse(text); }

inline Name N(const char* text) { return Name::user(text); }

inline NameUniverse universe_for(std::initializer_list<Process> terms, InputMode mode = InputMode::Early) {
  return NameUniverse::covering(std::vector<Process>(terms), mode);
}

inline std::vector<std::string> action_texts(const std::vector<Transition>& ts) {
  std::vector<std::string> out;
  for (const auto& t : ts) out.push_back(t.action.text());
  return out;
}

inline bool has_move(const std::vector<Transition>& ts, const std::string& action, const Process& target) {
  return std::any_of(ts.begin(), ts.end(),
                     [&](const Transition& t) { return t.action.text() == action && alpha_equivalent(t.target, target); });
}

// Longest and shortest weighted paths computed straight from the transition
// function, with no graph construction.
class PathOracle {
 public:
  explicit PathOracle(NameUniverse u) : u_(std::move(u)) {}

  unsigned longest(const State& s) {
    if (auto it = longest_.find(s); it != longest_.end()) return it->second;
    unsigned best = 0;
    for (const auto& t : transitions(s, u_)) best = std::max(best, t.action.weight() + longest(t.target_state()));
    return longest_[s] = best;
  }

  unsigned shortest(const State& s) {
    if (auto it = shortest_.find(s); it != shortest_.end()) return it->second;
    auto ts = transitions(s, u_);
    unsigned best = ts.empty() ? 0 : ~0u;
    for (const auto& t : ts) best = std::min(best, t.action.weight() + shortest(t.target_state()));
    return shortest_[s] = best;
  }

 private:
  NameUniverse u_;
  std::map<State, unsigned> longest_;
  std::map<State, unsigned> shortest_;
};

inline unsigned oracle_depth(const Process& p) { return PathOracle(universe_for({p})).longest({p, 0}); }

inline unsigned lts_depth(const Process& p) { return depth(build_lts(p, universe_for({p}))); }

inline RandomTermOptions small_terms(unsigned max_size, bool restriction = true) {
  RandomTermOptions o;
  o.names = {N("a"), N("b"), N("c")};
  o.max_size = max_size;
  o.allow_restriction = restriction;
  return o;
}

}  // namespace pidec::test

namespace pidec::test {

// Swaps operands of sums and parallel compositions at random.
inline Process commute(const Process& p, std::mt19937_64& rng) {
  auto flip = [&] { return std::uniform_int_distribution<int>(0, 1)(rng) == 1; };
  switch (p.kind()) {
    case ProcessKind::Nil:
      return p;
    case ProcessKind::Prefixed:
      return Process::prefixed(p.prefix(), commute(p.body(), rng));
    case ProcessKind::Restrict:
      return Process::restrict(p.binder(), commute(p.body(), rng));
    case ProcessKind::Repl:
      return Process::repl(commute(p.body(), rng));
    case ProcessKind::Sum: {
      Process l = commute(p.left(), rng), r = commute(p.right(), rng);
      return flip() ? Process::sum(r, l) : Process::sum(l, r);
    }
    case ProcessKind::Par: {
      Process l = commute(p.left(), rng), r = commute(p.right(), rng);
      return flip() ? Process::par(r, l) : Process::par(l, r);
    }
  }
  return p;
}

// A term strongly bisimilar to p: expansion, commutation or scope narrowing.
inline Process equivalent_variant(const Process& p, std::mt19937_64& rng) {
  switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
    case 0:
      return alpha_canonical(expand_hnf(p).to_process());
    case 1:
      return alpha_canonical(commute(p, rng));
    case 2:
      return alpha_canonical(scope_narrow(p));
    default:
      return alpha_canonical(commute(expand_hnf(commute(p, rng)).to_process(), rng));
  }
}

// Inserts a tau prefix in front of one random prefix position.
inline Process add_tau(const Process& p, std::mt19937_64& rng) {
  if (p.kind() == ProcessKind::Prefixed) {
    if (rng() % 3 == 0) return Process::prefixed(Prefix::tau(), p);
    return Process::prefixed(p.prefix(), add_tau(p.body(), rng));
  }
  if (p.kind() == ProcessKind::Restrict) return Process::restrict(p.binder(), add_tau(p.body(), rng));
  if (p.kind() == ProcessKind::Par)
    return rng() % 2 ? Process::par(add_tau(p.left(), rng), p.right()) : Process::par(p.left(), add_tau(p.right(), rng));
  return p;
}

inline std::vector<std::pair<Process, Process>> mixed_pairs(std::uint64_t seed, int count, unsigned size) {
  RandomTermGenerator gen(seed, small_terms(size));
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Process, Process>> out;
  for (int i = 0; i < count; ++i) {
    Process p = gen.next();
    switch (i % 4) {
      case 0:
        out.emplace_back(p, gen.next());
        break;
      case 1:
        out.emplace_back(p, equivalent_variant(p, rng));
        break;
      case 2:
        out.emplace_back(p, alpha_canonical(add_tau(p, rng)));
        break;
      default:
        out.emplace_back(p, alpha_canonical(add_tau(equivalent_variant(p, rng), rng)));
    }
  }
  return out;
}

}  // namespace pidec::test
