#include "pidec/terms.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace pidec {

namespace {

enum class Set { Prefixed, Component, Process };

// Terms use de Bruijn levels: the binder introduced at scope depth d is
// Name::bound(d), so alpha-equivalent terms coincide syntactically.
class Enumerator {
 public:
  explicit Enumerator(const TermUniverse& tu) : tu_(tu) {}

  const std::vector<Process>& get(Set set, unsigned size, unsigned depth) {
    auto key = std::make_tuple(set, size, depth);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<Process> out;
    switch (set) {
      case Set::Prefixed: prefixed(size, depth, out); break;
      case Set::Component: component(size, depth, out); break;
      case Set::Process: process(size, depth, out); break;
    }
    return memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  const TermUniverse& tu_;
  std::map<std::tuple<Set, unsigned, unsigned>, std::vector<Process>> memo_;

  std::vector<Name> scope(unsigned depth) const {
    std::vector<Name> out = tu_.names;
    for (unsigned i = 0; i < depth; ++i) out.push_back(Name::bound(i));
    return out;
  }

  void prefixed(unsigned size, unsigned depth, std::vector<Process>& out) {
    if (size < 2) return;
    std::vector<std::vector<Guard>> guard_sets{{}};
    if (tu_.allow_match) {
      auto names = scope(depth);
      for (unsigned g = 1; g + 2 <= size; ++g) {
        std::vector<std::vector<Guard>> next;
        for (const auto& gs : guard_sets) {
          if (gs.size() != g - 1) continue;
          for (Name x : names)
            for (Name y : names)
              if (x < y) {
                auto more = gs;
                more.push_back({x, y});
                next.push_back(std::move(more));
              }
        }
        guard_sets.insert(guard_sets.end(), next.begin(), next.end());
      }
    }
    auto names = scope(depth);
    for (const auto& guards : guard_sets) {
      unsigned rest = size - 1 - static_cast<unsigned>(guards.size());
      if (rest < 1) continue;
      auto with_guards = [&](Prefix pi) {
        pi.guards = guards;
        return pi;
      };
      for (const auto& cont : get(Set::Process, rest, depth))
        out.push_back(Process::prefixed(with_guards(Prefix::tau()), cont));
      for (Name x : names)
        for (Name y : names)
          for (const auto& cont : get(Set::Process, rest, depth))
            out.push_back(Process::prefixed(with_guards(Prefix::output(x, y)), cont));
      for (Name x : names)
        for (const auto& cont : get(Set::Process, rest, depth + 1))
          out.push_back(Process::prefixed(with_guards(Prefix::input(x, Name::bound(depth))), cont));
    }
  }

  // Multisets of at least two elements from `pool(s)` whose sizes plus the
  // k-1 binary nodes add up to size.
  template <class Pool, class Build>
  void multisets(unsigned size, Pool pool, Build build, std::vector<Process>& out) {
    std::vector<const Process*> chosen;
    std::function<void(unsigned, unsigned, std::size_t)> rec = [&](unsigned remaining, unsigned min_size,
                                                                   std::size_t min_index) {
      if (chosen.size() >= 2 && remaining == 0) {
        std::vector<Process> parts;
        for (auto* p : chosen) parts.push_back(*p);
        out.push_back(build(parts));
      }
      unsigned budget = chosen.empty() ? remaining : remaining - 1;  // one more binary node
      if (!chosen.empty() && remaining == 0) return;
      for (unsigned s = min_size; s <= budget; ++s) {
        const auto& items = pool(s);
        for (std::size_t i = (s == min_size ? min_index : 0); i < items.size(); ++i) {
          unsigned after = budget - s;
          // the first element alone cannot complete a multiset
          if (chosen.empty() && after == 0) continue;
          chosen.push_back(&items[i]);
          rec(after, s, i);
          chosen.pop_back();
        }
      }
    };
    rec(size, 1, 0);
  }

  void component(unsigned size, unsigned depth, std::vector<Process>& out) {
    const auto& pre = get(Set::Prefixed, size, depth);
    out.insert(out.end(), pre.begin(), pre.end());
    multisets(
        size, [&](unsigned s) -> const std::vector<Process>& { return get(Set::Prefixed, s, depth); },
        [](const std::vector<Process>& parts) { return Process::sum_of(parts); }, out);
    if (tu_.allow_restriction && size >= 2) {
      Name z = Name::bound(depth);
      for (const auto& body : get(Set::Process, size - 1, depth + 1))
        if (body.has_free(z)) out.push_back(Process::restrict(z, body));
    }
  }

  void process(unsigned size, unsigned depth, std::vector<Process>& out) {
    if (size == 1) out.push_back(Process::nil());
    const auto& comp = get(Set::Component, size, depth);
    out.insert(out.end(), comp.begin(), comp.end());
    multisets(
        size, [&](unsigned s) -> const std::vector<Process>& { return get(Set::Component, s, depth); },
        [](const std::vector<Process>& parts) { return Process::par_of(parts); }, out);
  }
};

bool in_normal_form(const Process& p, const TermUniverse& tu, bool in_sum) {
  switch (p.kind()) {
    case ProcessKind::Nil:
      return !in_sum;
    case ProcessKind::Prefixed:
      if (!p.prefix().guards.empty() && !tu.allow_match) return false;
      return in_normal_form(p.body(), tu, false);
    case ProcessKind::Sum:
      return p.left().kind() != ProcessKind::Nil && p.right().kind() != ProcessKind::Nil &&
             in_normal_form(p.left(), tu, true) && in_normal_form(p.right(), tu, true);
    case ProcessKind::Par:
      if (in_sum) return false;
      return p.left().kind() != ProcessKind::Nil && p.right().kind() != ProcessKind::Nil &&
             in_normal_form(p.left(), tu, false) && in_normal_form(p.right(), tu, false);
    case ProcessKind::Restrict:
      if (in_sum || !tu.allow_restriction || !p.body().has_free(p.binder())) return false;
      return in_normal_form(p.body(), tu, false);
    case ProcessKind::Repl:
      return false;
  }
  return false;
}

}  // namespace

bool TermUniverse::contains(const Process& p) const {
  if (p.size() > max_size) return false;
  for (Name n : p.free_names())
    if (!n.is_user() || std::find(names.begin(), names.end(), n) == names.end()) return false;
  return in_normal_form(p, *this, false);
}

void for_each_term(const TermUniverse& tu, const std::function<bool(const Process&)>& visit) {
  Enumerator e(tu);
  for (unsigned s = 1; s <= tu.max_size; ++s)
    for (const auto& p : e.get(Set::Process, s, 0))
      if (!visit(alpha_canonical(p))) return;
}

std::vector<Process> enumerate_terms(const TermUniverse& tu) {
  std::vector<Process> out;
  for_each_term(tu, [&](const Process& p) {
    out.push_back(p);
    return true;
  });
  return out;
}

std::vector<std::size_t> count_terms(const TermUniverse& tu) {
  Enumerator e(tu);
  std::vector<std::size_t> out;
  for (unsigned s = 1; s <= tu.max_size; ++s) out.push_back(e.get(Set::Process, s, 0).size());
  return out;
}

RandomTermGenerator::RandomTermGenerator(std::uint64_t seed, RandomTermOptions options)
    : rng_(seed), opt_(std::move(options)) {}

int RandomTermGenerator::uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

Name RandomTermGenerator::pick(const std::vector<Name>& scope) {
  return scope[static_cast<std::size_t>(uniform(0, static_cast<int>(scope.size()) - 1))];
}

Process RandomTermGenerator::next() {
  next_binder_ = 0;
  std::vector<Name> scope = opt_.names;
  return alpha_canonical(process(uniform(1, static_cast<int>(opt_.max_size)), scope));
}

Process RandomTermGenerator::next_summation() {
  next_binder_ = 0;
  std::vector<Name> scope = opt_.names;
  return alpha_canonical(summation(uniform(1, static_cast<int>(opt_.max_size)), scope));
}

Process RandomTermGenerator::process(int budget, std::vector<Name>& scope) {
  if (budget <= 2) return summation(budget, scope);
  int roll = uniform(0, 99);
  if (roll < 30 && budget >= 5) {
    int left = uniform(2, budget - 3);
    Process l = process(left, scope);
    return Process::par(l, process(budget - 1 - left, scope));
  }
  if (roll < 45 && opt_.allow_restriction) {
    Name z = Name::bound(next_binder_++);
    scope.push_back(z);
    Process body = process(budget - 1, scope);
    scope.pop_back();
    return body.has_free(z) ? Process::restrict(z, body) : body;
  }
  return summation(budget, scope);
}

Process RandomTermGenerator::summation(int budget, std::vector<Name>& scope) {
  if (budget <= 1) return Process::nil();
  if (budget >= 5 && uniform(0, 99) < 30) {
    int left = uniform(2, budget - 3);
    Process l = prefixed(left, scope);
    return Process::sum(l, summation(budget - 1 - left, scope));
  }
  return prefixed(budget, scope);
}

Process RandomTermGenerator::prefixed(int budget, std::vector<Name>& scope) {
  Prefix pi;
  int rest = budget - 1;
  if (opt_.allow_match && rest >= 2 && uniform(0, 99) < 12) {
    pi.guards.push_back({pick(scope), pick(scope)});
    --rest;
  }
  int roll = uniform(0, 99);
  Process cont;
  if (roll < 20) {
    pi.kind = PrefixKind::Tau;
    cont = process(rest, scope);
  } else if (roll < 60) {
    pi.kind = PrefixKind::Output;
    pi.channel = pick(scope);
    pi.object = pick(scope);
    cont = process(rest, scope);
  } else {
    pi.kind = PrefixKind::Input;
    pi.channel = pick(scope);
    Name x = Name::bound(next_binder_++);
    pi.object = x;
    scope.push_back(x);
    cont = process(rest, scope);
    scope.pop_back();
  }
  return Process::prefixed(std::move(pi), cont);
}

}  // namespace pidec
