#include "pidec/decompose.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "pidec/error.hpp"
#include "pidec/normalize.hpp"
#include "pidec/parser.hpp"

namespace pidec {

const char* to_string(SplitResult::Status status) {
  switch (status) {
    case SplitResult::Status::SplitFound: return "SplitFound";
    case SplitResult::Status::NoSplitWithinUniverse: return "NoSplitWithinUniverse";
    case SplitResult::Status::Aborted: return "Aborted";
  }
  return "?";
}

namespace {

void flatten_into(const Process& p, std::vector<Process>& out) {
  if (p.kind() == ProcessKind::Par) {
    flatten_into(p.left(), out);
    flatten_into(p.right(), out);
  } else {
    out.push_back(p);
  }
}

Process push_restriction(Name z, const Process& body) {
  if (!body.has_free(z)) return body;
  if (body.kind() == ProcessKind::Par) {
    std::vector<Process> parts, with, without;
    flatten_into(body, parts);
    for (auto& c : parts) (c.has_free(z) ? with : without).push_back(c);
    if (!without.empty()) {
      Process inner = with.size() == 1 ? push_restriction(z, with[0]) : Process::restrict(z, Process::par_of(with));
      without.push_back(inner);
      return Process::par_of(without);
    }
    return Process::restrict(z, body);
  }
  if (body.kind() == ProcessKind::Restrict) {
    Process inner = push_restriction(z, body.body());
    if (!(inner == Process::restrict(z, body.body()))) return push_restriction(body.binder(), inner);
  }
  return Process::restrict(z, body);
}

Process narrow(const Process& p) {
  switch (p.kind()) {
    case ProcessKind::Nil:
      return p;
    case ProcessKind::Prefixed:
      return Process::prefixed(p.prefix(), narrow(p.body()));
    case ProcessKind::Sum:
      return Process::sum(narrow(p.left()), narrow(p.right()));
    case ProcessKind::Par:
      return Process::par(narrow(p.left()), narrow(p.right()));
    case ProcessKind::Restrict:
      return push_restriction(p.binder(), narrow(p.body()));
    case ProcessKind::Repl:
      return Process::repl(narrow(p.body()));
  }
  return p;
}

std::vector<Name> fresh_at_or_above(const Process& p, std::uint32_t base) {
  std::vector<Name> out;
  for (Name n : p.free_names())
    if (n.is_fresh() && n.index() >= base) out.push_back(n);
  return out;
}

// Renames the fresh names consumed after `base` to base, base+1, ...
State compact(const State& s, std::uint32_t base) {
  auto fresh = fresh_at_or_above(s.term, base);
  std::vector<std::pair<Name, Name>> m;
  for (std::uint32_t i = 0; i < fresh.size(); ++i) m.push_back({fresh[i], Name::fresh(base + i)});
  return {alpha_canonical(rename(s.term, m)), base + static_cast<std::uint32_t>(fresh.size())};
}

std::string text_of(const State& s) {
  std::string t = pretty(s.term);
  if (s.consumed) t += " [" + std::to_string(s.consumed) + " fresh]";
  return t;
}

Matching match_classes(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  Matching m;
  std::vector<int> owner(b.size(), -1);
  std::function<bool(std::size_t, std::vector<char>&)> augment = [&](std::size_t i, std::vector<char>& seen) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (a[i] != b[j] || seen[j]) continue;
      seen[j] = 1;
      if (owner[j] < 0 || augment(static_cast<std::size_t>(owner[j]), seen)) {
        owner[j] = static_cast<int>(i);
        return true;
      }
    }
    return false;
  };
  std::vector<char> left_matched(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::vector<char> seen(b.size(), 0);
    if (augment(i, seen)) left_matched[i] = 1;
  }
  for (std::size_t j = 0; j < b.size(); ++j)
    if (owner[j] >= 0) m.pairs.push_back({static_cast<std::size_t>(owner[j]), j});
    else if (!m.unmatched_right) m.unmatched_right = j;
  std::sort(m.pairs.begin(), m.pairs.end());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!left_matched[i]) {
      m.unmatched_left = i;
      break;
    }
  m.equal = a.size() == b.size() && m.pairs.size() == a.size();
  return m;
}

NameUniverse roomy(NameUniverse u) {
  u.fresh_pool = std::max<std::uint32_t>(u.fresh_pool, 256);
  return u;
}

constexpr std::uint32_t kFreshAlias = 1u << 28;

}  // namespace

Process scope_narrow(const Process& p) { return alpha_canonical(narrow(p)); }

std::vector<Process> flatten_par(const Process& p) {
  std::vector<Process> out;
  flatten_into(p, out);
  return out;
}

Process prune_nil(const Process& p) {
  switch (p.kind()) {
    case ProcessKind::Nil:
      return p;
    case ProcessKind::Prefixed:
      return Process::prefixed(p.prefix(), prune_nil(p.body()));
    case ProcessKind::Sum:
    case ProcessKind::Par: {
      Process l = prune_nil(p.left());
      Process r = prune_nil(p.right());
      if (l.is_nil()) return r;
      if (r.is_nil()) return l;
      return p.kind() == ProcessKind::Sum ? Process::sum(l, r) : Process::par(l, r);
    }
    case ProcessKind::Restrict:
      return Process::restrict(p.binder(), prune_nil(p.body()));
    case ProcessKind::Repl:
      return Process::repl(prune_nil(p.body()));
  }
  return p;
}

std::vector<std::string> Decomposition::texts() const {
  std::vector<std::string> out;
  for (const auto& f : factors) out.push_back(text_of(f));
  return out;
}

Decomposer::Decomposer(Mode mode, NameUniverse universe) : index_(mode, roomy(std::move(universe))) {}

State Decomposer::prepare(const State& s) {
  if (!s.term.replication_free()) throw Error(ErrorKind::NotFinite, "term contains replication: " + pretty(s.term));
  return {alpha_canonical(prune_nil(narrow(s.term))), s.consumed};
}

unsigned Decomposer::depth_of(const State& s) {
  if (auto it = depth_memo_.find(s); it != depth_memo_.end()) return it->second;
  unsigned d = depth(build_lts(s.term, universe(), s.consumed));
  depth_memo_.emplace(s, d);
  return d;
}

State Decomposer::compose(const std::vector<State>& parts, std::uint32_t base) {
  if (parts.empty()) return {Process::nil(), base};
  Process acc = parts[0].term;
  std::uint32_t counter = std::max(parts[0].consumed, base);
  for (std::size_t i = 1; i < parts.size(); ++i) {
    std::vector<std::pair<Name, Name>> m;
    for (Name n : fresh_at_or_above(parts[i].term, base)) m.push_back({n, Name::fresh(n.index() + counter - base)});
    acc = Process::par(acc, rename(parts[i].term, m));
    counter += std::max(parts[i].consumed, base) - base;
  }
  return {alpha_canonical(acc), counter};
}

std::vector<Decomposer::Candidate> Decomposer::candidates(const State& s) {
  const std::uint32_t own = index_.class_of(s);
  Lts l = build_lts(s.term, universe(), s.consumed);
  std::map<std::uint32_t, std::tuple<std::size_t, std::size_t, std::string, State>> best;
  for (const auto& st : l.states()) {
    State c = compact(st, s.consumed);
    std::uint32_t cls = index_.class_of(c);
    if (cls == index_.nil_class() || cls == own) continue;
    auto key = std::make_tuple(std::size_t{c.consumed - s.consumed}, c.term.size(), pretty(c.term), c);
    auto it = best.find(cls);
    if (it == best.end() || key < it->second) best[cls] = std::move(key);
  }
  std::vector<Candidate> out;
  for (auto& [cls, key] : best) {
    const State& rep = std::get<3>(key);
    out.push_back({rep, cls, mode() == Mode::Strong ? depth_of(rep) : 0u});
  }
  std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
    return std::make_tuple(a.depth, a.rep.consumed, a.rep.term.size(), pretty(a.rep.term)) <
           std::make_tuple(b.depth, b.rep.consumed, b.rep.term.size(), pretty(b.rep.term));
  });
  return out;
}

std::vector<std::pair<State, State>> Decomposer::splits(const State& s, bool first_only) {
  std::vector<std::pair<State, State>> out;
  auto cands = candidates(s);
  const unsigned total = mode() == Mode::Strong ? depth_of(s) : 0u;
  for (std::size_t i = 0; i < cands.size(); ++i)
    for (std::size_t j = i; j < cands.size(); ++j) {
      if (mode() == Mode::Strong && cands[i].depth + cands[j].depth != total) continue;
      State both = compose({cands[i].rep, cands[j].rep}, s.consumed);
      if (index_.class_of(both) != index_.class_of(State{s.term, both.consumed})) continue;
      out.push_back({prepare(cands[i].rep), prepare(cands[j].rep)});
      if (first_only) return out;
    }
  return out;
}

std::optional<std::pair<State, State>> Decomposer::split(const State& s) {
  auto all = splits(prepare(s), true);
  if (all.empty()) return std::nullopt;
  return all.front();
}

std::vector<std::pair<State, State>> Decomposer::all_splits(const State& s) { return splits(prepare(s), false); }

std::vector<State> Decomposer::factors_of(const State& s) {
  State p = prepare(s);
  std::vector<State> out;
  for (const auto& comp : flatten_par(p.term)) {
    State c{alpha_canonical(comp), p.consumed};
    if (index_.class_of(c) == index_.nil_class()) continue;
    auto fs = factor(c);
    out.insert(out.end(), fs.begin(), fs.end());
  }
  return out;
}

std::vector<State> Decomposer::factor(const State& s) {
  const std::uint32_t cls = index_.class_of(s);
  if (auto it = factor_memo_.find(cls); it != factor_memo_.end()) return it->second;

  State c = s;
  if (mode() == Mode::Weak) {
    // Fresh names already known to the state stand in as ordinary free names.
    std::vector<std::pair<Name, Name>> to, back;
    for (Name n : c.term.free_names())
      if (n.is_fresh()) {
        to.push_back({n, Name::bound(kFreshAlias + n.index())});
        back.push_back({Name::bound(kFreshAlias + n.index()), n});
      }
    Process sf = stutter_free(rename(c.term, to), universe());
    c = prepare({alpha_canonical(rename(sf, back)), c.consumed});
  }

  auto found = splits(c, !check_alternatives);
  std::vector<State> result;
  if (found.empty()) {
    result = {c};
  } else {
    result = factors_of(found[0].first);
    auto rest = factors_of(found[0].second);
    result.insert(result.end(), rest.begin(), rest.end());
    if (check_alternatives && found.size() > 1) {
      auto classes_of = [&](const std::vector<State>& fs) {
        std::vector<std::uint32_t> ids;
        for (const auto& f : fs) ids.push_back(index_.class_of(f));
        std::sort(ids.begin(), ids.end());
        return ids;
      };
      auto reference = classes_of(result);
      for (std::size_t k = 1; k < found.size(); ++k) {
        auto alt = factors_of(found[k].first);
        auto more = factors_of(found[k].second);
        alt.insert(alt.end(), more.begin(), more.end());
        if (classes_of(alt) != reference)
          alternative_mismatches.push_back(text_of(c) + " splits as " + text_of(found[0].first) + " | " +
                                           text_of(found[0].second) + " and as " + text_of(found[k].first) +
                                           " | " + text_of(found[k].second));
      }
    }
  }
  factor_memo_.emplace(cls, result);
  return result;
}

std::vector<std::uint32_t> Decomposer::factor_classes(const State& s) {
  std::vector<std::uint32_t> ids;
  for (const auto& f : factors_of(s)) ids.push_back(index_.class_of(f));
  std::sort(ids.begin(), ids.end());
  return ids;
}

Decomposition Decomposer::decompose(const Process& p) { return decompose(State{alpha_canonical(p), 0}); }

Decomposition Decomposer::decompose(const State& s) {
  Decomposition d;
  d.mode = mode();
  d.factors = factors_of(s);
  std::vector<std::tuple<unsigned, std::size_t, std::string, std::size_t>> order;
  for (std::size_t i = 0; i < d.factors.size(); ++i) {
    unsigned dep = depth_of(d.factors[i]);
    order.emplace_back(dep, d.factors[i].term.size(), text_of(d.factors[i]), i);
  }
  std::sort(order.begin(), order.end());
  std::vector<State> sorted;
  for (const auto& o : order) sorted.push_back(d.factors[std::get<3>(o)]);
  d.factors = std::move(sorted);
  State composite = compose(d.factors, s.consumed);
  d.verified_equivalent =
      index_.class_of(composite) == index_.class_of(State{alpha_canonical(s.term), composite.consumed});
  return d;
}

Decomposition decomposition(const Process& p, Mode mode, const std::optional<NameUniverse>& u) {
  Decomposer d(mode, u ? *u : NameUniverse::covering({p}));
  return d.decompose(p);
}

SplitResult find_split(const Process& p, Mode mode, const TermUniverse& tu, std::size_t budget, InputMode inputs) {
  NameUniverse u = NameUniverse::covering({p}, inputs);
  u.add_known(tu.names);
  Decomposer d(mode, u);
  State s{alpha_canonical(p), 0};
  if (mode == Mode::Weak) s = {stutter_free(s.term, d.universe()), 0};
  SplitResult r;
  auto splits = d.all_splits(s);
  if (splits.empty()) return r;
  for (const auto& [q, rr] : splits)
    if (q.consumed == 0 && rr.consumed == 0 && tu.contains(q.term) && tu.contains(rr.term)) {
      r.status = SplitResult::Status::SplitFound;
      r.left = q;
      r.right = rr;
      return r;
    }

  // Representatives fall outside the universe: look for members of the
  // same classes inside it.
  BehaviorIndex& idx = d.index();
  const std::uint32_t target = idx.class_of(s);
  std::map<std::pair<std::uint32_t, std::uint32_t>, Process> seen;  // (counter, class) -> term
  std::vector<std::uint32_t> counters;
  for (const auto& [q, rr] : splits) {
    counters.push_back(q.consumed);
    counters.push_back(rr.consumed);
  }
  std::sort(counters.begin(), counters.end());
  counters.erase(std::unique(counters.begin(), counters.end()), counters.end());
  bool aborted = false;
  for_each_term(tu, [&](const Process& t) {
    if (r.progress >= budget) {
      aborted = true;
      return false;
    }
    ++r.progress;
    for (std::uint32_t k : counters) seen.try_emplace({k, idx.class_of(t, k)}, t);
    for (const auto& [q, rr] : splits) {
      auto a = seen.find({q.consumed, idx.class_of(q)});
      auto b = seen.find({rr.consumed, idx.class_of(rr)});
      if (a == seen.end() || b == seen.end()) continue;
      if (idx.class_of(Process::par(a->second, b->second)) != target) continue;
      r.status = SplitResult::Status::SplitFound;
      r.left = State{a->second, 0};
      r.right = State{b->second, 0};
      return false;
    }
    return true;
  });
  if (aborted) r.status = SplitResult::Status::Aborted;
  return r;
}

Matching multiset_eq_mod_bisim(const Decomposition& a, const Decomposition& b, const std::optional<NameUniverse>& u) {
  NameUniverse uni;
  if (u) {
    uni = *u;
  } else {
    std::vector<Process> terms;
    for (const auto* d : {&a, &b})
      for (const auto& f : d->factors) terms.push_back(f.term);
    uni = NameUniverse::covering(terms);
  }
  BehaviorIndex idx(a.mode, roomy(uni));
  std::vector<std::uint32_t> ca, cb;
  for (const auto& f : a.factors) ca.push_back(idx.class_of(f));
  for (const auto& f : b.factors) cb.push_back(idx.class_of(f));
  return match_classes(ca, cb);
}

UpdVerdict verify_upd(const Process& p, const Process& q, Mode mode, const std::optional<NameUniverse>& u) {
  Decomposer d(mode, u ? *u : NameUniverse::covering({p, q}));
  UpdVerdict v;
  v.equivalent = d.index().class_of(p) == d.index().class_of(q);
  v.left = d.decompose(p);
  v.right = d.decompose(q);
  std::vector<std::uint32_t> ca, cb;
  for (const auto& f : v.left.factors) ca.push_back(d.index().class_of(f));
  for (const auto& f : v.right.factors) cb.push_back(d.index().class_of(f));
  v.matching = match_classes(ca, cb);
  v.unique = !v.equivalent || v.matching.equal;
  return v;
}

SweepReport sweep_upd(const TermUniverse& tu, Mode mode, InputMode inputs,
                      const std::function<void(std::size_t)>& progress) {
  NameUniverse u;
  u.known = tu.names;
  std::sort(u.known.begin(), u.known.end());
  u.mode = inputs;
  Decomposer d(mode, u);
  d.check_alternatives = true;

  struct Group {
    Process first;
    std::vector<std::uint32_t> factors;
    std::size_t count = 0;
  };
  std::unordered_map<std::uint32_t, Group> groups;
  SweepReport report;
  report.mode = mode;
  report.inputs = inputs;
  constexpr std::size_t kMaxRecorded = 50;

  for_each_term(tu, [&](const Process& t) {
    ++report.terms;
    State s{t, 0};
    std::uint32_t cls = d.index().class_of(s);
    Decomposition dec = d.decompose(s);
    std::vector<std::uint32_t> ids;
    for (const auto& f : dec.factors) ids.push_back(d.index().class_of(f));
    std::sort(ids.begin(), ids.end());
    if (!dec.verified_equivalent) ++report.violation_count;
    if (!dec.verified_equivalent && report.violations.size() < kMaxRecorded)
      report.violations.push_back({"unsound", pretty(t), "", "factors do not compose back to the term"});
    auto [it, inserted] = groups.try_emplace(cls, Group{t, ids, 0});
    ++it->second.count;
    if (!inserted && it->second.factors != ids) ++report.violation_count;
    if (!inserted && it->second.factors != ids && report.violations.size() < kMaxRecorded)
      report.violations.push_back({"mismatch", pretty(it->second.first), pretty(t), "equivalent terms with different factor multisets"});
    if (progress) progress(report.terms);
    return true;
  });
  report.violation_count += d.alternative_mismatches.size();
  for (const auto& m : d.alternative_mismatches)
    if (report.violations.size() < kMaxRecorded) report.violations.push_back({"alternative", m, "", "two splits of one factor disagree"});
  report.classes = groups.size();
  for (const auto& [cls, g] : groups) {
    report.equivalent_pairs += g.count * (g.count - 1) / 2;
    if (g.count > 1) ++report.nontrivial_classes;
  }
  return report;
}

}  // namespace pidec
