#include "demos.hpp"

#include <algorithm>

#include "cli.hpp"
#include "pidec/decompose.hpp"
#include "pidec/error.hpp"
#include "pidec/normalize.hpp"
#include "pidec/parser.hpp"

namespace pidec::cli {

namespace {

std::string yes(bool b) { return b ? "true" : "false"; }

std::string norm_text(const std::optional<unsigned>& n) { return n ? std::to_string(*n) : "infinity"; }

void check(DemoOutcome& o, std::string name, bool ok, std::string detail = "") {
  o.lines.push_back(std::string(ok ? "  [ok]   " : "  [FAIL] ") + name + (detail.empty() ? "" : " (" + detail + ")"));
  o.checks.push_back({std::move(name), ok, std::move(detail)});
}

Lts lts_of(const Process& p) { return build_lts(p, NameUniverse::covering({p})); }

DemoOutcome non_congruence() {
  DemoOutcome o;
  Process par = parse("z!x.0 | a?(y).0");
  Process sum = parse("z!x.a?(y).0 + a?(y).z!x.0");
  Process par2 = substitute(par, Name::user("a"), Name::user("z"));
  Process sum2 = substitute(sum, Name::user("a"), Name::user("z"));
  bool before = strong_bisim(par, sum).equivalent;
  bool after_strong = strong_bisim(par2, sum2).equivalent;
  bool after_weak = weak_bisim(par2, sum2).equivalent;
  o.lines.push_back("P = " + pretty(par));
  o.lines.push_back("Q = " + pretty(sum));
  o.lines.push_back("P ~ Q: " + yes(before));
  o.lines.push_back("P{a/z} = " + pretty(par2) + ", Q{a/z} = " + pretty(sum2));
  o.lines.push_back("P{a/z} ~ Q{a/z}: " + yes(after_strong) + ", weakly: " + yes(after_weak));
  check(o, "P ~ Q", before);
  check(o, "P{a/z} not ~ Q{a/z}", !after_strong);
  check(o, "P{a/z} not weakly bisimilar to Q{a/z}", !after_weak);
  o.facts = {{"P", pretty(par)}, {"Q", pretty(sum)}, {"strong_before", before},
             {"strong_after", after_strong}, {"weak_after", after_weak}};
  return o;
}

DemoOutcome norm_gap() {
  DemoOutcome o;
  Process q = parse("new z.(a!z.0) | a?(x).x!a.0");
  Process q0 = parse("new z.(a!z.0)");
  Process q1 = parse("a?(x).x!a.0");
  auto nq = norm(lts_of(q)), n0 = norm(lts_of(q0)), n1 = norm(lts_of(q1));
  unsigned dq = depth(lts_of(q)), d0 = depth(lts_of(q0)), d1 = depth(lts_of(q1));
  o.lines.push_back("Q = Q0 | Q1 = " + pretty(q));
  o.lines.push_back("norm Q = " + norm_text(nq) + ", norm Q0 = " + norm_text(n0) + ", norm Q1 = " + norm_text(n1));
  o.lines.push_back("depth Q = " + std::to_string(dq) + ", depth Q0 = " + std::to_string(d0) +
                    ", depth Q1 = " + std::to_string(d1));
  check(o, "norm Q = 2", nq == 2u);
  check(o, "norm Q0 = 1", n0 == 1u);
  check(o, "norm Q1 = 2", n1 == 2u);
  check(o, "norm Q != norm Q0 + norm Q1", nq && n0 && n1 && *nq != *n0 + *n1);
  check(o, "depth Q = 3 = depth Q0 + depth Q1", dq == 3 && d0 + d1 == dq);
  o.facts = {{"norm_Q", nq ? nlohmann::ordered_json(*nq) : nlohmann::ordered_json("infinity")},
             {"norm_Q0", n0 ? nlohmann::ordered_json(*n0) : nlohmann::ordered_json("infinity")},
             {"norm_Q1", n1 ? nlohmann::ordered_json(*n1) : nlohmann::ordered_json("infinity")},
             {"depth_Q", dq}, {"depth_Q0", d0}, {"depth_Q1", d1}};
  return o;
}

DemoOutcome tau_chain() {
  DemoOutcome o;
  std::vector<Process> chain{parse("x!y.0"), parse("tau.x!y.0"), parse("tau.tau.x!y.0")};
  std::vector<unsigned> depths;
  for (const auto& p : chain) depths.push_back(depth(lts_of(p)));
  for (std::size_t i = 0; i < chain.size(); ++i)
    o.lines.push_back("depth " + pretty(chain[i]) + " = " + std::to_string(depths[i]));
  check(o, "depths are 1, 3, 5", depths == std::vector<unsigned>{1, 3, 5});
  bool all_weak = true, no_strong = true;
  for (std::size_t i = 0; i < chain.size(); ++i)
    for (std::size_t j = i + 1; j < chain.size(); ++j) {
      all_weak = all_weak && weak_bisim(chain[i], chain[j]).equivalent;
      no_strong = no_strong && !strong_bisim(chain[i], chain[j]).equivalent;
    }
  check(o, "pairwise weakly bisimilar", all_weak);
  check(o, "pairwise not strongly bisimilar", no_strong);
  o.facts = {{"depths", depths}, {"pairwise_weak", all_weak}, {"pairwise_not_strong", no_strong}};
  return o;
}

DemoOutcome stutter_par() {
  DemoOutcome o;
  Process p0 = parse("new z.(a!z.0)");
  Process p1 = parse("a?(x).(x!b.0 + tau.c!b.0)");
  Process both = Process::par(p0, p1);
  NameUniverse fresh = NameUniverse::covering({both}, InputMode::FreshOnly);
  NameUniverse early = NameUniverse::covering({both}, InputMode::Early);
  bool s0 = has_stuttering(p0, fresh), s1 = has_stuttering(p1, fresh);
  auto w = find_stuttering(both, fresh);
  auto w1_early = find_stuttering(p1, early);
  o.lines.push_back("inputs: fresh-only");
  o.lines.push_back("P0 = " + pretty(p0) + " stutters: " + yes(s0));
  o.lines.push_back("P1 = " + pretty(p1) + " stutters: " + yes(s1));
  o.lines.push_back("P0 | P1 stutters: " + yes(w.has_value()));
  if (w) o.lines.push_back("  witness " + pretty(w->from.term) + " -tau-> " + pretty(w->to.term));
  o.lines.push_back("note: with early inputs P1 stutters too: " + yes(w1_early.has_value()));
  check(o, "P0 has no stuttering transitions", !s0);
  check(o, "P1 has no stuttering transitions", !s1);
  check(o, "P0 | P1 has a stuttering transition", w.has_value());
  o.facts = {{"inputs", "fresh-only"}, {"P0_stutters", s0}, {"P1_stutters", s1}, {"par_stutters", w.has_value()},
             {"P1_stutters_early", w1_early.has_value()}};
  if (w) o.facts["witness"] = {{"from", pretty(w->from.term)}, {"to", pretty(w->to.term)}};
  return o;
}

DemoOutcome scope_extrusion() {
  DemoOutcome o;
  Process start = parse("new z.(a!z.z!c.c!a.0) | a?(x).x?(y).y!b.0");
  Process r = parse("new z.(z!c.c!a.0 | z?(y).y!b.0)");
  Process end = parse("new z.(c!a.0 | c!b.0)");
  NameUniverse u = NameUniverse::covering({start});
  auto first = transitions(start, u);
  bool step1 = std::any_of(first.begin(), first.end(),
                           [&](const Transition& t) { return !t.action.visible() && t.target == r; });
  auto second = transitions(r, u);
  bool step2 = std::any_of(second.begin(), second.end(),
                           [&](const Transition& t) { return !t.action.visible() && t.target == end; });
  o.lines.push_back(pretty(start));
  o.lines.push_back("  -tau-> " + pretty(r));
  o.lines.push_back("  -tau-> " + pretty(end));
  o.lines.push_back("R has " + std::to_string(second.size()) + " outgoing transition(s)");
  TermUniverse tu{{Name::user("a"), Name::user("b"), Name::user("c")}, 8, true, false};
  SplitResult split = find_split(r, Mode::Strong, tu);
  o.lines.push_back(std::string("find_split(R) over names {a,b,c}, size <= 8: ") + to_string(split.status));
  check(o, "first tau step reaches R", step1);
  check(o, "second tau step reaches new z.(c!a.0 | c!b.0)", step2);
  check(o, "R has exactly one transition", second.size() == 1);
  check(o, "no split of R within the universe", split.status == SplitResult::Status::NoSplitWithinUniverse);
  o.facts = {{"trace", {pretty(start), pretty(r), pretty(end)}},
             {"R_transitions", second.size()},
             {"find_split", to_string(split.status)},
             {"oracle_universe", {{"names", {"a", "b", "c"}}, {"max_size", 8}}}};
  return o;
}

DemoOutcome weak_normed(unsigned max_weight) {
  DemoOutcome o;
  Process p = parse("new z.(z!c.0 | z?(x).!a!b.0 | z?(y).0)");
  NameUniverse u = NameUniverse::covering({p});
  Lts l = build_lts_bounded(p, u, max_weight);
  std::optional<unsigned> n;
  bool inconclusive = false;
  try {
    n = norm(l);
  } catch (const Error&) {
    inconclusive = true;
  }
  std::optional<std::uint32_t> dead;
  for (const auto& e : l.out(l.root()))
    if (!e.action.visible() && is_deadlocked(l, e.dst)) dead = e.dst;
  o.lines.push_back("P = " + pretty(p) + " (replication-free: " + yes(is_replication_free(p)) + ")");
  o.lines.push_back("bounded exploration to weight " + std::to_string(max_weight) + ": " + std::to_string(l.size()) +
                    " states, truncated: " + yes(l.truncated()));
  if (dead) o.lines.push_back("  -tau-> " + pretty(l.state(*dead).term) + " (deadlocked)");
  o.lines.push_back("norm of the bounded graph: " + (inconclusive ? std::string("inconclusive") : norm_text(n)));
  o.lines.push_back("P weakly bisimilar to P | P is infinite-state and is not checked here");
  check(o, "tau step to a deadlocked state", dead.has_value());
  check(o, "norm of the bounded graph is 2", n == 2u);
  check(o, "exploration flagged as truncated", l.truncated());
  check(o, "term contains replication", !is_replication_free(p));
  o.facts = {{"max_weight", max_weight}, {"states", l.size()}, {"truncated", l.truncated()},
             {"norm", n ? nlohmann::ordered_json(*n) : nlohmann::ordered_json(nullptr)},
             {"replication_free", is_replication_free(p)}};
  return o;
}

}  // namespace

bool DemoOutcome::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::vector<std::string> demo_names() {
  return {"non-congruence", "norm-gap", "tau-chain", "stutter-par", "scope-extrusion", "weak-normed-counterexample"};
}

DemoOutcome run_demo(const std::string& name, unsigned max_weight) {
  if (name == "non-congruence") return non_congruence();
  if (name == "norm-gap") return norm_gap();
  if (name == "tau-chain") return tau_chain();
  if (name == "stutter-par") return stutter_par();
  if (name == "scope-extrusion") return scope_extrusion();
  if (name == "weak-normed-counterexample") return weak_normed(max_weight);
  throw Error(ErrorKind::UnknownDemo, "unknown demo '" + name + "'");
}

}  // namespace pidec::cli
