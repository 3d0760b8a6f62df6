#include "doctest.h"
#include "json.hpp"
#include "support.hpp"

using namespace pidec;
using namespace pidec::test;

namespace {

NameUniverse fresh_only(const Process& p) { return NameUniverse::covering({p}, InputMode::FreshOnly); }

std::vector<Process> normalized_terms(std::uint64_t seed, int count, unsigned size) {
  RandomTermGenerator gen(seed, small_terms(size));
  std::vector<Process> out;
  for (int i = 0; i < count; ++i) {
    Process p = gen.next();
    NormalizationReport r = normalize_stuttering(p, fresh_only(p));
    REQUIRE(r.ok());
    out.push_back(r.result);
  }
  return out;
}

}  // namespace

TEST_CASE("head normal form examples") {
  HeadNormalForm pair = expand_hnf(P("z!x.0 | a?(y).0"));
  CHECK(pair.summands.size() == 2);
  CHECK(strong_bisim(pair.to_process(), P("z!x.a?(y).0 + a?(y).z!x.0")).equivalent);

  HeadNormalForm open = expand_hnf(P("new z.a!z.0"));
  REQUIRE(open.summands.size() == 1);
  CHECK(open.summands[0].prefix.kind == HeadKind::BoundOutput);
  CHECK(open.summands[0].prefix.channel == N("a"));
  CHECK(open.summands[0].continuation.is_nil());

  CHECK(expand_hnf(P("new z.z!c.0")).summands.empty());
  CHECK(expand_hnf(P("0")).summands.empty());
  CHECK_THROWS_AS(expand_hnf(P("!a!b.0")), Error);
}

TEST_CASE("head normal form of restrictions") {
  // binder untouched by the prefix, binder extruded, binder used as subject
  for (const char* text : {"new z.a!b.z!c.0", "new z.a?(x).x!z.0", "new z.a!z.z?(y).0", "new z.z!c.0",
                           "new z.z?(x).a!x.0", "new z.(a!z.0 + z!b.0 + tau.z!c.0)",
                           "new z.(a!z.0 | z?(x).x!b.0)", "new z.new w.(z!w.0 | z?(x).x!a.0 | a!z.0)"}) {
    Process p = P(text);
    CAPTURE(text);
    CHECK(strong_bisim(p, expand_hnf(p).to_process()).equivalent);
  }
}

TEST_CASE("expansion is sound") {
  for (std::uint64_t seed : {1, 2}) {
    RandomTermOptions o = small_terms(12);
    o.allow_match = seed == 2;
    RandomTermGenerator gen(seed, o);
    for (int i = 0; i < 150; ++i) {
      Process p = gen.next();
      Process h = expand_hnf(p).to_process();
      CHECK(strong_bisim(p, h).equivalent);
      CHECK_FALSE(validate(h).has_value());
    }
  }
}

TEST_CASE("stuttering detection") {
  Process t = P("tau.0");
  auto w = find_stuttering(t, universe_for({t}));
  REQUIRE(w.has_value());
  CHECK(w->from.term == t);
  CHECK(w->to.term.is_nil());
  Process q = P("new z.(a!z.0) | a?(x).(x!b.0 + tau.c!b.0)");
  CHECK(has_stuttering(q, universe_for({q})));
  CHECK(has_stuttering(q, fresh_only(q)));
  CHECK_FALSE(has_stuttering(P("x!y.0"), universe_for({P("x!y.0")})));
}

TEST_CASE("input instantiation decides stuttering") {
  Process p1 = P("a?(x).(x!b.0 + tau.c!b.0)");
  CHECK_FALSE(has_stuttering(p1, fresh_only(p1)));
  CHECK(has_stuttering(p1, universe_for({p1})));
  CHECK_FALSE(has_stuttering(P("new z.a!z.0"), fresh_only(P("new z.a!z.0"))));
}

TEST_CASE("stutter-free normalization examples") {
  Process t = P("tau.0");
  CHECK(stutter_free(t, universe_for({t})).is_nil());
  Process chain = P("tau.tau.x!y.0");
  Process r = stutter_free(chain, universe_for({chain}));
  CHECK(r == P("x!y.0"));
  CHECK(weak_bisim(r, chain).equivalent);
  Process keep = P("x!b.0 + tau.c!b.0");
  CHECK(stutter_free(keep, universe_for({keep})) == keep);
}

TEST_CASE("normalization report") {
  Process p = P("tau.a!b.0 + tau.a!b.0");
  NormalizationReport r = normalize_stuttering(p, universe_for({p}));
  CHECK(r.ok());
  auto j = nlohmann::json::parse(r.json());
  CHECK(j["equivalent-to-input"] == true);
  CHECK(j["stutter-free"] == true);
  CHECK_FALSE(j.contains("witness"));
}

TEST_CASE("early normalization failures are reported") {
  Process p1 = P("a?(x).(x!b.0 + tau.c!b.0)");
  NormalizationReport r = normalize_stuttering(p1, universe_for({p1}));
  CHECK(r.equivalent_to_input);
  CHECK_FALSE(r.stutter_free);
  CHECK(r.witness.has_value());
  CHECK_FALSE(r.ok());
  try {
    stutter_free(p1, universe_for({p1}));
    FAIL("expected NormalizationIncomplete");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NormalizationIncomplete);
  }
  CHECK(stutter_free(p1, fresh_only(p1)) == p1);
}

TEST_CASE("weak depth") {
  Process chain = P("tau.tau.x!y.0");
  CHECK(weak_depth(chain, universe_for({chain})) == 1);
  CHECK(weak_depth(P("0"), universe_for({P("0")})) == 0);
  CHECK(weak_depth(P("tau.0"), universe_for({P("tau.0")})) == 0);
}

TEST_CASE("normalization in fresh-only mode") {
  RandomTermGenerator gen(5, small_terms(11));
  for (int i = 0; i < 150; ++i) {
    Process p = gen.next();
    NormalizationReport r = normalize_stuttering(p, fresh_only(p));
    CHECK(r.equivalent_to_input);
    CHECK(r.stutter_free);
    CHECK(lts_depth(r.result) <= lts_depth(p));
  }
}

TEST_CASE("states reachable from a stutter-free term are stutter-free") {
  for (const Process& p : normalized_terms(15, 120, 11)) {
    NameUniverse u = fresh_only(p);
    Lts l = build_lts(p, u);
    BehaviorIndex index(Mode::Weak, u);
    for (const auto& e : l.edges())
      if (!e.action.visible()) CHECK(index.class_of(l.state(e.src)) != index.class_of(l.state(e.dst)));
  }
}

TEST_CASE("visible steps change the weak class") {
  RandomTermGenerator gen(25, small_terms(11));
  for (int i = 0; i < 150; ++i) {
    Process p = gen.next();
    NameUniverse u = universe_for({p});
    Lts l = build_lts(p, u);
    BehaviorIndex index(Mode::Weak, u);
    for (const auto& e : l.edges())
      if (e.action.visible()) CHECK(index.class_of(l.state(e.src)) != index.class_of(l.state(e.dst)));
  }
}

TEST_CASE("equivalent stutter-free terms") {
  RandomTermGenerator gen(35, small_terms(10));
  std::mt19937_64 rng(35);
  int pairs = 0;
  for (int i = 0; i < 120; ++i) {
    Process p = gen.next();
    Process q = equivalent_variant(p, rng);
    q = alpha_canonical(Process::sum(Process::prefixed(Prefix::tau(), q), Process::nil()));
    NameUniverse u = NameUniverse::covering({p, q}, InputMode::FreshOnly);
    Process np = stutter_free(p, u), nq = stutter_free(q, u);
    u = NameUniverse::covering({np, nq}, InputMode::FreshOnly);
    REQUIRE(weak_bisim(np, nq, u).equivalent);
    pairs++;
    // equal depth
    CHECK(lts_depth(np) == lts_depth(nq));
    // every step is answered by at least one step
    BehaviorIndex index(Mode::Weak, u);
    auto answers = weak_transitions(nq, u).moves;
    for (const auto& t : transitions(np, u)) {
      CHECK(std::any_of(answers.begin(), answers.end(), [&](const Transition& m) {
        return m.action == t.action && index.class_of(m.target_state()) == index.class_of(t.target_state());
      }));
    }
  }
  CHECK(pairs == 120);
}

TEST_CASE("stutter-free components are shallower than the composite") {
  RandomTermGenerator gen(45, small_terms(8));
  std::mt19937_64 rng(45);
  int checked = 0;
  for (int i = 0; i < 150; ++i) {
    Process p = gen.next(), q = gen.next();
    if (bisimilar_to_nil(p, Mode::Weak) || bisimilar_to_nil(q, Mode::Weak)) continue;
    Process pq = Process::par(p, q);
    NameUniverse u = NameUniverse::covering({pq}, InputMode::FreshOnly);
    NormalizationReport rp = normalize_stuttering(p, u), rq = normalize_stuttering(q, u);
    NormalizationReport rr = normalize_stuttering(equivalent_variant(pq, rng), u);
    if (!rp.ok() || !rq.ok() || !rr.ok()) continue;
    unsigned dr = lts_depth(rr.result);
    CHECK(lts_depth(rp.result) < dr);
    CHECK(lts_depth(rq.result) < dr);
    checked++;
  }
  CHECK(checked > 50);
}
