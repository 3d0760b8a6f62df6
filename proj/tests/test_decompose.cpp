#include <map>
#include <set>

#include "doctest.h"
#include "support.hpp"

using namespace pidec;
using namespace pidec::test;

namespace {

std::vector<std::string> sorted_texts(const Decomposition& d) {
  auto t = d.texts();
  std::sort(t.begin(), t.end());
  return t;
}

Decomposition of(const char* text, Mode mode = Mode::Strong) { return decomposition(P(text), mode); }

}  // namespace

TEST_CASE("scope narrowing") {
  CHECK(scope_narrow(P("new z.(0 | z!a.0)")) == P("0 | new z.z!a.0"));
  CHECK(scope_narrow(P("new z.(a!z.0 | a?(x).0)")) == P("a?(x).0 | new z.a!z.0"));
  CHECK(scope_narrow(P("new z.(a!z.0 | z?(x).0)")) == P("new z.(a!z.0 | z?(x).0)"));
  CHECK(scope_narrow(P("new z.x!y.0")) == P("x!y.0"));
  RandomTermGenerator gen(3, small_terms(11));
  for (int i = 0; i < 150; ++i) {
    Process p = gen.next();
    CHECK(strong_bisim(p, scope_narrow(p)).equivalent);
  }
}

TEST_CASE("flattening and nil pruning") {
  auto parts = flatten_par(P("a!b.0 | (c!d.0 | 0) | tau.0"));
  CHECK(parts.size() == 4);
  CHECK(prune_nil(P("a!b.0 | 0 | (0 | c!d.0)")) == P("a!b.0 | c!d.0"));
  CHECK(prune_nil(P("0 | 0")).is_nil());
}

TEST_CASE("decomposition examples") {
  CHECK(of("0").factors.empty());
  CHECK(sorted_texts(of("z!x.0 | a?(y).0")) == std::vector<std::string>{"a?(x).0", "z!x.0"});
  CHECK(sorted_texts(of("new z.(a!z.0) | a?(x).x!a.0")) ==
        std::vector<std::string>{"a?(x).x!a.0", "new z.a!z.0"});
  CHECK(of("z!x.a?(y).0 + a?(y).z!x.0").factors.size() == 2);
  CHECK(of("a!x.a?(y).0 + a?(y).a!x.0").factors.size() == 1);
  CHECK(of("tau.0 | a!b.0", Mode::Weak).factors.size() == 1);
  CHECK(of("tau.0 | a!b.0", Mode::Strong).factors.size() == 2);
  Decomposition d = of("a!b.0 | a!b.0 | new z.(z!a.0 | z?(x).b!x.0)");
  CHECK(d.verified_equivalent);
  CHECK(d.factors.size() == 3);
}

TEST_CASE("find split examples") {
  TermUniverse ab{{N("a"), N("b"), N("c"), N("d")}, 4, true, false};
  SplitResult s = find_split(P("a!b.0 | c!d.0"), Mode::Strong, ab);
  REQUIRE(s.status == SplitResult::Status::SplitFound);
  std::set<Process> parts{s.left->term, s.right->term};
  CHECK(parts == std::set<Process>{P("a!b.0"), P("c!d.0")});
  TermUniverse small{{N("a"), N("b")}, 3, true, false};
  CHECK(find_split(P("a!b.0"), Mode::Strong, small).status == SplitResult::Status::NoSplitWithinUniverse);
  TermUniverse abc{{N("a"), N("b"), N("c")}, 8, true, false};
  CHECK(find_split(P("new z.(z!c.c!a.0 | z?(y).y!b.0)"), Mode::Strong, abc).status ==
        SplitResult::Status::NoSplitWithinUniverse);
  // split of a sum form found through its class
  SplitResult sum = find_split(P("a!b.c!d.0 + c!d.a!b.0"), Mode::Strong, ab);
  CHECK(sum.status == SplitResult::Status::SplitFound);
}

TEST_CASE("multiset equality modulo bisimilarity") {
  CHECK(multiset_eq_mod_bisim(of("a!b.0 | c!d.0"), of("c!d.0 | a!b.0")).equal);
  CHECK(multiset_eq_mod_bisim(of("0"), of("0")).equal);
  Decomposition par = of("z!x.0 | a?(y).0");
  Decomposition single;
  single.factors = {State{P("z!x.a?(y).0 + a?(y).z!x.0"), 0}};
  Matching m = multiset_eq_mod_bisim(par, single);
  CHECK_FALSE(m.equal);
  CHECK(multiset_eq_mod_bisim(of("a!b.0 | tau.a!b.0"), of("tau.a!b.0 | a!b.0")).equal);
  CHECK_FALSE(multiset_eq_mod_bisim(of("a!b.0 | a!b.0"), of("a!b.0 | a!b.a!b.0")).equal);
}

TEST_CASE("unique decomposition of pairs") {
  UpdVerdict v = verify_upd(P("a!b.0 | c!d.0"), P("c!d.0 | a!b.0"), Mode::Strong);
  CHECK(v.equivalent);
  CHECK(v.unique);
  CHECK(v.matching.equal);
  UpdVerdict e = verify_upd(P("new z.(a!z.0) | a?(x).x!a.0"),
                            alpha_canonical(expand_hnf(P("new z.(a!z.0) | a?(x).x!a.0")).to_process()),
                            Mode::Strong);
  CHECK(e.equivalent);
  CHECK(e.unique);
  CHECK(e.left.factors.size() == 2);
  UpdVerdict w = verify_upd(P("tau.a!b.0 | c!d.0"), P("c!d.tau.0 | a!b.0"), Mode::Weak);
  CHECK(w.equivalent);
  CHECK(w.unique);
  CHECK_FALSE(verify_upd(P("a!b.0"), P("c!d.0"), Mode::Strong).equivalent);
}

TEST_CASE("decompositions are sound") {
  for (Mode mode : {Mode::Strong, Mode::Weak}) {
    RandomTermGenerator gen(mode == Mode::Strong ? 13 : 14, small_terms(12));
    for (int i = 0; i < 120; ++i) {
      Process p = gen.next();
      InputMode inputs = mode == Mode::Weak ? InputMode::FreshOnly : InputMode::Early;
      NameUniverse u = NameUniverse::covering({p}, inputs);
      Decomposition d = decomposition(p, mode, u);
      CHECK(d.verified_equivalent);
      for (const auto& f : d.factors) CHECK_FALSE(bisimilar_to_nil(f.term, mode, u));
      std::vector<Process> parts;
      for (const auto& f : d.factors)
        if (f.consumed == 0) parts.push_back(f.term);
      if (parts.size() == d.factors.size()) CHECK(bisim(Process::par_of(parts), p, mode, u).equivalent);
    }
  }
}

TEST_CASE("decomposition of compositions merges factors") {
  RandomTermGenerator gen(23, small_terms(8));
  for (int i = 0; i < 80; ++i) {
    Process p = gen.next(), q = gen.next();
    Process pq = Process::par(p, q);
    NameUniverse u = universe_for({pq});
    Decomposition dp = decomposition(p, Mode::Strong, u), dq = decomposition(q, Mode::Strong, u);
    Decomposition merged = dp;
    merged.factors.insert(merged.factors.end(), dq.factors.begin(), dq.factors.end());
    CHECK(multiset_eq_mod_bisim(decomposition(pq, Mode::Strong, u), merged, u).equal);
  }
}

TEST_CASE("split search is complete on a small universe") {
  // every class reached by composing two small terms must be found decomposable
  for (Mode mode : {Mode::Strong, Mode::Weak}) {
    InputMode inputs = mode == Mode::Weak ? InputMode::FreshOnly : InputMode::Early;
    TermUniverse parts{{N("a"), N("b")}, 3, true, false};
    TermUniverse targets{{N("a"), N("b")}, 5, true, false};
    auto small = enumerate_terms(parts);
    NameUniverse u;
    u.known = {N("a"), N("b")};
    u.fresh_pool = 256;
    u.mode = inputs;
    Decomposer dec(mode, u);
    BehaviorIndex& idx = dec.index();
    std::set<std::uint32_t> composite;
    for (std::size_t i = 0; i < small.size(); ++i) {
      if (idx.class_of(small[i]) == idx.nil_class()) continue;
      for (std::size_t j = i; j < small.size(); ++j) {
        if (idx.class_of(small[j]) == idx.nil_class()) continue;
        composite.insert(idx.class_of(alpha_canonical(Process::par(small[i], small[j]))));
      }
    }
    std::size_t checked = 0, found = 0;
    for (const auto& t : enumerate_terms(targets)) {
      Process s = mode == Mode::Weak ? stutter_free(t, u) : t;
      bool brute = composite.count(idx.class_of(t)) > 0;
      auto split = dec.split({s, 0});
      if (brute) {
        ++checked;
        CHECK(split.has_value());
      }
      if (split) {
        ++found;
        Process l = split->first.term, r = split->second.term;
        if (split->first.consumed == 0 && split->second.consumed == 0)
          CHECK(idx.class_of(alpha_canonical(Process::par(l, r))) == idx.class_of(t));
      }
    }
    CHECK(checked > 100);
    CHECK(found >= checked);
  }
}

TEST_CASE("small unique decomposition sweeps") {
  TermUniverse tu{{N("a"), N("b")}, 4, true, false};
  SweepReport strong = sweep_upd(tu, Mode::Strong, InputMode::Early);
  CHECK(strong.terms == 946);
  CHECK(strong.violation_count == 0);
  CHECK(strong.nontrivial_classes > 0);
  SweepReport weak = sweep_upd(tu, Mode::Weak, InputMode::FreshOnly);
  CHECK(weak.violation_count == 0);
  CHECK(weak.classes < strong.classes);
}
