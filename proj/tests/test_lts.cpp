#include "doctest.h"
#include "json.hpp"
#include "support.hpp"

using namespace pidec;
using namespace pidec::test;

namespace {

bool has_edge_to(const Lts& l, const std::string& action, const Process& target) {
  for (const auto& e : l.edges())
    if (e.action.text() == action && l.state(e.dst).term == target) return true;
  return false;
}

}  // namespace

TEST_CASE("lts construction") {
  Lts nil = build_lts(P("0"), universe_for({P("0")}));
  CHECK(nil.size() == 1);
  CHECK(nil.edges().empty());
  Process q = P("new z.(a!z.0) | a?(x).x!a.0");
  Lts l = build_lts(q, universe_for({q}));
  CHECK(has_edge_to(l, "tau", P("new z.(0 | z!a.0)")));
  Process s = P("new z.(a!z.z!c.c!a.0) | a?(x).x?(y).y!b.0");
  Lts ls = build_lts(s, universe_for({s}));
  CHECK(has_edge_to(ls, "tau", P("new z.(z!c.c!a.0 | z?(y).y!b.0)")));
  CHECK(has_edge_to(ls, "tau", P("new z.(c!a.0 | c!b.0)")));
  CHECK_THROWS_AS(build_lts(P("!a!b.0"), universe_for({P("!a!b.0")})), Error);
}

TEST_CASE("lts edges match the transition function") {
  RandomTermGenerator gen(61, small_terms(11));
  for (int i = 0; i < 100; ++i) {
    Process p = gen.next();
    NameUniverse u = universe_for({p});
    Lts l = build_lts(p, u);
    std::size_t edges = 0;
    std::vector<bool> reached(l.size(), false);
    reached[l.root()] = true;
    for (std::uint32_t s = 0; s < l.size(); ++s) {
      auto ts = transitions(l.state(s), u);
      auto out = l.out(s);
      CHECK(out.size() == ts.size());
      for (const auto& e : out) {
        edges++;
        CHECK(e.src == s);
        reached[e.dst] = true;
        CHECK(std::any_of(ts.begin(), ts.end(), [&](const Transition& t) {
          return t.action == e.action && t.target_state() == l.state(e.dst);
        }));
      }
    }
    CHECK(edges == l.edges().size());
    CHECK(std::all_of(reached.begin(), reached.end(), [](bool b) { return b; }));
  }
}

TEST_CASE("bounded exploration") {
  Process p = P("new z.(a!z.0) | a?(x).!x!a.0");
  Lts l = build_lts_bounded(p, universe_for({p}), 10);
  CHECK(l.truncated());
  Lts zero = build_lts_bounded(P("tau.0"), universe_for({P("tau.0")}), 0);
  CHECK(zero.size() == 1);
  CHECK(zero.truncated());
  Lts zero_nil = build_lts_bounded(P("0"), universe_for({P("0")}), 0);
  CHECK(zero_nil.size() == 1);
  CHECK_FALSE(zero_nil.truncated());
  Lts nil = build_lts_bounded(P("0"), universe_for({P("0")}), 7);
  CHECK(nil.size() == 1);
  CHECK_FALSE(nil.truncated());
  Process fin = P("a!b.tau.c!d.0");
  Lts full = build_lts_bounded(fin, universe_for({fin}), 100);
  CHECK_FALSE(full.truncated());
  CHECK(depth(full) == 4);
  CHECK_THROWS_AS(depth(build_lts_bounded(fin, universe_for({fin}), 2)), Error);
}

TEST_CASE("depth and norm examples") {
  auto d = [](const char* t) { return lts_depth(P(t)); };
  auto n = [](const char* t) { return norm(build_lts(P(t), universe_for({P(t)}))); };
  CHECK(d("0") == 0);
  CHECK(d("new z.(a!z.0) | a?(x).x!a.0") == 3);
  CHECK(d("x!y.0") == 1);
  CHECK(d("tau.x!y.0") == 3);
  CHECK(d("tau.tau.x!y.0") == 5);
  CHECK(n("new z.(a!z.0) | a?(x).x!a.0") == 2u);
  CHECK(n("new z.(a!z.0)") == 1u);
  CHECK(n("a?(x).x!a.0") == 2u);
  CHECK(n("0") == 0u);
}

TEST_CASE("infinite norm on a bounded graph") {
  Process p = P("!tau.0");
  Lts l = build_lts_bounded(p, universe_for({p}), 6);
  CHECK(l.truncated());
  CHECK_THROWS_AS(norm(l), Error);
}

TEST_CASE("deadlock") {
  Lts nil = build_lts(P("0"), universe_for({P("0")}));
  CHECK(is_deadlocked(nil, nil.root()));
  Lts dead = build_lts(P("new z.(0 | z!a.0)"), universe_for({P("new z.(0 | z!a.0)")}));
  CHECK(is_deadlocked(dead, dead.root()));
  Lts tau = build_lts(P("tau.0"), universe_for({P("tau.0")}));
  CHECK_FALSE(is_deadlocked(tau, tau.root()));
}

TEST_CASE("exports") {
  Process p = P("a!b.0 | tau.0");
  Lts l = build_lts(p, universe_for({p}));
  std::string dot = to_dot(l);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("a!b") != std::string::npos);
  auto j = nlohmann::json::parse(to_json(l));
  CHECK(j["states"].size() == l.size());
  CHECK(j["edges"].size() == l.edges().size());
  CHECK(to_dot(l) == to_dot(build_lts(p, universe_for({p}))));
}

TEST_CASE("depth agrees with a direct recursion") {
  RandomTermGenerator gen(71, small_terms(12));
  for (int i = 0; i < 200; ++i) {
    Process p = gen.next();
    NameUniverse u = universe_for({p});
    Lts l = build_lts(p, u);
    PathOracle o(u);
    CHECK(depth(l) == o.longest({p, 0}));
    auto nv = norm(l);
    REQUIRE(nv.has_value());
    CHECK(*nv == o.shortest({p, 0}));
  }
}

TEST_CASE("every step lowers depth and some step is tight") {
  RandomTermGenerator gen(81, small_terms(12));
  for (int i = 0; i < 200; ++i) {
    Process p = gen.next();
    Lts l = build_lts(p, universe_for({p}));
    auto ds = depths(l);
    for (std::uint32_t s = 0; s < l.size(); ++s) {
      bool tight = l.out(s).empty();
      for (const auto& e : l.out(s)) {
        CHECK(ds[s] >= e.action.weight() + ds[e.dst]);
        tight = tight || ds[s] == e.action.weight() + ds[e.dst];
      }
      CHECK(tight);
    }
  }
}

TEST_CASE("depth is additive over parallel composition") {
  RandomTermGenerator gen(91, small_terms(9));
  for (int i = 0; i < 250; ++i) {
    Process p = gen.next(), q = gen.next();
    CHECK(lts_depth(Process::par(p, q)) == lts_depth(p) + lts_depth(q));
  }
}

TEST_CASE("restriction never increases depth") {
  RandomTermGenerator gen(101, small_terms(11));
  std::vector<Name> names{N("a"), N("b"), N("c")};
  for (int i = 0; i < 200; ++i) {
    Process p = gen.next();
    for (Name z : names) CHECK(lts_depth(alpha_canonical(Process::restrict(z, p))) <= lts_depth(p));
  }
}

TEST_CASE("depth zero exactly when strongly bisimilar to nil") {
  RandomTermGenerator gen(111, small_terms(10));
  for (int i = 0; i < 300; ++i) {
    Process p = gen.next();
    CHECK((lts_depth(p) == 0) == bisimilar_to_nil(p, Mode::Strong));
  }
}
