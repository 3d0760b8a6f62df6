#include <map>
#include <set>

#include "doctest.h"
#include "json.hpp"
#include "support.hpp"

using namespace pidec;
using namespace pidec::test;

namespace {

bool strong(const char* a, const char* b) { return strong_bisim(P(a), P(b)).equivalent; }
bool weak(const char* a, const char* b) { return weak_bisim(P(a), P(b)).equivalent; }

}  // namespace

TEST_CASE("strong bisimilarity examples") {
  CHECK(strong("z!x.0 | a?(y).0", "z!x.a?(y).0 + a?(y).z!x.0"));
  CHECK_FALSE(strong("a!x.0 | a?(y).0", "a!x.a?(y).0 + a?(y).a!x.0"));
  CHECK(strong("a!b.0 | c?(x).0", "a!b.0 | c?(x).0"));
  CHECK_FALSE(strong("x!y.0", "tau.x!y.0"));
  CHECK(strong("new z.(z!a.0)", "0"));
  CHECK(strong("a?(x).x!b.0", "a?(y).y!b.0"));
  CHECK_FALSE(strong("a?(x).x!b.0", "a?(x).a!b.0"));
}

TEST_CASE("weak bisimilarity examples") {
  CHECK(weak("x!y.0", "tau.tau.x!y.0"));
  CHECK(weak("tau.0", "0"));
  CHECK_FALSE(weak("x!y.0", "0"));
  CHECK_FALSE(weak("a!b.0 + tau.c!d.0", "a!b.0 + c!d.0"));
  CHECK(weak("a!b.tau.c!d.0", "a!b.c!d.0"));
}

TEST_CASE("naive oracle on examples") {
  CHECK(naive_bisim_oracle(P("z!x.0 | a?(y).0"), P("z!x.a?(y).0 + a?(y).z!x.0"), Mode::Strong));
  CHECK(naive_bisim_oracle(P("0"), P("0"), Mode::Strong));
  CHECK(naive_bisim_oracle(P("x!y.0"), P("tau.tau.x!y.0"), Mode::Weak));
  CHECK_FALSE(naive_bisim_oracle(P("x!y.0"), P("tau.tau.x!y.0"), Mode::Strong));
}

TEST_CASE("bisimilar to nil") {
  CHECK(bisimilar_to_nil(P("new z.(z!a.0)"), Mode::Strong));
  CHECK_FALSE(bisimilar_to_nil(P("tau.0"), Mode::Strong));
  CHECK(bisimilar_to_nil(P("tau.0"), Mode::Weak));
  CHECK(bisimilar_to_nil(P("[a=b]tau.0"), Mode::Strong));
  CHECK(bisimilar_to_nil(P("[a=b]tau.0"), Mode::Weak));
}

TEST_CASE("partition is a bisimulation") {
  for (Mode mode : {Mode::Strong, Mode::Weak}) {
    auto pairs = mixed_pairs(mode == Mode::Strong ? 7 : 8, 60, 10);
    for (const auto& [p, q] : pairs) {
      BisimResult r = bisim(p, q, mode);
      const Partition& part = r.partition;
      REQUIRE(part.block_of.size() == r.lts.size());
      std::size_t covered = 0;
      for (const auto& b : part.blocks()) covered += b.size();
      CHECK(covered == r.lts.size());
      CHECK(r.equivalent == (part.block_of[r.lts.root_first()] == part.block_of[r.lts.root_second()]));
      if (mode != Mode::Strong) continue;
      // same block => same (action, block) signature
      std::map<std::uint32_t, std::set<std::pair<std::string, std::uint32_t>>> sig_of_block;
      auto sig = [&](const Lts& l, std::uint32_t s, std::uint32_t offset) {
        std::set<std::pair<std::string, std::uint32_t>> out;
        for (const auto& e : l.out(s)) out.insert({e.action.text(), part.block_of[e.dst + offset]});
        return out;
      };
      for (std::uint32_t s = 0; s < r.lts.size(); ++s) {
        bool first = s < r.lts.first.size();
        auto here = first ? sig(r.lts.first, s, 0)
                          : sig(r.lts.second, s - r.lts.root_second(), r.lts.root_second());
        auto [it, fresh] = sig_of_block.emplace(part.block_of[s], here);
        if (!fresh) CHECK(it->second == here);
      }
    }
  }
}

TEST_CASE("partition json") {
  BisimResult r = strong_bisim(P("a!b.0"), P("a!b.0 + a!b.0"));
  auto j = nlohmann::json::parse(r.partition_json());
  CHECK_FALSE(j.empty());
  CHECK(r.partition_json() == strong_bisim(P("a!b.0"), P("a!b.0 + a!b.0")).partition_json());
}

TEST_CASE("refinement agrees with the naive oracle") {
  for (Mode mode : {Mode::Strong, Mode::Weak}) {
    auto pairs = mixed_pairs(mode == Mode::Strong ? 17 : 18, 160, 10);
    int agree = 0, equivalent = 0;
    for (const auto& [p, q] : pairs) {
      bool fast = bisim(p, q, mode).equivalent;
      agree += fast == naive_bisim_oracle(p, q, mode);
      equivalent += fast;
    }
    CHECK(agree == static_cast<int>(pairs.size()));
    CHECK(equivalent > 40);
    CHECK(equivalent < 150);
    MESSAGE(std::string(to_string(mode)) << ": " << equivalent << " of " << pairs.size() << " pairs equivalent");
  }
}

TEST_CASE("strong implies weak") {
  for (const auto& [p, q] : mixed_pairs(27, 200, 10))
    if (strong_bisim(p, q).equivalent) CHECK(weak_bisim(p, q).equivalent);
}

TEST_CASE("strongly bisimilar terms have equal depth") {
  RandomTermGenerator gen(37, small_terms(11));
  std::mt19937_64 rng(37);
  for (int i = 0; i < 150; ++i) {
    Process p = gen.next();
    Process q = equivalent_variant(p, rng);
    REQUIRE(strong_bisim(p, q).equivalent);
    CHECK(lts_depth(p) == lts_depth(q));
  }
}

TEST_CASE("bisimilarity is compatible with parallel composition") {
  RandomTermGenerator gen(47, small_terms(8));
  std::mt19937_64 rng(47);
  for (int i = 0; i < 100; ++i) {
    Process p1 = gen.next(), p2 = gen.next();
    Process q1 = equivalent_variant(p1, rng), q2 = equivalent_variant(p2, rng);
    CHECK(strong_bisim(Process::par(p1, p2), Process::par(q1, q2)).equivalent);
    Process w1 = alpha_canonical(add_tau(p1, rng));
    if (weak_bisim(p1, w1).equivalent) CHECK(weak_bisim(Process::par(p1, p2), Process::par(w1, p2)).equivalent);
  }
}

TEST_CASE("components of a composite are strictly shallower") {
  RandomTermGenerator gen(57, small_terms(8));
  std::mt19937_64 rng(57);
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    Process p = gen.next(), q = gen.next();
    if (bisimilar_to_nil(p, Mode::Strong) || bisimilar_to_nil(q, Mode::Strong)) continue;
    Process r = equivalent_variant(Process::par(p, q), rng);
    unsigned dr = lts_depth(r);
    CHECK(lts_depth(p) < dr);
    CHECK(lts_depth(q) < dr);
    checked++;
  }
  CHECK(checked > 50);
}

TEST_CASE("behavior index agrees with refinement") {
  for (Mode mode : {Mode::Strong, Mode::Weak}) {
    RandomTermGenerator gen(mode == Mode::Strong ? 67 : 68, small_terms(8));
    std::vector<Process> terms;
    std::mt19937_64 rng(67);
    for (int i = 0; i < 40; ++i) {
      Process p = gen.next();
      terms.push_back(p);
      terms.push_back(equivalent_variant(p, rng));
      terms.push_back(alpha_canonical(add_tau(p, rng)));
    }
    NameUniverse u = NameUniverse::covering(terms);
    BehaviorIndex index(mode, u);
    std::vector<std::uint32_t> cls;
    for (const auto& t : terms) cls.push_back(index.class_of(t));
    for (std::size_t i = 0; i < terms.size(); i += 3)
      for (std::size_t j = i; j < std::min(terms.size(), i + 6); ++j)
        CHECK((cls[i] == cls[j]) == bisim(terms[i], terms[j], mode, u).equivalent);
    CHECK(index.class_of(P("0")) == index.nil_class());
  }
}
