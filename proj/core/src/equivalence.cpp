#include "pidec/equivalence.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "json.hpp"
#include "pidec/error.hpp"
#include "pidec/parser.hpp"

namespace pidec {

const char* to_string(Mode mode) { return mode == Mode::Strong ? "strong" : "weak"; }

std::vector<std::vector<std::uint32_t>> Partition::blocks() const {
  std::vector<std::vector<std::uint32_t>> out(block_count);
  for (std::uint32_t s = 0; s < block_of.size(); ++s) out[block_of[s]].push_back(s);
  return out;
}

const State& UnionLts::state(std::uint32_t s) const {
  return s < first.size() ? first.state(s) : second.state(static_cast<std::uint32_t>(s - first.size()));
}

namespace {

constexpr int kTau = 0;

// Labelled graph with interned action ids; id 0 is tau.
struct Graph {
  std::size_t n = 0;
  std::vector<std::vector<std::pair<int, std::uint32_t>>> adj;
};

class ActionIds {
 public:
  int operator()(const Action& a) {
    if (!a.visible()) return kTau;
    auto [it, inserted] = ids_.try_emplace(a, static_cast<int>(ids_.size()) + 1);
    return it->second;
  }

 private:
  std::map<Action, int> ids_;
};

void append(Graph& g, const Lts& l, ActionIds& ids) {
  auto offset = static_cast<std::uint32_t>(g.n);
  g.n += l.size();
  g.adj.resize(g.n);
  for (const auto& e : l.edges()) g.adj[offset + e.src].push_back({ids(e.action), offset + e.dst});
}

// Reflexive tau-closure of every state.
std::vector<std::vector<std::uint32_t>> tau_closures(const Graph& g) {
  std::vector<std::vector<std::uint32_t>> tc(g.n);
  std::vector<std::uint32_t> seen(g.n, UINT32_MAX);
  for (std::uint32_t s = 0; s < g.n; ++s) {
    std::vector<std::uint32_t> stack{s};
    seen[s] = s;
    while (!stack.empty()) {
      std::uint32_t x = stack.back();
      stack.pop_back();
      tc[s].push_back(x);
      for (auto [a, d] : g.adj[x])
        if (a == kTau && seen[d] != s) {
          seen[d] = s;
          stack.push_back(d);
        }
    }
    std::sort(tc[s].begin(), tc[s].end());
  }
  return tc;
}

// s =a=> t for visible a, and s => t (zero or more taus) for tau.
Graph saturate(const Graph& g) {
  auto tc = tau_closures(g);
  Graph out;
  out.n = g.n;
  out.adj.resize(g.n);
  for (std::uint32_t s = 0; s < g.n; ++s) {
    auto& edges = out.adj[s];
    for (std::uint32_t t : tc[s]) edges.push_back({kTau, t});
    for (std::uint32_t mid : tc[s])
      for (auto [a, d] : g.adj[mid])
        if (a != kTau)
          for (std::uint32_t t : tc[d]) edges.push_back({a, t});
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  }
  return out;
}

Partition refine(const Graph& g, Mode mode) {
  Partition part;
  part.mode = mode;
  part.block_of.assign(g.n, 0);
  part.block_count = g.n ? 1 : 0;
  using Signature = std::pair<std::uint32_t, std::vector<std::pair<int, std::uint32_t>>>;
  while (true) {
    std::map<Signature, std::uint32_t> ids;
    std::vector<std::uint32_t> next(g.n);
    for (std::uint32_t s = 0; s < g.n; ++s) {
      Signature sig{part.block_of[s], {}};
      for (auto [a, d] : g.adj[s]) sig.second.push_back({a, part.block_of[d]});
      std::sort(sig.second.begin(), sig.second.end());
      sig.second.erase(std::unique(sig.second.begin(), sig.second.end()), sig.second.end());
      auto [it, inserted] = ids.try_emplace(std::move(sig), static_cast<std::uint32_t>(ids.size()));
      next[s] = it->second;
    }
    auto count = static_cast<std::uint32_t>(ids.size());
    part.block_of = std::move(next);
    if (count == part.block_count) break;
    part.block_count = count;
  }
  // renumber blocks in order of first state
  std::vector<std::uint32_t> order(part.block_count, UINT32_MAX);
  std::uint32_t k = 0;
  for (auto& b : part.block_of) {
    if (order[b] == UINT32_MAX) order[b] = k++;
    b = order[b];
  }
  return part;
}

NameUniverse universe_for(const Process& p, const Process& q, const std::optional<NameUniverse>& u) {
  return u ? *u : NameUniverse::covering({p, q});
}

void require_finite(const Process& p) {
  if (!p.replication_free()) throw Error(ErrorKind::NotFinite, "term contains replication: " + pretty(p));
}

}  // namespace

Partition coarsest_partition(const Lts& l, Mode mode) {
  ActionIds ids;
  Graph g;
  append(g, l, ids);
  return refine(mode == Mode::Weak ? saturate(g) : g, mode);
}

BisimResult bisim(const Process& p, const Process& q, Mode mode, const std::optional<NameUniverse>& u) {
  require_finite(p);
  require_finite(q);
  NameUniverse uni = universe_for(p, q, u);
  BisimResult r{false, {build_lts(p, uni), build_lts(q, uni)}, {}};
  ActionIds ids;
  Graph g;
  append(g, r.lts.first, ids);
  append(g, r.lts.second, ids);
  r.partition = refine(mode == Mode::Weak ? saturate(g) : g, mode);
  r.equivalent = r.partition.block_of[r.lts.root_first()] == r.partition.block_of[r.lts.root_second()];
  return r;
}

BisimResult strong_bisim(const Process& p, const Process& q, const std::optional<NameUniverse>& u) {
  return bisim(p, q, Mode::Strong, u);
}

BisimResult weak_bisim(const Process& p, const Process& q, const std::optional<NameUniverse>& u) {
  return bisim(p, q, Mode::Weak, u);
}

std::string BisimResult::partition_json() const {
  nlohmann::ordered_json j;
  j["equivalent"] = equivalent;
  j["mode"] = to_string(partition.mode);
  auto& blocks = j["blocks"] = nlohmann::ordered_json::array();
  for (const auto& block : partition.blocks()) {
    auto arr = nlohmann::ordered_json::array();
    for (std::uint32_t s : block) {
      const State& st = lts.state(s);
      std::string text = pretty(st.term);
      if (st.consumed) text += "  [" + std::to_string(st.consumed) + " fresh]";
      arr.push_back((s < lts.first.size() ? "P: " : "Q: ") + text);
    }
    blocks.push_back(std::move(arr));
  }
  return j.dump(2);
}

bool naive_bisim_oracle(const Process& p, const Process& q, Mode mode, const std::optional<NameUniverse>& u,
                        std::size_t max_pairs) {
  require_finite(p);
  require_finite(q);
  NameUniverse uni = universe_for(p, q, u);
  Lts lp = build_lts(p, uni);
  Lts lq = build_lts(q, uni);
  std::vector<const State*> states;
  std::vector<std::vector<std::pair<Action, std::uint32_t>>> next;
  for (const Lts* l : {&lp, &lq}) {
    auto offset = static_cast<std::uint32_t>(states.size());
    for (std::uint32_t s = 0; s < l->size(); ++s) {
      states.push_back(&l->state(s));
      next.emplace_back();
      for (const auto& e : l->out(s)) next.back().push_back({e.action, offset + e.dst});
    }
  }
  const std::size_t n = states.size();
  if (n * n > max_pairs) throw Error(ErrorKind::TooLarge, "state-pair relation too large for the naive oracle");

  // answers[t] = list of (action, t') with t =a^=> t' (weak) or t -a-> t' (strong)
  std::vector<std::vector<std::pair<Action, std::uint32_t>>> answers(n);
  for (std::uint32_t t = 0; t < n; ++t) {
    if (mode == Mode::Strong) {
      answers[t] = next[t];
      continue;
    }
    std::vector<std::uint32_t> before{t};
    for (std::size_t i = 0; i < before.size(); ++i)
      for (const auto& [a, d] : next[before[i]])
        if (!a.visible() && std::find(before.begin(), before.end(), d) == before.end()) before.push_back(d);
    for (std::uint32_t b : before) answers[t].push_back({Action::tau(), b});
    for (std::uint32_t b : before)
      for (const auto& [a, d] : next[b]) {
        if (!a.visible()) continue;
        std::vector<std::uint32_t> after{d};
        for (std::size_t i = 0; i < after.size(); ++i)
          for (const auto& [a2, d2] : next[after[i]])
            if (!a2.visible() && std::find(after.begin(), after.end(), d2) == after.end()) after.push_back(d2);
        for (std::uint32_t x : after) answers[t].push_back({a, x});
      }
  }

  std::vector<char> rel(n * n, 1);
  auto related = [&](std::uint32_t a, std::uint32_t b) { return rel[a * n + b] != 0; };
  auto matched = [&](std::uint32_t s, std::uint32_t t) {
    for (const auto& [a, s2] : next[s]) {
      bool ok = false;
      for (const auto& [b, t2] : answers[t])
        if (b == a && related(s2, t2)) {
          ok = true;
          break;
        }
      if (!ok) return false;
    }
    return true;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::uint32_t s = 0; s < n; ++s)
      for (std::uint32_t t = 0; t < n; ++t) {
        if (!related(s, t)) continue;
        if (!matched(s, t) || !matched(t, s)) {
          rel[s * n + t] = 0;
          rel[t * n + s] = 0;
          changed = true;
        }
      }
  }
  return related(0, static_cast<std::uint32_t>(lp.size()));
}

bool bisimilar_to_nil(const Process& p, Mode mode, const std::optional<NameUniverse>& u) {
  require_finite(p);
  NameUniverse uni = u ? *u : NameUniverse::covering({p});
  if (mode == Mode::Strong) return transitions(p, uni).empty();
  std::vector<State> seen{{alpha_canonical(p), 0}};
  for (std::size_t i = 0; i < seen.size(); ++i) {
    for (const auto& t : transitions(seen[i], uni)) {
      if (t.action.visible()) return false;
      if (std::find(seen.begin(), seen.end(), t.target_state()) == seen.end()) seen.push_back(t.target_state());
    }
  }
  return true;
}

}  // namespace pidec
