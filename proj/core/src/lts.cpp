#include "pidec/lts.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <unordered_map>

#include "json.hpp"
#include "pidec/error.hpp"
#include "pidec/parser.hpp"

namespace pidec {

std::span<const Edge> Lts::out(std::uint32_t s) const {
  return {edges_.data() + offsets_[s], edges_.data() + offsets_[s + 1]};
}

class LtsBuilder {
 public:
  LtsBuilder(const NameUniverse& u) : u_(u) {}

  Lts full(const Process& p, std::uint32_t consumed) {
    add({alpha_canonical(p), consumed});
    for (std::uint32_t s = 0; s < lts_.states_.size(); ++s) {
      lts_.offsets_.push_back(static_cast<std::uint32_t>(lts_.edges_.size()));
      for (auto& t : transitions(lts_.states_[s], u_)) {
        std::uint32_t d = add(t.target_state());
        lts_.edges_.push_back({s, t.action, d});
      }
    }
    return finish();
  }

  Lts bounded(const Process& p, unsigned max_weight, std::uint32_t consumed) {
    add({alpha_canonical(p), consumed});
    std::vector<unsigned> dist{0};
    std::vector<std::uint8_t> done;
    using Item = std::pair<unsigned, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    queue.push({0, 0});
    std::vector<std::vector<Edge>> adj;
    while (!queue.empty()) {
      auto [d, s] = queue.top();
      queue.pop();
      if (s < done.size() && done[s]) continue;
      if (done.size() <= s) done.resize(s + 1, 0);
      done[s] = 1;
      auto ts = transitions(lts_.states_[s], u_);
      if (adj.size() <= s) adj.resize(s + 1);
      for (auto& t : ts) {
        if (d + t.action.weight() > max_weight) {
          mark_truncated(s);
          continue;
        }
        std::uint32_t target = add(t.target_state());
        if (dist.size() <= target) dist.resize(target + 1, std::numeric_limits<unsigned>::max());
        unsigned nd = d + t.action.weight();
        if (nd < dist[target]) {
          dist[target] = nd;
          queue.push({nd, target});
        }
        adj[s].push_back({s, t.action, target});
      }
    }
    adj.resize(lts_.states_.size());
    for (std::uint32_t s = 0; s < adj.size(); ++s) {
      lts_.offsets_.push_back(static_cast<std::uint32_t>(lts_.edges_.size()));
      for (auto& e : adj[s]) lts_.edges_.push_back(e);
    }
    return finish();
  }

 private:
  const NameUniverse& u_;
  Lts lts_;
  std::unordered_map<State, std::uint32_t, StateHash> index_;

  std::uint32_t add(const State& s) {
    auto [it, inserted] = index_.try_emplace(s, static_cast<std::uint32_t>(lts_.states_.size()));
    if (inserted) {
      lts_.states_.push_back(s);
      lts_.truncated_.push_back(0);
    }
    return it->second;
  }

  void mark_truncated(std::uint32_t s) {
    lts_.truncated_[s] = 1;
    lts_.any_truncated_ = true;
  }

  Lts finish() {
    while (lts_.offsets_.size() < lts_.states_.size() + 1)
      lts_.offsets_.push_back(static_cast<std::uint32_t>(lts_.edges_.size()));
    return std::move(lts_);
  }
};

Lts build_lts(const Process& p, const NameUniverse& u, std::uint32_t consumed) {
  if (!p.replication_free()) throw Error(ErrorKind::NotFinite, "term contains replication: " + pretty(p));
  return LtsBuilder(u).full(p, consumed);
}

Lts build_lts_bounded(const Process& p, const NameUniverse& u, unsigned max_weight, std::uint32_t consumed) {
  return LtsBuilder(u).bounded(p, max_weight, consumed);
}

std::vector<unsigned> depths(const Lts& l) {
  if (l.truncated()) throw Error(ErrorKind::Inconclusive, "depth of a truncated graph is not determined");
  const std::size_t n = l.size();
  std::vector<unsigned> result(n, 0);
  std::vector<std::uint8_t> colour(n, 0);
  std::vector<std::pair<std::uint32_t, std::size_t>> stack;
  for (std::uint32_t start = 0; start < n; ++start) {
    if (colour[start]) continue;
    stack.push_back({start, 0});
    colour[start] = 1;
    while (!stack.empty()) {
      auto& [s, i] = stack.back();
      auto out = l.out(s);
      if (i < out.size()) {
        std::uint32_t d = out[i++].dst;
        if (colour[d] == 1) throw Error(ErrorKind::CyclicLts, "transition graph has a cycle");
        if (colour[d] == 0) {
          colour[d] = 1;
          stack.push_back({d, 0});
        }
        continue;
      }
      unsigned best = 0;
      for (const auto& e : out) best = std::max(best, e.action.weight() + result[e.dst]);
      result[s] = best;
      colour[s] = 2;
      stack.pop_back();
    }
  }
  return result;
}

unsigned depth(const Lts& l) { return depths(l)[l.root()]; }

bool is_deadlocked(const Lts& l, std::uint32_t s) { return l.out(s).empty() && !l.truncated(s); }

std::optional<unsigned> norm(const Lts& l) {
  const unsigned inf = std::numeric_limits<unsigned>::max();
  std::vector<unsigned> dist(l.size(), inf);
  using Item = std::pair<unsigned, std::uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[l.root()] = 0;
  queue.push({0, l.root()});
  while (!queue.empty()) {
    auto [d, s] = queue.top();
    queue.pop();
    if (d != dist[s]) continue;
    if (is_deadlocked(l, s)) return d;
    for (const auto& e : l.out(s)) {
      unsigned nd = d + e.action.weight();
      if (nd < dist[e.dst]) {
        dist[e.dst] = nd;
        queue.push({nd, e.dst});
      }
    }
  }
  if (l.truncated()) throw Error(ErrorKind::Inconclusive, "no deadlocked state within the explored bound");
  return std::nullopt;
}

namespace {

std::string state_label(const State& s) {
  std::string text = pretty(s.term);
  if (s.consumed) text += "  [" + std::to_string(s.consumed) + " fresh]";
  return text;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string to_dot(const Lts& l) {
  std::string out = "digraph lts {\n  rankdir=LR;\n  node [shape=box, fontname=\"monospace\"];\n";
  for (std::uint32_t s = 0; s < l.size(); ++s) {
    out += "  s" + std::to_string(s) + " [label=\"" + escape(state_label(l.state(s))) + "\"";
    if (s == l.root()) out += ", penwidth=2";
    if (l.truncated(s)) out += ", style=dashed";
    out += "];\n";
  }
  for (const auto& e : l.edges())
    out += "  s" + std::to_string(e.src) + " -> s" + std::to_string(e.dst) + " [label=\"" +
           escape(e.action.text()) + "\"];\n";
  out += "}\n";
  return out;
}

std::string to_json(const Lts& l) {
  nlohmann::ordered_json j;
  j["root"] = l.root();
  j["truncated"] = l.truncated();
  auto& states = j["states"] = nlohmann::ordered_json::array();
  for (std::uint32_t s = 0; s < l.size(); ++s) {
    nlohmann::ordered_json st;
    st["id"] = s;
    st["term"] = pretty(l.state(s).term);
    st["fresh_consumed"] = l.state(s).consumed;
    st["deadlocked"] = is_deadlocked(l, s);
    if (l.truncated(s)) st["truncated"] = true;
    states.push_back(std::move(st));
  }
  auto& edges = j["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : l.edges()) edges.push_back({{"src", e.src}, {"action", e.action.text()}, {"dst", e.dst}});
  return j.dump(2);
}

}  // namespace pidec
