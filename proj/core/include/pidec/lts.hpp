#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pidec/semantics.hpp"

namespace pidec {

struct Edge {
  std::uint32_t src = 0;
  Action action;
  std::uint32_t dst = 0;
};

// Reachable transition graph. State 0 is the root. Edges are grouped by
// source in state order.
class Lts {
 public:
  std::uint32_t root() const { return 0; }
  std::size_t size() const { return states_.size(); }
  const State& state(std::uint32_t s) const { return states_[s]; }
  const std::vector<State>& states() const { return states_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const Edge> out(std::uint32_t s) const;

  // Set on states whose outgoing transitions were not all explored.
  bool truncated(std::uint32_t s) const { return truncated_[s] != 0; }
  bool truncated() const { return any_truncated_; }

 private:
  friend class LtsBuilder;
  std::vector<State> states_;
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> offsets_;
  std::vector<std::uint8_t> truncated_;
  bool any_truncated_ = false;
};

// Throws Error(NotFinite) if p contains replication.
Lts build_lts(const Process& p, const NameUniverse& u, std::uint32_t consumed = 0);

// Explores only paths of total weight <= max_weight.
Lts build_lts_bounded(const Process& p, const NameUniverse& u, unsigned max_weight, std::uint32_t consumed = 0);

// Longest weighted path from the root. Throws CyclicLts, or Inconclusive
// on a truncated graph.
unsigned depth(const Lts& l);
// Longest weighted path from every state.
std::vector<unsigned> depths(const Lts& l);

// Shortest weighted path to a deadlocked state; nullopt means infinity.
// Throws Inconclusive if the graph is truncated and no deadlock was found.
std::optional<unsigned> norm(const Lts& l);

bool is_deadlocked(const Lts& l, std::uint32_t s);

std::string to_dot(const Lts& l);
std::string to_json(const Lts& l);

}  // namespace pidec
