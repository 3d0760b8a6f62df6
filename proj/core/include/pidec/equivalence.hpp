#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pidec/lts.hpp"

namespace pidec {

enum class Mode : std::uint8_t { Strong, Weak };

const char* to_string(Mode mode);

// Blocks of a state set. block_of[s] is the block index of state s.
struct Partition {
  Mode mode = Mode::Strong;
  std::vector<std::uint32_t> block_of;
  std::uint32_t block_count = 0;

  std::vector<std::vector<std::uint32_t>> blocks() const;
};

// Two LTSs placed side by side: states of the second are offset by first.size().
struct UnionLts {
  Lts first;
  Lts second;

  std::size_t size() const { return first.size() + second.size(); }
  std::uint32_t root_first() const { return 0; }
  std::uint32_t root_second() const { return static_cast<std::uint32_t>(first.size()); }
  const State& state(std::uint32_t s) const;
};

struct BisimResult {
  bool equivalent = false;
  UnionLts lts;
  Partition partition;

  // {"equivalent": b, "mode": m, "blocks": [[state text, ...], ...]}
  std::string partition_json() const;
};

// Coarsest bisimulation partition of a single LTS.
Partition coarsest_partition(const Lts& l, Mode mode);

// Both terms are explored under one universe (covering both if omitted).
// Throws NotFinite on replicated input.
BisimResult strong_bisim(const Process& p, const Process& q, const std::optional<NameUniverse>& u = std::nullopt);
BisimResult weak_bisim(const Process& p, const Process& q, const std::optional<NameUniverse>& u = std::nullopt);
BisimResult bisim(const Process& p, const Process& q, Mode mode, const std::optional<NameUniverse>& u = std::nullopt);

// Greatest fixpoint over all state pairs, written independently of the
// refinement code. Throws TooLarge when the pair count exceeds max_pairs.
bool naive_bisim_oracle(const Process& p, const Process& q, Mode mode,
                        const std::optional<NameUniverse>& u = std::nullopt, std::size_t max_pairs = 4'000'000);

bool bisimilar_to_nil(const Process& p, Mode mode, const std::optional<NameUniverse>& u = std::nullopt);

}  // namespace pidec
