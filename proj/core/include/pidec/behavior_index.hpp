#pragma once

#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "pidec/equivalence.hpp"

namespace pidec {

// Assigns every state of a replication-free process a class id such that
// two states share an id iff they are bisimilar in the chosen mode. Ids are
// stable for the lifetime of the index, and results are memoized across
// queries, so it suits sweeps over many related terms.
class BehaviorIndex {
 public:
  BehaviorIndex(Mode mode, NameUniverse universe);

  Mode mode() const { return mode_; }
  const NameUniverse& universe() const { return universe_; }

  std::uint32_t class_of(const Process& p, std::uint32_t consumed = 0);
  std::uint32_t class_of(const State& s);
  std::uint32_t nil_class() const { return nil_class_; }
  bool equivalent(const State& a, const State& b) { return class_of(a) == class_of(b); }

  std::size_t cached_states() const { return memo_.size(); }
  std::size_t class_count() const { return next_class_; }
  void clear_cache() { memo_.clear(); }

 private:
  using Sig = std::vector<std::pair<int, std::uint32_t>>;
  struct Info {
    std::uint32_t cls = 0;
    std::vector<std::uint32_t> tau_reach;  // classes reachable by zero or more taus
    Sig weak_visible;                      // (a, class) pairs with s =a=> t
  };

  int action_id(const Action& a);
  const Info& info(const State& s);
  Info compute(const State& s);

  Mode mode_;
  NameUniverse universe_;
  std::unordered_map<State, Info, StateHash> memo_;
  std::map<Action, int> actions_;
  std::map<Sig, std::uint32_t> classes_;
  std::vector<Sig> keys_;
  std::uint32_t next_class_ = 0;
  std::uint32_t nil_class_ = 0;
};

}  // namespace pidec
