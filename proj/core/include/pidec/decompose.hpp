#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "pidec/behavior_index.hpp"
#include "pidec/terms.hpp"

namespace pidec {

// Pushes every restriction inward: drops vacuous ones, pulls parallel
// components that do not mention the bound name out of its scope, and swaps
// nested restrictions when that lets one of them move further in.
Process scope_narrow(const Process& p);

// Top-level parallel components, left to right.
std::vector<Process> flatten_par(const Process& p);

// Removes 0 operands of + and |.
Process prune_nil(const Process& p);

struct Decomposition {
  Mode mode = Mode::Strong;
  // Factors carry the fresh names they may mention (rare; see README).
  std::vector<State> factors;
  bool verified_equivalent = false;

  std::vector<std::string> texts() const;
};

struct SplitResult {
  enum class Status { SplitFound, NoSplitWithinUniverse, Aborted };
  Status status = Status::NoSplitWithinUniverse;
  std::optional<State> left;
  std::optional<State> right;
  std::size_t progress = 0;  // universe terms examined by the fallback search
};

const char* to_string(SplitResult::Status status);

struct Matching {
  bool equal = false;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::optional<std::size_t> unmatched_left;
  std::optional<std::size_t> unmatched_right;
};

// Decomposition engine with memoized behaviour classes. A split of a factor
// C into q | r exists only if q and r are equivalent to states reachable
// from C, so searching pairs of derivative classes is complete.
class Decomposer {
 public:
  Decomposer(Mode mode, NameUniverse universe);

  Mode mode() const { return index_.mode(); }
  BehaviorIndex& index() { return index_; }
  const NameUniverse& universe() const { return index_.universe(); }

  Decomposition decompose(const Process& p);
  Decomposition decompose(const State& s);

  // A split of a single factor, or nullopt if it is indecomposable.
  std::optional<std::pair<State, State>> split(const State& s);
  std::vector<std::pair<State, State>> all_splits(const State& s);

  // Sorted class ids of the factors of s.
  std::vector<std::uint32_t> factor_classes(const State& s);

  // Parallel composition with the fresh names of each part (above base)
  // moved apart; the resulting counter covers all of them.
  State compose(const std::vector<State>& parts, std::uint32_t base);

  // If set, every alternative split of every factor is checked to produce
  // the same factor classes; mismatches are recorded here.
  bool check_alternatives = false;
  std::vector<std::string> alternative_mismatches;

 private:
  struct Candidate {
    State rep;
    std::uint32_t cls;
    unsigned depth;
  };

  std::vector<State> factors_of(const State& s);
  std::vector<State> factor(const State& s);
  std::vector<Candidate> candidates(const State& s);
  std::vector<std::pair<State, State>> splits(const State& s, bool first_only);
  State prepare(const State& s);
  unsigned depth_of(const State& s);

  BehaviorIndex index_;
  std::unordered_map<std::uint32_t, std::vector<State>> factor_memo_;
  std::unordered_map<State, unsigned, StateHash> depth_memo_;
};

// Narrow, flatten, drop factors equivalent to 0, and split the rest.
// Weak mode works on stutter-free representatives and may throw
// Error(NormalizationIncomplete).
Decomposition decomposition(const Process& p, Mode mode, const std::optional<NameUniverse>& u = std::nullopt);

// Searches tu for q, r, neither equivalent to 0, with q | r equivalent to p.
SplitResult find_split(const Process& p, Mode mode, const TermUniverse& tu, std::size_t budget = 1'000'000,
                       InputMode inputs = InputMode::Early);

// Perfect matching between factors up to bisimilarity of the given mode.
Matching multiset_eq_mod_bisim(const Decomposition& a, const Decomposition& b,
                               const std::optional<NameUniverse>& u = std::nullopt);

struct UpdVerdict {
  bool equivalent = false;  // p and q equivalent; otherwise nothing to check
  bool unique = true;       // decompositions matched (vacuously true if not equivalent)
  Decomposition left;
  Decomposition right;
  Matching matching;
};

UpdVerdict verify_upd(const Process& p, const Process& q, Mode mode,
                      const std::optional<NameUniverse>& u = std::nullopt);

struct SweepViolation {
  std::string kind;  // "mismatch", "unsound" or "alternative"
  std::string first;
  std::string second;
  std::string detail;
};

struct SweepReport {
  Mode mode = Mode::Strong;
  InputMode inputs = InputMode::Early;
  std::size_t terms = 0;
  std::size_t classes = 0;
  std::size_t equivalent_pairs = 0;  // unordered pairs of distinct equivalent terms
  std::size_t nontrivial_classes = 0;
  std::size_t violation_count = 0;
  std::vector<SweepViolation> violations;  // first few, for the report
};

SweepReport sweep_upd(const TermUniverse& tu, Mode mode, InputMode inputs,
                      const std::function<void(std::size_t)>& progress = {});

}  // namespace pidec
