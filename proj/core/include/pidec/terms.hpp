#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "pidec/process.hpp"

namespace pidec {

// Finite search space of terms. Size counts every syntax node, 0 included,
// with one extra per match guard. Enumeration is exhaustive modulo alpha
// conversion, associativity and commutativity of + and |, and the unit laws
// (no 0 operands, no vacuous restriction).
struct TermUniverse {
  std::vector<Name> names;
  unsigned max_size = 4;
  bool allow_restriction = true;
  bool allow_match = false;

  // True if p is in the enumeration (up to the normal form above).
  bool contains(const Process& p) const;
};

// Terms of size <= max_size in ascending size, deterministic order.
// The callback returns false to stop early.
void for_each_term(const TermUniverse& tu, const std::function<bool(const Process&)>& visit);
std::vector<Process> enumerate_terms(const TermUniverse& tu);
// Number of terms of each exact size 1..max_size.
std::vector<std::size_t> count_terms(const TermUniverse& tu);

struct RandomTermOptions {
  std::vector<Name> names;
  unsigned max_size = 10;
  bool allow_restriction = true;
  bool allow_match = false;
};

// Seeded generator of replication-free terms obeying the summation
// discipline. Binders are always distinct from free names.
class RandomTermGenerator {
 public:
  RandomTermGenerator(std::uint64_t seed, RandomTermOptions options);

  Process next();
  // A summation (0, prefix or sum).
  Process next_summation();
  std::mt19937_64& engine() { return rng_; }

 private:
  Process process(int budget, std::vector<Name>& scope);
  Process summation(int budget, std::vector<Name>& scope);
  Process prefixed(int budget, std::vector<Name>& scope);
  Name pick(const std::vector<Name>& scope);
  int uniform(int lo, int hi);

  std::mt19937_64 rng_;
  RandomTermOptions opt_;
  std::uint32_t next_binder_ = 0;
};

}  // namespace pidec
