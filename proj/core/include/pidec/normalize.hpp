#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pidec/equivalence.hpp"

namespace pidec {

enum class HeadKind : std::uint8_t { Output, BoundOutput, Input, Tau };

struct GuardedPrefix {
  HeadKind kind = HeadKind::Tau;
  Name channel;
  Name object;  // datum, extruded name or input binder
  std::vector<Guard> guards;
};

struct Summand {
  GuardedPrefix prefix;
  Process continuation;
};

// Σ λi.Pi
struct HeadNormalForm {
  std::vector<Summand> summands;

  // Bound outputs become νz.x!z.P summands. Alpha-canonical.
  Process to_process() const;
};

// Expansion-law head normal form, strongly bisimilar to p.
// Throws NotFinite on replicated input.
HeadNormalForm expand_hnf(const Process& p);

struct StutterWitness {
  State from;
  State to;
};

// Searches the LTS of p for a tau edge between weakly bisimilar states.
std::optional<StutterWitness> find_stuttering(const Process& p, const NameUniverse& u);
bool has_stuttering(const Process& p, const NameUniverse& u);

struct NormalizationReport {
  Process input;
  Process result;
  bool equivalent_to_input = false;
  bool stutter_free = false;
  std::optional<StutterWitness> witness;

  bool ok() const { return equivalent_to_input && stutter_free; }
  std::string json() const;
};

// Runs the construction and verifies its output; never throws on a failed
// verification, the report records it instead.
NormalizationReport normalize_stuttering(const Process& p, const NameUniverse& u);

// As above, but throws Error(NormalizationIncomplete) unless verified.
Process stutter_free(const Process& p, const NameUniverse& u);

// Depth of the stutter-free representative.
unsigned weak_depth(const Process& p, const NameUniverse& u);

}  // namespace pidec
