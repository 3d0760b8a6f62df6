#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "pidec/process.hpp"

namespace pidec {

enum class ActionKind : std::uint8_t { FreeOut, BoundOut, In, Tau };

// x!y, x!(z), x?y or tau. For BoundOut, object is the extruded name.
struct Action {
  ActionKind kind = ActionKind::Tau;
  Name subject;
  Name object;

  static Action free_out(Name x, Name y) { return {ActionKind::FreeOut, x, y}; }
  static Action bound_out(Name x, Name z) { return {ActionKind::BoundOut, x, z}; }
  static Action in(Name x, Name y) { return {ActionKind::In, x, y}; }
  static Action tau() { return {}; }

  bool visible() const { return kind != ActionKind::Tau; }
  // length contribution: tau counts 2, visible actions 1
  unsigned weight() const { return visible() ? 1 : 2; }
  std::vector<Name> bound() const;
  std::vector<Name> names() const;
  std::string text() const;

  friend bool operator==(const Action&, const Action&) = default;
  friend auto operator<=>(const Action&, const Action&) = default;
};

enum class InputMode : std::uint8_t { Early, FreshOnly };

const char* to_string(InputMode mode);

// Inputs are instantiated with every known name, every fresh name already
// consumed on the path, and the next unused fresh name. FreshOnly keeps
// just the last of these.
struct NameUniverse {
  std::vector<Name> known;
  std::uint32_t fresh_pool = 16;
  InputMode mode = InputMode::Early;

  // Known names = free names of the given terms; pool large enough for any
  // execution of replication-free terms (or at least min_pool).
  static NameUniverse covering(const std::vector<Process>& terms, InputMode mode = InputMode::Early,
                               std::uint32_t min_pool = 0);
  void add_known(const std::vector<Name>& names);
};

// A process together with the number of fresh names consumed so far.
struct State {
  Process term;
  std::uint32_t consumed = 0;

  friend bool operator==(const State&, const State&) = default;
  friend auto operator<=>(const State&, const State&) = default;
};

struct StateHash {
  std::size_t operator()(const State& s) const noexcept { return s.term.hash() * 31 + s.consumed; }
};

struct Transition {
  Action action;
  Process target;
  std::uint32_t consumed = 0;

  State target_state() const { return {target, consumed}; }
  friend bool operator==(const Transition&, const Transition&) = default;
  friend auto operator<=>(const Transition&, const Transition&) = default;
};

// Early transitions of p, targets alpha-canonical, sorted and deduplicated.
// Throws Error(UniverseTooSmall) when the fresh pool runs out.
std::vector<Transition> transitions(const Process& p, const NameUniverse& u, std::uint32_t consumed = 0);
std::vector<Transition> transitions(const State& s, const NameUniverse& u);

struct WeakTransitions {
  std::vector<Transition> moves;     // (α, Q) with p =α=> Q; tau needs one step at least
  std::vector<State> tau_closure;    // p => P', reflexive
};

WeakTransitions weak_transitions(const Process& p, const NameUniverse& u, std::uint32_t consumed = 0);

}  // namespace pidec
