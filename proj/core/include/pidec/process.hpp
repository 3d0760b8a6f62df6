#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pidec/name.hpp"

namespace pidec {

enum class PrefixKind : std::uint8_t { Output, Input, Tau };

// [lhs=rhs]
struct Guard {
  Name lhs;
  Name rhs;
  friend bool operator==(const Guard&, const Guard&) = default;
  friend auto operator<=>(const Guard&, const Guard&) = default;
};

// A basic prefix with its (outermost first) match guards.
// For Output, object is the datum; for Input it is the binder.
struct Prefix {
  PrefixKind kind = PrefixKind::Tau;
  Name channel;
  Name object;
  std::vector<Guard> guards;

  static Prefix output(Name chan, Name datum) { return {PrefixKind::Output, chan, datum, {}}; }
  static Prefix input(Name chan, Name binder) { return {PrefixKind::Input, chan, binder, {}}; }
  static Prefix tau() { return {}; }
  Prefix guarded(Name lhs, Name rhs) const;

  bool binds() const { return kind == PrefixKind::Input; }
  bool guards_hold() const;

  friend bool operator==(const Prefix&, const Prefix&) = default;
  friend auto operator<=>(const Prefix&, const Prefix&) = default;
};

enum class ProcessKind : std::uint8_t { Nil, Prefixed, Sum, Par, Restrict, Repl };

namespace detail {
struct ProcessNode;
}

// Immutable, structurally shared process term.
class Process {
 public:
  Process();  // 0

  static Process nil();
  static Process prefixed(Prefix prefix, Process continuation);
  static Process sum(Process left, Process right);
  static Process par(Process left, Process right);
  static Process restrict(Name binder, Process body);
  static Process repl(Process body);

  // Left-associated folds; empty input gives 0.
  static Process sum_of(std::span<const Process> summands);
  static Process par_of(std::span<const Process> components);

  ProcessKind kind() const;
  bool is_nil() const { return kind() == ProcessKind::Nil; }
  const Prefix& prefix() const;
  Name binder() const;
  const Process& left() const;
  const Process& right() const;
  // Continuation of a prefix, body of a restriction or replication.
  const Process& body() const;

  const std::vector<Name>& free_names() const;
  bool has_free(Name n) const;
  std::size_t size() const;
  std::size_t hash() const;
  // One past the largest bound-namespace index occurring in the term.
  std::uint32_t bound_watermark() const;
  bool replication_free() const;
  // Number of prefix nodes; bounds the length of any execution of a
  // replication-free term.
  std::uint32_t prefix_count() const;

  const void* identity() const { return node_.get(); }

  friend bool operator==(const Process& a, const Process& b);
  friend std::strong_ordering operator<=>(const Process& a, const Process& b);

 private:
  friend struct detail::ProcessNode;
  struct EmptyTag {};
  explicit Process(EmptyTag) {}
  static Process binary(ProcessKind kind, Process left, Process right);
  explicit Process(std::shared_ptr<const detail::ProcessNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const detail::ProcessNode> node_;
};

struct Diagnostic {
  enum class Code { MalformedSum, BadBinder };
  Code code;
  std::string message;
  Process subterm;
};

// fn(p), sorted.
std::vector<Name> free_names(const Process& p);
// bn(p): every binder occurring in p, sorted.
std::vector<Name> bound_names(const Process& p);
// n(p) = fn(p) ∪ bn(p), computed in one pass.
std::vector<Name> all_names(const Process& p);

// p{replacement/target}, capture-avoiding.
Process substitute(const Process& p, Name replacement, Name target);
// Simultaneous capture-avoiding renaming of free names.
Process rename(const Process& p, const std::vector<std::pair<Name, Name>>& mapping);

// Binders renumbered Name::bound(k), k = base, base+1, ... in preorder, where
// base is one past the largest free bound-namespace name.
Process alpha_canonical(const Process& p);
bool alpha_equivalent(const Process& a, const Process& b);

bool is_replication_free(const Process& p);
std::optional<Diagnostic> validate(const Process& p);

// True if p is a bound-output summand νz.x̄z.P.
bool is_bound_output_summand(const Process& p);

}  // namespace pidec

template <>
struct std::hash<pidec::Process> {
  std::size_t operator()(const pidec::Process& p) const noexcept { return p.hash(); }
};
