#include "pidec/process.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace pidec {

namespace detail {

struct ProcessNode {
  ProcessKind kind = ProcessKind::Nil;
  Prefix prefix;
  Name binder;
  Process child0{Process::EmptyTag{}};
  Process child1{Process::EmptyTag{}};
  std::vector<Name> free;
  std::size_t size = 1;
  std::size_t hash = 0;
  std::uint32_t watermark = 0;
  std::uint32_t prefixes = 0;
  bool repl_free = true;
};

}  // namespace detail

namespace {

using detail::ProcessNode;

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::uint32_t mark(Name n) { return n.is_bound() ? n.index() + 1 : 0; }

void insert_sorted(std::vector<Name>& v, Name n) {
  auto it = std::lower_bound(v.begin(), v.end(), n);
  if (it == v.end() || *it != n) v.insert(it, n);
}

void erase_sorted(std::vector<Name>& v, Name n) {
  auto it = std::lower_bound(v.begin(), v.end(), n);
  if (it != v.end() && *it == n) v.erase(it);
}

std::vector<Name> merge(const std::vector<Name>& a, const std::vector<Name>& b) {
  std::vector<Name> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

const Process& nil_singleton() {
  static const Process instance = Process::nil();
  return instance;
}

}  // namespace

Prefix Prefix::guarded(Name lhs, Name rhs) const {
  Prefix out = *this;
  out.guards.insert(out.guards.begin(), Guard{lhs, rhs});
  return out;
}

bool Prefix::guards_hold() const {
  return std::all_of(guards.begin(), guards.end(), [](const Guard& g) { return g.lhs == g.rhs; });
}

Process::Process() : node_(nil_singleton().node_) {}

Process Process::nil() {
  static const auto node = [] {
    auto n = std::make_shared<ProcessNode>();
    n->hash = 0x51ed;
    return n;
  }();
  return Process(std::shared_ptr<const ProcessNode>(node));
}

Process Process::prefixed(Prefix prefix, Process continuation) {
  auto n = std::make_shared<ProcessNode>();
  n->kind = ProcessKind::Prefixed;
  const auto& c = *continuation.node_;
  n->free = c.free;
  if (prefix.kind == PrefixKind::Input) erase_sorted(n->free, prefix.object);
  if (prefix.kind == PrefixKind::Output) insert_sorted(n->free, prefix.object);
  if (prefix.kind != PrefixKind::Tau) insert_sorted(n->free, prefix.channel);
  std::size_t h = mix(0x7e11, static_cast<std::size_t>(prefix.kind));
  std::uint32_t wm = c.watermark;
  for (const auto& g : prefix.guards) {
    insert_sorted(n->free, g.lhs);
    insert_sorted(n->free, g.rhs);
    h = mix(mix(h, g.lhs.raw()), g.rhs.raw());
    wm = std::max({wm, mark(g.lhs), mark(g.rhs)});
  }
  if (prefix.kind != PrefixKind::Tau) {
    h = mix(mix(h, prefix.channel.raw()), prefix.object.raw());
    wm = std::max({wm, mark(prefix.channel), mark(prefix.object)});
  }
  n->hash = mix(h, c.hash);
  n->size = 1 + prefix.guards.size() + c.size;
  n->watermark = wm;
  n->prefixes = 1 + c.prefixes;
  n->repl_free = c.repl_free;
  n->prefix = std::move(prefix);
  n->child0 = std::move(continuation);
  return Process(std::move(n));
}

Process Process::binary(ProcessKind kind, Process left, Process right) {
  auto n = std::make_shared<ProcessNode>();
  n->kind = kind;
  const auto& l = *left.node_;
  const auto& r = *right.node_;
  n->free = merge(l.free, r.free);
  n->hash = mix(mix(static_cast<std::size_t>(kind) * 0x2545f491, l.hash), r.hash);
  n->size = 1 + l.size + r.size;
  n->watermark = std::max(l.watermark, r.watermark);
  n->prefixes = l.prefixes + r.prefixes;
  n->repl_free = l.repl_free && r.repl_free;
  n->child0 = std::move(left);
  n->child1 = std::move(right);
  return Process(std::move(n));
}

Process Process::sum(Process left, Process right) { return binary(ProcessKind::Sum, std::move(left), std::move(right)); }
Process Process::par(Process left, Process right) { return binary(ProcessKind::Par, std::move(left), std::move(right)); }

Process Process::restrict(Name binder, Process body) {
  auto n = std::make_shared<ProcessNode>();
  n->kind = ProcessKind::Restrict;
  const auto& b = *body.node_;
  n->free = b.free;
  erase_sorted(n->free, binder);
  n->hash = mix(mix(0x4e57, binder.raw()), b.hash);
  n->size = 1 + b.size;
  n->watermark = std::max(b.watermark, mark(binder));
  n->prefixes = b.prefixes;
  n->repl_free = b.repl_free;
  n->binder = binder;
  n->child0 = std::move(body);
  return Process(std::move(n));
}

Process Process::repl(Process body) {
  auto n = std::make_shared<ProcessNode>();
  n->kind = ProcessKind::Repl;
  const auto& b = *body.node_;
  n->free = b.free;
  n->hash = mix(0x2e91, b.hash);
  n->size = 1 + b.size;
  n->watermark = b.watermark;
  n->prefixes = b.prefixes;
  n->repl_free = false;
  n->child0 = std::move(body);
  return Process(std::move(n));
}

Process Process::sum_of(std::span<const Process> summands) {
  if (summands.empty()) return nil();
  Process acc = summands[0];
  for (std::size_t i = 1; i < summands.size(); ++i) acc = sum(acc, summands[i]);
  return acc;
}

Process Process::par_of(std::span<const Process> components) {
  if (components.empty()) return nil();
  Process acc = components[0];
  for (std::size_t i = 1; i < components.size(); ++i) acc = par(acc, components[i]);
  return acc;
}

ProcessKind Process::kind() const { return node_->kind; }
const Prefix& Process::prefix() const { return node_->prefix; }
Name Process::binder() const { return node_->binder; }
const Process& Process::left() const { return node_->child0; }
const Process& Process::right() const { return node_->child1; }
const Process& Process::body() const { return node_->child0; }
const std::vector<Name>& Process::free_names() const { return node_->free; }
bool Process::has_free(Name n) const { return std::binary_search(node_->free.begin(), node_->free.end(), n); }
std::size_t Process::size() const { return node_->size; }
std::size_t Process::hash() const { return node_->hash; }
std::uint32_t Process::bound_watermark() const { return node_->watermark; }
bool Process::replication_free() const { return node_->repl_free; }
std::uint32_t Process::prefix_count() const { return node_->prefixes; }

bool operator==(const Process& a, const Process& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.hash != y.hash || x.kind != y.kind || x.size != y.size) return false;
  switch (x.kind) {
    case ProcessKind::Nil:
      return true;
    case ProcessKind::Prefixed:
      return x.prefix == y.prefix && x.child0 == y.child0;
    case ProcessKind::Sum:
    case ProcessKind::Par:
      return x.child0 == y.child0 && x.child1 == y.child1;
    case ProcessKind::Restrict:
      return x.binder == y.binder && x.child0 == y.child0;
    case ProcessKind::Repl:
      return x.child0 == y.child0;
  }
  return false;
}

std::strong_ordering operator<=>(const Process& a, const Process& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (auto c = x.kind <=> y.kind; c != 0) return c;
  switch (x.kind) {
    case ProcessKind::Nil:
      return std::strong_ordering::equal;
    case ProcessKind::Prefixed:
      if (auto c = x.prefix <=> y.prefix; c != 0) return c;
      return x.child0 <=> y.child0;
    case ProcessKind::Sum:
    case ProcessKind::Par:
      if (auto c = x.child0 <=> y.child0; c != 0) return c;
      return x.child1 <=> y.child1;
    case ProcessKind::Restrict:
      if (auto c = x.binder <=> y.binder; c != 0) return c;
      return x.child0 <=> y.child0;
    case ProcessKind::Repl:
      return x.child0 <=> y.child0;
  }
  return std::strong_ordering::equal;
}

std::vector<Name> free_names(const Process& p) { return p.free_names(); }

namespace {

void collect_bound(const Process& p, std::vector<Name>& out) {
  switch (p.kind()) {
    case ProcessKind::Nil:
      return;
    case ProcessKind::Prefixed:
      if (p.prefix().binds()) out.push_back(p.prefix().object);
      collect_bound(p.body(), out);
      return;
    case ProcessKind::Sum:
    case ProcessKind::Par:
      collect_bound(p.left(), out);
      collect_bound(p.right(), out);
      return;
    case ProcessKind::Restrict:
      out.push_back(p.binder());
      collect_bound(p.body(), out);
      return;
    case ProcessKind::Repl:
      collect_bound(p.body(), out);
      return;
  }
}

void collect_all(const Process& p, std::vector<Name>& out) {
  switch (p.kind()) {
    case ProcessKind::Nil:
      return;
    case ProcessKind::Prefixed: {
      const auto& pi = p.prefix();
      for (const auto& g : pi.guards) {
        out.push_back(g.lhs);
        out.push_back(g.rhs);
      }
      if (pi.kind != PrefixKind::Tau) {
        out.push_back(pi.channel);
        out.push_back(pi.object);
      }
      collect_all(p.body(), out);
      return;
    }
    case ProcessKind::Sum:
    case ProcessKind::Par:
      collect_all(p.left(), out);
      collect_all(p.right(), out);
      return;
    case ProcessKind::Restrict:
      out.push_back(p.binder());
      collect_all(p.body(), out);
      return;
    case ProcessKind::Repl:
      collect_all(p.body(), out);
      return;
  }
}

void sort_unique(std::vector<Name>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

using Mapping = std::vector<std::pair<Name, Name>>;

Name lookup(const Mapping& m, Name n) {
  for (auto it = m.rbegin(); it != m.rend(); ++it)
    if (it->first == n) return it->second;
  return n;
}

struct Renamer {
  std::uint32_t next;

  // Rename free names of p per m (innermost entries last).
  Process run(const Process& p, Mapping& m) {
    bool touched = false;
    for (const auto& [from, to] : m)
      if (from != to && p.has_free(from)) {
        touched = true;
        break;
      }
    if (!touched) return p;
    switch (p.kind()) {
      case ProcessKind::Nil:
        return p;
      case ProcessKind::Prefixed: {
        Prefix pi = p.prefix();
        for (auto& g : pi.guards) {
          g.lhs = lookup(m, g.lhs);
          g.rhs = lookup(m, g.rhs);
        }
        if (pi.kind == PrefixKind::Tau) return Process::prefixed(std::move(pi), run(p.body(), m));
        pi.channel = lookup(m, pi.channel);
        if (pi.kind == PrefixKind::Output) {
          pi.object = lookup(m, pi.object);
          return Process::prefixed(std::move(pi), run(p.body(), m));
        }
        Name b = under_binder(p.body(), pi.object, m);
        Process body = run(p.body(), m);
        m.pop_back();
        pi.object = b;
        return Process::prefixed(std::move(pi), std::move(body));
      }
      case ProcessKind::Sum:
        return Process::sum(run(p.left(), m), run(p.right(), m));
      case ProcessKind::Par:
        return Process::par(run(p.left(), m), run(p.right(), m));
      case ProcessKind::Restrict: {
        Name b = under_binder(p.body(), p.binder(), m);
        Process body = run(p.body(), m);
        m.pop_back();
        return Process::restrict(b, std::move(body));
      }
      case ProcessKind::Repl:
        return Process::repl(run(p.body(), m));
    }
    return p;
  }

  // Push a scope entry for binder b and return the binder to use.
  Name under_binder(const Process& body, Name b, Mapping& m) {
    bool clash = false;
    for (Name f : body.free_names()) {
      if (f == b) continue;
      if (lookup(m, f) == b) {
        clash = true;
        break;
      }
    }
    Name nb = clash ? Name::bound(next++) : b;
    m.emplace_back(b, nb);
    return nb;
  }
};

struct Canonicalizer {
  std::uint32_t next;
  Mapping env;

  Process run(const Process& p) {
    switch (p.kind()) {
      case ProcessKind::Nil:
        return p;
      case ProcessKind::Prefixed: {
        const Prefix& old = p.prefix();
        Prefix pi = old;
        for (auto& g : pi.guards) {
          g.lhs = lookup(env, g.lhs);
          g.rhs = lookup(env, g.rhs);
        }
        if (pi.kind != PrefixKind::Tau) pi.channel = lookup(env, pi.channel);
        if (pi.kind == PrefixKind::Output) pi.object = lookup(env, pi.object);
        Process body;
        if (pi.kind == PrefixKind::Input) {
          Name b = Name::bound(next++);
          env.emplace_back(pi.object, b);
          pi.object = b;
          body = run(p.body());
          env.pop_back();
        } else {
          body = run(p.body());
        }
        if (pi == old && body.identity() == p.body().identity()) return p;
        return Process::prefixed(std::move(pi), std::move(body));
      }
      case ProcessKind::Sum:
      case ProcessKind::Par: {
        Process l = run(p.left());
        Process r = run(p.right());
        if (l.identity() == p.left().identity() && r.identity() == p.right().identity()) return p;
        return p.kind() == ProcessKind::Sum ? Process::sum(std::move(l), std::move(r))
                                            : Process::par(std::move(l), std::move(r));
      }
      case ProcessKind::Restrict: {
        Name b = Name::bound(next++);
        env.emplace_back(p.binder(), b);
        Process body = run(p.body());
        env.pop_back();
        if (b == p.binder() && body.identity() == p.body().identity()) return p;
        return Process::restrict(b, std::move(body));
      }
      case ProcessKind::Repl: {
        Process body = run(p.body());
        if (body.identity() == p.body().identity()) return p;
        return Process::repl(std::move(body));
      }
    }
    return p;
  }
};

std::uint32_t free_bound_base(const Process& p) {
  std::uint32_t base = 0;
  for (Name n : p.free_names())
    if (n.is_bound()) base = std::max(base, n.index() + 1);
  return base;
}

std::optional<Diagnostic> check(const Process& p, bool in_sum) {
  switch (p.kind()) {
    case ProcessKind::Nil:
      return std::nullopt;
    case ProcessKind::Prefixed:
      if (p.prefix().binds() && p.prefix().object.is_fresh())
        return Diagnostic{Diagnostic::Code::BadBinder, "input binder uses a reserved fresh name", p};
      return check(p.body(), false);
    case ProcessKind::Sum:
      if (auto d = check(p.left(), true)) return d;
      return check(p.right(), true);
    case ProcessKind::Par:
    case ProcessKind::Repl:
      if (in_sum) return Diagnostic{Diagnostic::Code::MalformedSum, "summand is not a summation", p};
      if (p.kind() == ProcessKind::Repl) return check(p.body(), false);
      if (auto d = check(p.left(), false)) return d;
      return check(p.right(), false);
    case ProcessKind::Restrict:
      if (p.binder().is_fresh())
        return Diagnostic{Diagnostic::Code::BadBinder, "restriction binds a reserved fresh name", p};
      if (in_sum && !is_bound_output_summand(p))
        return Diagnostic{Diagnostic::Code::MalformedSum, "summand is not a summation", p};
      return check(p.body(), false);
  }
  return std::nullopt;
}

}  // namespace

std::vector<Name> bound_names(const Process& p) {
  std::vector<Name> out;
  collect_bound(p, out);
  sort_unique(out);
  return out;
}

std::vector<Name> all_names(const Process& p) {
  std::vector<Name> out;
  collect_all(p, out);
  sort_unique(out);
  return out;
}

Process rename(const Process& p, const std::vector<std::pair<Name, Name>>& mapping) {
  std::uint32_t next = p.bound_watermark();
  for (const auto& [from, to] : mapping)
    if (to.is_bound()) next = std::max(next, to.index() + 1);
  Renamer r{next};
  Mapping m = mapping;
  return r.run(p, m);
}

Process substitute(const Process& p, Name replacement, Name target) {
  if (replacement == target || !p.has_free(target)) return p;
  return rename(p, {{target, replacement}});
}

Process alpha_canonical(const Process& p) {
  Canonicalizer c{free_bound_base(p), {}};
  return c.run(p);
}

bool alpha_equivalent(const Process& a, const Process& b) { return alpha_canonical(a) == alpha_canonical(b); }

bool is_replication_free(const Process& p) { return p.replication_free(); }

bool is_bound_output_summand(const Process& p) {
  if (p.kind() != ProcessKind::Restrict) return false;
  const Process& b = p.body();
  if (b.kind() != ProcessKind::Prefixed) return false;
  const Prefix& pi = b.prefix();
  if (pi.kind != PrefixKind::Output || pi.object != p.binder() || pi.channel == p.binder()) return false;
  return std::none_of(pi.guards.begin(), pi.guards.end(),
                      [&](const Guard& g) { return g.lhs == p.binder() || g.rhs == p.binder(); });
}

std::optional<Diagnostic> validate(const Process& p) { return check(p, false); }

}  // namespace pidec
