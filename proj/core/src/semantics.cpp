#include "pidec/semantics.hpp"

#include <algorithm>

#include "pidec/error.hpp"

namespace pidec {

std::vector<Name> Action::bound() const {
  if (kind == ActionKind::BoundOut) return {object};
  return {};
}

std::vector<Name> Action::names() const {
  if (kind == ActionKind::Tau) return {};
  if (subject == object) return {subject};
  return {std::min(subject, object), std::max(subject, object)};
}

std::string Action::text() const {
  switch (kind) {
    case ActionKind::FreeOut: return subject.text() + "!" + object.text();
    case ActionKind::BoundOut: return subject.text() + "!(" + object.text() + ")";
    case ActionKind::In: return subject.text() + "?" + object.text();
    case ActionKind::Tau: return "tau";
  }
  return "?";
}

const char* to_string(InputMode mode) { return mode == InputMode::Early ? "early" : "fresh-only"; }

NameUniverse NameUniverse::covering(const std::vector<Process>& terms, InputMode mode, std::uint32_t min_pool) {
  NameUniverse u;
  u.mode = mode;
  u.fresh_pool = min_pool;
  for (const auto& t : terms) {
    u.add_known(t.free_names());
    u.fresh_pool = std::max(u.fresh_pool, t.replication_free() ? t.prefix_count() : 32u);
  }
  return u;
}

void NameUniverse::add_known(const std::vector<Name>& names) {
  for (Name n : names)
    if (!n.is_fresh()) known.push_back(n);
  std::sort(known.begin(), known.end());
  known.erase(std::unique(known.begin(), known.end()), known.end());
}

namespace {

// Late-style steps used internally. Inputs carry a placeholder for the
// received name; bound outputs carry the extruded name. Both placeholders
// are bound-namespace names above the root's watermark.
enum class StepKind { Out, BoundOut, In, Tau };

struct Step {
  StepKind kind;
  Name chan;
  Name obj;
  Process target;
};

struct Engine {
  Name extruded;
  Name placeholder;

  std::vector<Step> steps(const Process& p) const {
    std::vector<Step> out;
    collect(p, out);
    return out;
  }

  void collect(const Process& p, std::vector<Step>& out) const {
    switch (p.kind()) {
      case ProcessKind::Nil:
        return;
      case ProcessKind::Prefixed: {
        const Prefix& pi = p.prefix();
        if (!pi.guards_hold()) return;  // (Mat)
        switch (pi.kind) {
          case PrefixKind::Output:  // (Out)
            out.push_back({StepKind::Out, pi.channel, pi.object, p.body()});
            return;
          case PrefixKind::Input:  // (Inp), instantiated later
            out.push_back({StepKind::In, pi.channel, placeholder, substitute(p.body(), placeholder, pi.object)});
            return;
          case PrefixKind::Tau:  // (Tau)
            out.push_back({StepKind::Tau, {}, {}, p.body()});
            return;
        }
        return;
      }
      case ProcessKind::Sum:  // (Sum-L), (Sum-R)
        collect(p.left(), out);
        collect(p.right(), out);
        return;
      case ProcessKind::Par:
        par(p.left(), p.right(), out);
        return;
      case ProcessKind::Restrict:
        restrict(p.binder(), p.body(), out);
        return;
      case ProcessKind::Repl:
        repl(p, out);
        return;
    }
  }

  void par(const Process& l, const Process& r, std::vector<Step>& out) const {
    auto ls = steps(l);
    auto rs = steps(r);
    for (const auto& s : ls)  // (Par-L)
      out.push_back({s.kind, s.chan, s.obj, Process::par(s.target, r)});
    for (const auto& s : rs)  // (Par-R)
      out.push_back({s.kind, s.chan, s.obj, Process::par(l, s.target)});
    for (const auto& a : ls) {
      if (a.kind != StepKind::Out && a.kind != StepKind::BoundOut) continue;
      for (const auto& b : rs)
        if (b.kind == StepKind::In && b.chan == a.chan) out.push_back(communicate(a, b, true));
    }
    for (const auto& b : rs) {
      if (b.kind != StepKind::Out && b.kind != StepKind::BoundOut) continue;
      for (const auto& a : ls)
        if (a.kind == StepKind::In && a.chan == b.chan) out.push_back(communicate(b, a, false));
    }
  }

  // (Comm-L/R), (Close-L/R)
  Step communicate(const Step& sender, const Step& receiver, bool sender_left) const {
    Process received = substitute(receiver.target, sender.obj, placeholder);
    Process body = sender_left ? Process::par(sender.target, received) : Process::par(received, sender.target);
    if (sender.kind == StepKind::BoundOut) body = Process::restrict(sender.obj, body);
    return {StepKind::Tau, {}, {}, body};
  }

  void restrict(Name z, const Process& body, std::vector<Step>& out) const {
    for (auto& s : steps(body)) {
      switch (s.kind) {
        case StepKind::Tau:
          out.push_back({StepKind::Tau, {}, {}, Process::restrict(z, s.target)});
          break;
        case StepKind::Out:
          if (s.chan == z) break;
          if (s.obj == z) {  // (Open)
            out.push_back({StepKind::BoundOut, s.chan, extruded, substitute(s.target, extruded, z)});
          } else {  // (Res)
            out.push_back({StepKind::Out, s.chan, s.obj, Process::restrict(z, s.target)});
          }
          break;
        case StepKind::BoundOut:
        case StepKind::In:
          if (s.chan == z) break;
          out.push_back({s.kind, s.chan, s.obj, Process::restrict(z, s.target)});
          break;
      }
    }
  }

  void repl(const Process& bang, std::vector<Step>& out) const {
    auto ss = steps(bang.body());
    for (const auto& s : ss)  // (Rep-Act)
      out.push_back({s.kind, s.chan, s.obj, Process::par(s.target, bang)});
    for (const auto& a : ss) {
      if (a.kind != StepKind::Out && a.kind != StepKind::BoundOut) continue;
      for (const auto& b : ss) {
        if (b.kind != StepKind::In || b.chan != a.chan) continue;
        // (Rep-Comm), (Rep-Close-L)
        Step t = communicate(a, b, true);
        out.push_back({StepKind::Tau, {}, {}, Process::par(t.target, bang)});
      }
    }
  }
};

}  // namespace

std::vector<Transition> transitions(const Process& p, const NameUniverse& u, std::uint32_t consumed) {
  std::uint32_t base = p.bound_watermark();
  for (Name n : u.known)
    if (n.is_bound()) base = std::max(base, n.index() + 1);
  Engine engine{Name::bound(base), Name::bound(base + 1)};
  auto steps = engine.steps(p);

  auto next_fresh = [&]() {
    if (consumed >= u.fresh_pool)
      throw Error(ErrorKind::UniverseTooSmall,
                  "fresh name pool of size " + std::to_string(u.fresh_pool) + " exhausted");
    return Name::fresh(consumed);
  };

  std::vector<Transition> out;
  for (const auto& s : steps) {
    switch (s.kind) {
      case StepKind::Tau:
        out.push_back({Action::tau(), alpha_canonical(s.target), consumed});
        break;
      case StepKind::Out:
        out.push_back({Action::free_out(s.chan, s.obj), alpha_canonical(s.target), consumed});
        break;
      case StepKind::BoundOut: {
        Name w = next_fresh();
        out.push_back({Action::bound_out(s.chan, w), alpha_canonical(substitute(s.target, w, s.obj)), consumed + 1});
        break;
      }
      case StepKind::In: {
        if (u.mode == InputMode::Early) {
          for (Name y : u.known)
            out.push_back({Action::in(s.chan, y), alpha_canonical(substitute(s.target, y, s.obj)), consumed});
          for (std::uint32_t i = 0; i < consumed; ++i) {
            Name y = Name::fresh(i);
            out.push_back({Action::in(s.chan, y), alpha_canonical(substitute(s.target, y, s.obj)), consumed});
          }
        }
        Name w = next_fresh();
        out.push_back({Action::in(s.chan, w), alpha_canonical(substitute(s.target, w, s.obj)), consumed + 1});
        break;
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Transition> transitions(const State& s, const NameUniverse& u) {
  return transitions(s.term, u, s.consumed);
}

WeakTransitions weak_transitions(const Process& p, const NameUniverse& u, std::uint32_t consumed) {
  WeakTransitions result;
  State root{alpha_canonical(p), consumed};
  std::vector<State> closure{root};
  std::vector<State> frontier{root};
  std::vector<std::pair<State, std::vector<Transition>>> cache;
  auto succ = [&](const State& s) -> const std::vector<Transition>& {
    for (const auto& [k, v] : cache)
      if (k == s) return v;
    cache.emplace_back(s, transitions(s, u));
    return cache.back().second;
  };
  auto contains = [](const std::vector<State>& v, const State& s) { return std::find(v.begin(), v.end(), s) != v.end(); };

  // tau closure
  for (std::size_t i = 0; i < closure.size(); ++i) {
    State s = closure[i];
    for (const auto& t : succ(s))
      if (!t.action.visible() && !contains(closure, t.target_state())) closure.push_back(t.target_state());
  }
  std::vector<State> strict_tau;
  for (const auto& s : closure)
    for (const auto& t : succ(s))
      if (!t.action.visible() && !contains(strict_tau, t.target_state())) strict_tau.push_back(t.target_state());
  // a strict tau-successor's own closure stays inside the closure of root
  for (const auto& s : strict_tau) result.moves.push_back({Action::tau(), s.term, s.consumed});

  for (const auto& s : closure) {
    for (const auto& t : succ(s)) {
      if (!t.action.visible()) continue;
      std::vector<State> after{t.target_state()};
      for (std::size_t i = 0; i < after.size(); ++i) {
        State a = after[i];
        for (const auto& t2 : succ(a))
          if (!t2.action.visible() && !contains(after, t2.target_state())) after.push_back(t2.target_state());
      }
      for (const auto& a : after) result.moves.push_back({t.action, a.term, a.consumed});
    }
  }
  std::sort(result.moves.begin(), result.moves.end());
  result.moves.erase(std::unique(result.moves.begin(), result.moves.end()), result.moves.end());
  std::sort(closure.begin(), closure.end());
  result.tau_closure = std::move(closure);
  return result;
}

}  // namespace pidec
