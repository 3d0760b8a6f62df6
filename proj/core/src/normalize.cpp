#include "pidec/normalize.hpp"

#include <algorithm>
#include <unordered_map>

#include "json.hpp"
#include "pidec/error.hpp"
#include "pidec/parser.hpp"

namespace pidec {

namespace {

struct Expander {
  std::uint32_t next;

  Name fresh_binder() { return Name::bound(next++); }

  std::vector<Summand> run(const Process& p) {
    switch (p.kind()) {
      case ProcessKind::Nil:
        return {};
      case ProcessKind::Prefixed: {
        const Prefix& pi = p.prefix();
        GuardedPrefix g{HeadKind::Tau, pi.channel, pi.object, pi.guards};
        switch (pi.kind) {
          case PrefixKind::Tau:
            return {{g, p.body()}};
          case PrefixKind::Output:
            g.kind = HeadKind::Output;
            return {{g, p.body()}};
          case PrefixKind::Input: {
            g.kind = HeadKind::Input;
            g.object = fresh_binder();
            return {{g, substitute(p.body(), g.object, pi.object)}};
          }
        }
        return {};
      }
      case ProcessKind::Sum: {
        auto out = run(p.left());
        auto right = run(p.right());
        out.insert(out.end(), right.begin(), right.end());
        return out;
      }
      case ProcessKind::Par:
        return expand(resolve(run(p.left())), p.left(), resolve(run(p.right())), p.right());
      case ProcessKind::Restrict: {
        Name z = fresh_binder();
        return restrict(z, resolve(run(substitute(p.body(), z, p.binder()))));
      }
      case ProcessKind::Repl:
        throw Error(ErrorKind::NotFinite, "head normal form of a replicated term");
    }
    return {};
  }

  // Drops summands with a failed match and strips the satisfied ones.
  static std::vector<Summand> resolve(std::vector<Summand> s) {
    std::vector<Summand> out;
    for (auto& m : s) {
      bool live = std::all_of(m.prefix.guards.begin(), m.prefix.guards.end(),
                              [](const Guard& g) { return g.lhs == g.rhs; });
      if (!live) continue;
      m.prefix.guards.clear();
      out.push_back(std::move(m));
    }
    return out;
  }

  static bool sends(const GuardedPrefix& g) { return g.kind == HeadKind::Output || g.kind == HeadKind::BoundOutput; }

  std::vector<Summand> expand(const std::vector<Summand>& a, const Process& left, const std::vector<Summand>& b,
                              const Process& right) {
    std::vector<Summand> out;
    for (const auto& m : a) out.push_back({m.prefix, Process::par(m.continuation, right)});
    for (const auto& m : b) out.push_back({m.prefix, Process::par(left, m.continuation)});
    for (const auto& m : a)
      for (const auto& k : b) {
        if (m.prefix.channel != k.prefix.channel) continue;
        if (sends(m.prefix) && k.prefix.kind == HeadKind::Input)
          out.push_back(communicate(m, k, true));
        else if (sends(k.prefix) && m.prefix.kind == HeadKind::Input)
          out.push_back(communicate(k, m, false));
      }
    return out;
  }

  static Summand communicate(const Summand& send, const Summand& recv, bool send_left) {
    Process received = substitute(recv.continuation, send.prefix.object, recv.prefix.object);
    Process body = send_left ? Process::par(send.continuation, received) : Process::par(received, send.continuation);
    if (send.prefix.kind == HeadKind::BoundOutput) body = Process::restrict(send.prefix.object, body);
    return {GuardedPrefix{}, body};
  }

  static std::vector<Summand> restrict(Name z, const std::vector<Summand>& s) {
    std::vector<Summand> out;
    for (const auto& m : s) {
      const auto& g = m.prefix;
      if (g.kind != HeadKind::Tau && g.channel == z) continue;  // νz.π.P ∼ 0
      if (g.kind == HeadKind::Output && g.object == z) {        // x̄(z).P
        out.push_back({GuardedPrefix{HeadKind::BoundOutput, g.channel, z, {}}, m.continuation});
        continue;
      }
      out.push_back({g, Process::restrict(z, m.continuation)});  // π.νz.P
    }
    return out;
  }
};

Process summand_process(const Summand& m) {
  const auto& g = m.prefix;
  Prefix pi;
  pi.guards = g.guards;
  switch (g.kind) {
    case HeadKind::Tau:
      break;
    case HeadKind::Output:
    case HeadKind::BoundOutput:
      pi.kind = PrefixKind::Output;
      pi.channel = g.channel;
      pi.object = g.object;
      break;
    case HeadKind::Input:
      pi.kind = PrefixKind::Input;
      pi.channel = g.channel;
      pi.object = g.object;
      break;
  }
  Process out = Process::prefixed(std::move(pi), m.continuation);
  return g.kind == HeadKind::BoundOutput ? Process::restrict(g.object, out) : out;
}

NameUniverse extend(const NameUniverse& u, const Process& p) {
  NameUniverse out = u;
  out.add_known(p.free_names());
  out.fresh_pool = std::max(out.fresh_pool, p.prefix_count());
  return out;
}

struct StutterFree {
  const NameUniverse& base;
  std::unordered_map<Process, Process> memo;

  Process run(const Process& p) {
    if (auto it = memo.find(p); it != memo.end()) return it->second;
    NameUniverse u = extend(base, p);
    HeadNormalForm h{Expander::resolve(expand_hnf(p).summands)};
    for (const auto& m : h.summands) {
      if (m.prefix.kind != HeadKind::Tau) continue;
      Process cont = alpha_canonical(m.continuation);
      if (weak_bisim(cont, p, extend(u, cont)).equivalent) {
        Process r = run(cont);
        memo.emplace(p, r);
        return r;
      }
    }
    std::vector<Process> summands;
    for (auto& m : h.summands) {
      Summand n{m.prefix, run(alpha_canonical(m.continuation))};
      summands.push_back(summand_process(n));
    }
    Process r = alpha_canonical(Process::sum_of(summands));
    memo.emplace(p, r);
    return r;
  }
};

}  // namespace

Process HeadNormalForm::to_process() const {
  std::vector<Process> parts;
  for (const auto& m : summands) parts.push_back(summand_process(m));
  return alpha_canonical(Process::sum_of(parts));
}

HeadNormalForm expand_hnf(const Process& p) {
  if (!p.replication_free()) throw Error(ErrorKind::NotFinite, "term contains replication: " + pretty(p));
  Expander e{p.bound_watermark()};
  for (Name n : p.free_names())
    if (n.is_bound()) e.next = std::max(e.next, n.index() + 1);
  return {e.run(p)};
}

std::optional<StutterWitness> find_stuttering(const Process& p, const NameUniverse& u) {
  NameUniverse uni = extend(u, p);
  Lts l = build_lts(p, uni);
  Partition part = coarsest_partition(l, Mode::Weak);
  for (const auto& e : l.edges())
    if (!e.action.visible() && part.block_of[e.src] == part.block_of[e.dst])
      return StutterWitness{l.state(e.src), l.state(e.dst)};
  return std::nullopt;
}

bool has_stuttering(const Process& p, const NameUniverse& u) { return find_stuttering(p, u).has_value(); }

NormalizationReport normalize_stuttering(const Process& p, const NameUniverse& u) {
  if (!p.replication_free()) throw Error(ErrorKind::NotFinite, "term contains replication: " + pretty(p));
  NormalizationReport r;
  r.input = alpha_canonical(p);
  NameUniverse uni = extend(u, r.input);
  StutterFree sf{uni, {}};
  r.result = sf.run(r.input);
  r.equivalent_to_input = weak_bisim(r.result, r.input, extend(uni, r.result)).equivalent;
  r.witness = find_stuttering(r.result, uni);
  r.stutter_free = !r.witness.has_value();
  return r;
}

Process stutter_free(const Process& p, const NameUniverse& u) {
  NormalizationReport r = normalize_stuttering(p, u);
  if (!r.ok()) {
    std::string msg = "stutter-free normalization of " + pretty(p) + " not verified";
    if (r.witness) msg += ": " + pretty(r.witness->from.term) + " -tau-> " + pretty(r.witness->to.term);
    throw Error(ErrorKind::NormalizationIncomplete, msg);
  }
  return r.result;
}

unsigned weak_depth(const Process& p, const NameUniverse& u) {
  Process q = stutter_free(p, u);
  return depth(build_lts(q, extend(u, q)));
}

std::string NormalizationReport::json() const {
  nlohmann::ordered_json j;
  j["input"] = pretty(input);
  j["result"] = pretty(result);
  j["equivalent-to-input"] = equivalent_to_input;
  j["stutter-free"] = stutter_free;
  if (witness) {
    j["witness"] = {{"from", pretty(witness->from.term)}, {"to", pretty(witness->to.term)}};
  }
  return j.dump(2);
}

}  // namespace pidec
