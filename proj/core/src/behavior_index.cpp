#include "pidec/behavior_index.hpp"

#include <algorithm>

#include "pidec/error.hpp"
#include "pidec/parser.hpp"

namespace pidec {

namespace {

constexpr int kTau = 0;

template <class T>
void normalize(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

BehaviorIndex::BehaviorIndex(Mode mode, NameUniverse universe) : mode_(mode), universe_(std::move(universe)) {
  nil_class_ = class_of(Process::nil());
}

int BehaviorIndex::action_id(const Action& a) {
  if (!a.visible()) return kTau;
  auto [it, inserted] = actions_.try_emplace(a, static_cast<int>(actions_.size()) + 1);
  return it->second;
}

std::uint32_t BehaviorIndex::class_of(const Process& p, std::uint32_t consumed) {
  return class_of(State{alpha_canonical(p), consumed});
}

std::uint32_t BehaviorIndex::class_of(const State& s) {
  if (!s.term.replication_free()) throw Error(ErrorKind::NotFinite, "term contains replication: " + pretty(s.term));
  return info(s).cls;
}

const BehaviorIndex::Info& BehaviorIndex::info(const State& s) {
  if (auto it = memo_.find(s); it != memo_.end()) return it->second;
  Info computed = compute(s);
  return memo_.emplace(s, std::move(computed)).first->second;
}

BehaviorIndex::Info BehaviorIndex::compute(const State& s) {
  auto ts = transitions(s, universe_);
  Info out;
  if (mode_ == Mode::Strong) {
    Sig sig;
    for (const auto& t : ts) sig.push_back({action_id(t.action), info(t.target_state()).cls});
    normalize(sig);
    auto [it, inserted] = classes_.try_emplace(std::move(sig), next_class_);
    if (inserted) ++next_class_;
    out.cls = it->second;
    return out;
  }

  // Weak: the saturated signature of s minus its own reflexive tau entry.
  std::vector<std::uint32_t> strict_tau;
  Sig visible;
  for (const auto& t : ts) {
    const Info& child = info(t.target_state());
    if (t.action.visible()) {
      int a = action_id(t.action);
      for (std::uint32_t c : child.tau_reach) visible.push_back({a, c});
    } else {
      strict_tau.insert(strict_tau.end(), child.tau_reach.begin(), child.tau_reach.end());
      visible.insert(visible.end(), child.weak_visible.begin(), child.weak_visible.end());
    }
  }
  normalize(strict_tau);
  normalize(visible);
  Sig partial = visible;
  for (std::uint32_t c : strict_tau) partial.push_back({kTau, c});
  normalize(partial);

  // s stutters into a class C iff the key of C equals partial without (tau, C).
  std::optional<std::uint32_t> cls;
  for (std::uint32_t c : strict_tau) {
    const Sig& key = keys_[c];
    if (key.size() + 1 != partial.size()) continue;
    Sig without;
    without.reserve(key.size());
    for (const auto& e : partial)
      if (!(e.first == kTau && e.second == c)) without.push_back(e);
    if (without == key) {
      cls = c;
      break;
    }
  }
  if (!cls) {
    auto [it, inserted] = classes_.try_emplace(partial, next_class_);
    if (inserted) {
      keys_.push_back(partial);
      ++next_class_;
    }
    cls = it->second;
  }
  out.cls = *cls;
  out.tau_reach = std::move(strict_tau);
  out.tau_reach.push_back(*cls);
  normalize(out.tau_reach);
  out.weak_visible = std::move(visible);
  return out;
}

}  // namespace pidec
