#include "pidec/name.hpp"

#include <deque>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>

#include "pidec/error.hpp"

namespace pidec {

namespace {

class Interner {
 public:
  Interner() { texts_.emplace_back(); }

  std::uint32_t intern(std::string_view text) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = ids_.find(text); it != ids_.end()) return it->second;
    }
    std::unique_lock lock(mutex_);
    if (auto it = ids_.find(text); it != ids_.end()) return it->second;
    auto id = static_cast<std::uint32_t>(texts_.size());
    texts_.emplace_back(text);
    ids_.emplace(texts_.back(), id);
    return id;
  }

  std::string lookup(std::uint32_t id) const {
    std::shared_lock lock(mutex_);
    return id < texts_.size() ? texts_[id] : std::string("?");
  }

 private:
  mutable std::shared_mutex mutex_;
  std::deque<std::string> texts_;
  std::unordered_map<std::string_view, std::uint32_t> ids_;
};

Interner& interner() {
  static Interner instance;
  return instance;
}

}  // namespace

Name Name::user(std::string_view text) {
  if (!is_valid_user_name(text)) throw Error(ErrorKind::SyntaxError, "invalid name '" + std::string(text) + "'");
  return Name(make(Kind::User, interner().intern(text)));
}

std::string Name::text() const {
  switch (kind()) {
    case Kind::User:
      return interner().lookup(index());
    case Kind::Bound:
      return "%" + std::to_string(index());
    case Kind::Fresh:
      return "@" + std::to_string(index());
  }
  return "?";
}

bool is_valid_user_name(std::string_view text) {
  if (text.empty() || text[0] < 'a' || text[0] > 'z') return false;
  for (char c : text) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
    if (!ok) return false;
  }
  return text != "new" && text != "tau";
}

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::MalformedSum: return "MalformedSum";
    case ErrorKind::UniverseTooSmall: return "UniverseTooSmall";
    case ErrorKind::NotFinite: return "NotFinite";
    case ErrorKind::CyclicLts: return "CyclicLts";
    case ErrorKind::Inconclusive: return "Inconclusive";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::NormalizationIncomplete: return "NormalizationIncomplete";
    case ErrorKind::UnknownDemo: return "UnknownDemo";
    case ErrorKind::Usage: return "Usage";
  }
  return "Error";
}

}  // namespace pidec
