#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace pidec {

// A channel name. User names are interned strings. Bound and fresh names
// live in indexed namespaces that can never be spelled in source text.
class Name {
 public:
  enum class Kind : std::uint8_t { User = 0, Bound = 1, Fresh = 2 };

  constexpr Name() = default;

  static Name user(std::string_view text);
  static constexpr Name bound(std::uint32_t index) { return Name(make(Kind::Bound, index)); }
  static constexpr Name fresh(std::uint32_t index) { return Name(make(Kind::Fresh, index)); }

  constexpr Kind kind() const { return static_cast<Kind>(raw_ >> kShift); }
  constexpr std::uint32_t index() const { return raw_ & kMask; }
  constexpr bool is_user() const { return kind() == Kind::User; }
  constexpr bool is_bound() const { return kind() == Kind::Bound; }
  constexpr bool is_fresh() const { return kind() == Kind::Fresh; }
  constexpr bool valid() const { return raw_ != 0; }
  constexpr std::uint32_t raw() const { return raw_; }

  // User names print as written, fresh names as "@k", stray bound names as "%k".
  std::string text() const;

  friend constexpr bool operator==(Name, Name) = default;
  friend constexpr auto operator<=>(Name, Name) = default;

 private:
  static constexpr unsigned kShift = 30;
  static constexpr std::uint32_t kMask = (1u << kShift) - 1;
  static constexpr std::uint32_t make(Kind k, std::uint32_t index) {
    return (static_cast<std::uint32_t>(k) << kShift) | (index & kMask);
  }
  constexpr explicit Name(std::uint32_t raw) : raw_(raw) {}

  std::uint32_t raw_ = 0;
};

// True if text is a legal user name: [a-z][a-zA-Z0-9_]* and not a keyword.
bool is_valid_user_name(std::string_view text);

}  // namespace pidec

template <>
struct std::hash<pidec::Name> {
  std::size_t operator()(pidec::Name n) const noexcept { return std::hash<std::uint32_t>{}(n.raw()); }
};
