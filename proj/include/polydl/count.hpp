#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace polydl {

/// Non-negative integer of unbounded magnitude, used for the grade k of
/// counting restrictions. Stored as a normalized decimal digit string.
class Count {
 public:
  Count() : digits_("0") {}
  Count(std::uint64_t value);  // NOLINT(google-explicit-constructor)

  /// Parses a decimal literal; returns nullopt on anything but [0-9]+.
  static std::optional<Count> parse(std::string_view text);

  bool is_zero() const { return digits_ == "0"; }
  const std::string& str() const { return digits_; }

  /// The value if it fits in 64 bits.
  std::optional<std::uint64_t> to_u64() const;

  Count succ() const;
  /// Requires !is_zero().
  Count pred() const;

  friend bool operator==(const Count&, const Count&) = default;
  friend std::strong_ordering operator<=>(const Count& a, const Count& b);

 private:
  std::string digits_;
};

}  // namespace polydl
