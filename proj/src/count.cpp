#include "polydl/count.hpp"

#include <cassert>
#include <limits>

namespace polydl {

Count::Count(std::uint64_t value) : digits_(std::to_string(value)) {}

std::optional<Count> Count::parse(std::string_view text) {
  if (text.empty()) return std::nullopt;
  for (char c : text) {
    if (c < '0' || c > '9') return std::nullopt;
  }
  std::size_t first = text.find_first_not_of('0');
  Count out;
  out.digits_ = first == std::string_view::npos ? "0" : std::string(text.substr(first));
  return out;
}

std::optional<std::uint64_t> Count::to_u64() const {
  if (digits_.size() > 20) return std::nullopt;
  std::uint64_t value = 0;
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  for (char c : digits_) {
    std::uint64_t d = static_cast<std::uint64_t>(c - '0');
    if (value > (kMax - d) / 10) return std::nullopt;
    value = value * 10 + d;
  }
  return value;
}

Count Count::succ() const {
  Count out = *this;
  std::string& s = out.digits_;
  std::size_t i = s.size();
  while (i > 0) {
    --i;
    if (s[i] == '9') {
      s[i] = '0';
    } else {
      ++s[i];
      return out;
    }
  }
  s.insert(s.begin(), '1');
  return out;
}

Count Count::pred() const {
  assert(!is_zero());
  Count out = *this;
  std::string& s = out.digits_;
  std::size_t i = s.size();
  while (i > 0) {
    --i;
    if (s[i] == '0') {
      s[i] = '9';
    } else {
      --s[i];
      break;
    }
  }
  std::size_t first = s.find_first_not_of('0');
  s = first == std::string::npos ? "0" : s.substr(first);
  return out;
}

std::strong_ordering operator<=>(const Count& a, const Count& b) {
  if (a.digits_.size() != b.digits_.size()) return a.digits_.size() <=> b.digits_.size();
  return a.digits_.compare(b.digits_) <=> 0;
}

}  // namespace polydl
