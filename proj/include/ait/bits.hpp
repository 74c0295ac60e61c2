#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ait {

/// Raised when a reader runs past the end of its bit stream.
struct OutOfData : std::runtime_error {
  OutOfData() : std::runtime_error("out-of-data") {}
};

/// A finite sequence of bits. Elements are always 0 or 1.
class BitString {
public:
  BitString() = default;
  BitString(std::initializer_list<int> bits) {
    bits_.reserve(bits.size());
    for (int b : bits) push_back(b != 0);
  }

  /// Parses the compact form "0110" or the list form "(0 1 1 0)".
  /// Blanks and newlines between bits are ignored.
  static BitString parse(std::string_view text) {
    BitString out;
    std::size_t i = 0, n = text.size();
    auto skip_ws = [&] {
      while (i < n && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n' || text[i] == '\r')) ++i;
    };
    skip_ws();
    bool list_form = i < n && text[i] == '(';
    if (list_form) ++i;
    for (;;) {
      skip_ws();
      if (i == n) break;
      char c = text[i];
      if (c == '0' || c == '1') {
        out.push_back(c == '1');
        ++i;
      } else if (c == ')' && list_form) {
        ++i;
        skip_ws();
        if (i != n) throw std::invalid_argument("trailing characters after bit list");
        return out;
      } else {
        throw std::invalid_argument(std::string("invalid character in bit string: '") + c + "'");
      }
    }
    if (list_form) throw std::invalid_argument("unterminated bit list");
    return out;
  }

  /// Big-endian bits of `value`, exactly `width` of them.
  static BitString from_uint(std::uint64_t value, std::size_t width) {
    BitString out;
    for (std::size_t i = width; i-- > 0;) out.push_back(((value >> i) & 1u) != 0);
    return out;
  }

  void push_back(bool b) { bits_.push_back(b ? 1 : 0); }
  void append(const BitString& other) { bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end()); }
  void append(std::span<const std::uint8_t> other) { bits_.insert(bits_.end(), other.begin(), other.end()); }

  [[nodiscard]] std::size_t size() const noexcept { return bits_.size(); }
  [[nodiscard]] bool empty() const noexcept { return bits_.empty(); }
  [[nodiscard]] int operator[](std::size_t i) const { return bits_[i]; }
  [[nodiscard]] std::span<const std::uint8_t> view() const noexcept { return bits_; }
  [[nodiscard]] auto begin() const noexcept { return bits_.begin(); }
  [[nodiscard]] auto end() const noexcept { return bits_.end(); }

  [[nodiscard]] BitString prefix(std::size_t n) const {
    BitString out;
    out.bits_.assign(bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(std::min(n, bits_.size())));
    return out;
  }

  [[nodiscard]] bool is_prefix_of(const BitString& other) const noexcept {
    if (size() > other.size()) return false;
    for (std::size_t i = 0; i < size(); ++i)
      if (bits_[i] != other.bits_[i]) return false;
    return true;
  }

  /// Compact text form, e.g. "0110". The empty string prints as "".
  [[nodiscard]] std::string str() const {
    std::string s;
    s.reserve(bits_.size());
    for (auto b : bits_) s.push_back(b ? '1' : '0');
    return s;
  }

  friend bool operator==(const BitString&, const BitString&) = default;
  friend auto operator<=>(const BitString& a, const BitString& b) {
    // length first, then lexicographic: the enumeration order of programs
    if (a.size() != b.size()) return a.size() <=> b.size();
    return a.bits_ <=> b.bits_;
  }

private:
  std::vector<std::uint8_t> bits_;
};

inline BitString operator+(BitString a, const BitString& b) {
  a.append(b);
  return a;
}

/// Read cursor over a borrowed bit sequence. Single owner; not thread safe.
class BitStream {
public:
  explicit BitStream(std::span<const std::uint8_t> bits) : bits_(bits) {}
  explicit BitStream(const BitString& bits) : bits_(bits.view()) {}

  int read_bit() {
    if (pos_ >= bits_.size()) throw OutOfData{};
    return bits_[pos_++];
  }

  /// Reads `n` bits as a big-endian unsigned value (n <= 64).
  std::uint64_t read_uint(std::size_t n) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < n; ++i) v = (v << 1) | static_cast<std::uint64_t>(read_bit());
    return v;
  }

  [[nodiscard]] std::size_t position() const noexcept { return pos_; }
  [[nodiscard]] std::size_t remaining() const noexcept { return bits_.size() - pos_; }
  [[nodiscard]] bool at_end() const noexcept { return pos_ == bits_.size(); }
  [[nodiscard]] std::size_t size() const noexcept { return bits_.size(); }

  [[nodiscard]] BitString rest() const {
    BitString out;
    out.append(bits_.subspan(pos_));
    return out;
  }

private:
  std::span<const std::uint8_t> bits_;
  std::size_t pos_ = 0;
};

/// Every bit string of length exactly `n`, in lexicographic order.
inline std::vector<BitString> all_strings_of_length(std::size_t n) {
  std::vector<BitString> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) out.push_back(BitString::from_uint(v, n));
  return out;
}

/// Every bit string of length at most `n`, shortest first.
inline std::vector<BitString> all_strings_up_to(std::size_t n) {
  std::vector<BitString> out;
  for (std::size_t len = 0; len <= n; ++len) {
    auto level = all_strings_of_length(len);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

}  // namespace ait
