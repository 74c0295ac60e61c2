#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace ait {

/// Exact non-negative rational whose denominator is a power of two.
/// Stored normalized: numerator odd, or zero with exponent 0.
class Dyadic {
public:
  using Int = boost::multiprecision::cpp_int;

  Dyadic() = default;
  Dyadic(Int numerator, std::uint64_t exponent) : num_(std::move(numerator)), exp_(exponent) { normalize(); }

  /// 2^-k
  static Dyadic pow2_neg(std::uint64_t k) { return Dyadic(Int(1), k); }
  static Dyadic one() { return Dyadic(Int(1), 0); }

  [[nodiscard]] const Int& numerator() const noexcept { return num_; }
  [[nodiscard]] std::uint64_t exponent() const noexcept { return exp_; }
  [[nodiscard]] Int denominator() const { return Int(1) << exp_; }
  [[nodiscard]] bool is_zero() const noexcept { return num_ == 0; }

  Dyadic& operator+=(const Dyadic& o) {
    if (o.exp_ > exp_) {
      num_ <<= (o.exp_ - exp_);
      exp_ = o.exp_;
      num_ += o.num_;
    } else {
      num_ += o.num_ << (exp_ - o.exp_);
    }
    normalize();
    return *this;
  }
  friend Dyadic operator+(Dyadic a, const Dyadic& b) { return a += b; }

  /// Saturates at zero.
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b) {
    auto e = std::max(a.exp_, b.exp_);
    Int x = a.num_ << (e - a.exp_), y = b.num_ << (e - b.exp_);
    return x > y ? Dyadic(x - y, e) : Dyadic();
  }

  friend bool operator==(const Dyadic&, const Dyadic&) = default;
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
    auto e = std::max(a.exp_, b.exp_);
    Int x = a.num_ << (e - a.exp_), y = b.num_ << (e - b.exp_);
    if (x < y) return std::strong_ordering::less;
    if (x > y) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// Largest multiple of 2^-bits not exceeding this value.
  [[nodiscard]] Dyadic truncate(std::uint64_t bits) const {
    if (exp_ <= bits) return *this;
    return Dyadic(num_ >> (exp_ - bits), bits);
  }

  /// Fraction "n/d", e.g. "15/32".
  [[nodiscard]] std::string fraction() const { return num_.str() + "/" + denominator().str(); }

  /// Exact binary expansion, e.g. "0.01111"; integers print without a point.
  [[nodiscard]] std::string binary() const {
    Int whole = num_ >> exp_;
    std::string out = whole == 0 ? "0" : to_binary(whole);
    if (exp_ == 0) return out;
    out += '.';
    for (std::uint64_t i = exp_; i-- > 0;) out += boost::multiprecision::bit_test(num_, static_cast<unsigned>(i)) ? '1' : '0';
    return out;
  }

  /// The first `n` binary digits after the point (value must be < 1).
  [[nodiscard]] std::string fraction_digits(std::uint64_t n) const {
    std::string out;
    for (std::uint64_t k = 1; k <= n; ++k) {
      bool bit = k <= exp_ && boost::multiprecision::bit_test(num_, static_cast<unsigned>(exp_ - k));
      out += bit ? '1' : '0';
    }
    return out;
  }

  /// "15/32 = 0.01111"
  [[nodiscard]] std::string str() const { return fraction() + " = " + binary(); }

private:
  static std::string to_binary(Int v) {
    std::string s;
    while (v > 0) {
      s.insert(s.begin(), (v & 1) != 0 ? '1' : '0');
      v >>= 1;
    }
    return s;
  }

  void normalize() {
    if (num_ == 0) {
      exp_ = 0;
      return;
    }
    while (exp_ > 0 && (num_ & 1) == 0) {
      num_ >>= 1;
      --exp_;
    }
  }

  Int num_{0};
  std::uint64_t exp_ = 0;
};

}  // namespace ait
