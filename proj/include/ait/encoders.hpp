#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ait/bits.hpp"
#include "ait/complexity.hpp"
#include "ait/machine.hpp"

namespace ait {

// Self-delimiting encodings of bit strings. Each encoder is paired with a
// stream decoder that stops by itself at the end of the codeword, so
// decode(encode(x) + junk) returns x and leaves the junk unread.

/// Each bit b becomes bb; the pair 01 terminates. |out| = 2|x| + 2.
inline BitString encode_doubling(const BitString& x) {
  BitString out;
  for (auto b : x) {
    out.push_back(b != 0);
    out.push_back(b != 0);
  }
  out.push_back(false);
  out.push_back(true);
  return out;
}

/// Reads twin pairs until the first unequal pair (01 or 10), which is
/// consumed. Throws OutOfData if the stream ends first.
inline BitString decode_doubling(BitStream& s) {
  BitString out;
  for (;;) {
    int a = s.read_bit();
    int b = s.read_bit();
    if (a != b) return out;
    out.push_back(a != 0);
  }
}

/// Binary numeral of n, most significant bit first; 0 is the empty string.
inline BitString numeral(std::uint64_t n) {
  BitString out;
  std::size_t width = 0;
  while (width < 64 && (n >> width) != 0) ++width;
  return BitString::from_uint(n, width);
}

namespace detail {
inline std::uint64_t small_numeral_value(const BitString& bits) {
  if (bits.size() > 63) throw std::length_error("length numeral does not fit in 63 bits");
  std::uint64_t v = 0;
  for (auto b : bits) v = (v << 1) | b;
  return v;
}

inline BitString read_exactly(BitStream& s, std::uint64_t n) {
  BitString out;
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(s.read_bit() != 0);
  return out;
}
}  // namespace detail

/// Doubled numeral of |x|, then x itself.
inline BitString encode_header_numeral(const BitString& x) { return encode_doubling(numeral(x.size())) + x; }

inline BitString decode_header_numeral(BitStream& s) {
  auto n = detail::small_numeral_value(decode_doubling(s));
  return detail::read_exactly(s, n);
}

/// Doubled numeral of the length of numeral(|x|), then numeral(|x|) with no
/// bits doubled, then x.
inline BitString encode_two_header(const BitString& x) {
  auto len_numeral = numeral(x.size());
  return encode_doubling(numeral(len_numeral.size())) + len_numeral + x;
}

inline BitString decode_two_header(BitStream& s) {
  auto header_len = detail::small_numeral_value(decode_doubling(s));
  auto n = detail::small_numeral_value(detail::read_exactly(s, header_len));
  return detail::read_exactly(s, n);
}

/// Closed-form codeword lengths.
inline std::size_t doubling_length(std::size_t n) { return 2 * n + 2; }
inline std::size_t header_numeral_length(std::size_t n) { return doubling_length(numeral(n).size()) + n; }
inline std::size_t two_header_length(std::size_t n) {
  auto l = numeral(n).size();
  return doubling_length(numeral(l).size()) + l + n;
}

/// A named pair of encoder and stream decoder.
struct Codec {
  std::string name;
  std::function<BitString(const BitString&)> encode;
  std::function<BitString(BitStream&)> decode;
  std::function<std::size_t(std::size_t)> length;
};

inline std::vector<Codec> unconditional_codecs() {
  return {
      {"doubling", encode_doubling, decode_doubling, doubling_length},
      {"header", encode_header_numeral, decode_header_numeral, header_numeral_length},
      {"two-header", encode_two_header, decode_two_header, two_header_length},
  };
}

inline std::optional<Codec> codec_by_name(const std::string& name) {
  for (auto& c : unconditional_codecs())
    if (c.name == name) return c;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Elegant header: the shortest program found for |x| on a numeral-producing
// machine, followed by x.

struct SearchExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// `machine` must output naturals. Throws SearchExhausted when no program
/// of length <= size_cap outputs |x| within `budget`.
inline BitString encode_elegant_header(const BitString& x, const Machine& machine, std::size_t size_cap,
                                       Budget budget) {
  auto rec = H_upper(nat(x.size()), machine, size_cap, budget);
  if (!rec)
    throw SearchExhausted("no program of at most " + std::to_string(size_cap) + " bits outputs " +
                          std::to_string(x.size()));
  return std::get<BitString>(rec->witness) + x;
}

/// Grows the header one bit at a time until the machine halts on it; the
/// machine's domain is prefix-free, so the first halt is the header.
inline BitString decode_elegant_header(BitStream& s, const Machine& machine, std::size_t size_cap, Budget budget) {
  BitString header;
  for (;;) {
    auto r = machine.run(header, budget);
    if (r.is_halted()) {
      if (!r.output.is_natural()) throw std::runtime_error("header program did not output a natural");
      return detail::read_exactly(s, static_cast<std::uint64_t>(r.output.value()));
    }
    if (!r.needs_more_bits()) throw std::runtime_error("stream does not start with a header program");
    if (header.size() >= size_cap) throw SearchExhausted("header longer than the size cap");
    header.push_back(s.read_bit() != 0);
  }
}

}  // namespace ait
