#include <gtest/gtest.h>

#include <random>
#include <regex>

#include "ait/ait.hpp"
#include "oracles.hpp"

using namespace ait;

namespace {
BitString random_bits(std::mt19937_64& rng, std::size_t n) {
  BitString b;
  for (std::size_t i = 0; i < n; ++i) b.push_back((rng() & 1) != 0);
  return b;
}

BitString repeated(int bit, std::size_t n) {
  BitString b;
  for (std::size_t i = 0; i < n; ++i) b.push_back(bit != 0);
  return b;
}
}  // namespace

TEST(Encoders, RoundTripWithTrailingJunk) {
  std::mt19937_64 rng(17);
  for (const auto& codec : unconditional_codecs()) {
    for (int i = 0; i < 500; ++i) {
      auto x = random_bits(rng, rng() % 70);
      auto junk = random_bits(rng, rng() % 9);
      auto code = codec.encode(x);
      auto stream_bits = code + junk;
      BitStream s(stream_bits);
      EXPECT_EQ(codec.decode(s), x) << codec.name;
      EXPECT_EQ(s.position(), code.size()) << codec.name;
      EXPECT_EQ(s.rest(), junk);
    }
  }
}

TEST(Encoders, LengthLaws) {
  for (std::size_t n = 0; n <= 300; ++n) {
    auto x = repeated(1, n);
    for (const auto& codec : unconditional_codecs()) EXPECT_EQ(codec.encode(x).size(), codec.length(n)) << codec.name;
    auto w = oracle::bit_width(n);
    EXPECT_EQ(doubling_length(n), 2 * n + 2);
    EXPECT_EQ(header_numeral_length(n), n + 2 * w + 2);
    EXPECT_EQ(two_header_length(n), n + w + 2 * oracle::bit_width(w) + 2);
  }
  EXPECT_EQ(encode_doubling(BitString::parse("001")).str(), "00001101");
  EXPECT_EQ(encode_header_numeral(BitString::parse("001")).str(), "111101001");
  EXPECT_EQ(encode_two_header(BitString::parse("001")).str(), "11000111001");
  EXPECT_EQ(encode_doubling({}).str(), "01");
}

TEST(Encoders, CodewordSetsArePrefixFree) {
  for (const auto& codec : unconditional_codecs()) {
    std::vector<std::string> codes;
    for (const auto& x : all_strings_up_to(7)) codes.push_back(codec.encode(x).str());
    EXPECT_TRUE(oracle::pairwise_prefix_free(codes)) << codec.name;
  }
}

TEST(Encoders, DoublingDecoderAgreesWithMembershipOracle) {
  for (const auto& p : all_strings_up_to(12)) {
    BitStream s(p);
    bool whole = false;
    try {
      decode_doubling(s);
      whole = s.at_end();
    } catch (const OutOfData&) {
    }
    // accepted as a whole codeword exactly when it is (00|11)*(01|10)
    static const std::regex re("^(00|11)*(01|10)$");
    EXPECT_EQ(whole, std::regex_match(p.str(), re)) << p.str();
  }
}

TEST(Encoders, TruncatedCodewordsRunOutOfData) {
  for (const auto& codec : unconditional_codecs()) {
    auto code = codec.encode(BitString::parse("1011001"));
    for (std::size_t n = 0; n < code.size(); ++n) {
      auto cut = code.prefix(n);
      BitStream s(cut);
      EXPECT_THROW(codec.decode(s), OutOfData) << codec.name << " " << n;
    }
  }
}

TEST(Encoders, ElegantHeaderRoundTrip) {
  auto m = toy_numeral_machine();
  for (const auto& x : all_strings_up_to(6)) {
    auto code = encode_elegant_header(x, m, 12, Budget::unlimited());
    EXPECT_EQ(code.size(), 2 * oracle::bit_width(x.size()) + 2 + x.size());
    auto stream_bits = code + BitString{1, 1};
    BitStream s(stream_bits);
    EXPECT_EQ(decode_elegant_header(s, m, 12, Budget::unlimited()), x);
    EXPECT_EQ(s.rest().str(), "11");
  }
  EXPECT_THROW(encode_elegant_header(repeated(0, 40), m, 6, Budget::unlimited()),
               SearchExhausted);
  auto ten = BitString::parse("10");
  BitStream bad(ten);
  EXPECT_THROW(decode_elegant_header(bad, m, 12, Budget::unlimited()), std::runtime_error);
}

TEST(Encoders, ByName) {
  EXPECT_TRUE(codec_by_name("two-header"));
  EXPECT_FALSE(codec_by_name("elegant"));
  EXPECT_EQ(numeral(0).str(), "");
  EXPECT_EQ(numeral(6).str(), "110");
}
