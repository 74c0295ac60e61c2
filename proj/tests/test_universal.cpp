#include <gtest/gtest.h>

#include <random>

#include "ait/ait.hpp"
#include "oracles.hpp"

using namespace ait;

namespace {
BitString program(const std::string& implicit_text, BitString data = {}) {
  return to_bits(parse_implicit(implicit_text)) + data;
}
}  // namespace

TEST(U, BasicPrograms) {
  EXPECT_EQ(format_run_result(run_U(program("' (a b c)"))), "halted (a b c)");
  EXPECT_EQ(format_run_result(run_U(program("read-bit", {0}))), "halted 0");
  EXPECT_EQ(format_run_result(run_U(program("read-bit", {1}))), "halted 1");
  EXPECT_EQ(format_run_result(run_U(program("0"))), "halted 0");
}

TEST(U, ExactConsumption) {
  auto r = run_U(program("' (a b c)", {1}));
  EXPECT_EQ(format_run_result(r), "invalid partial-consumption");
  EXPECT_EQ(format_run_result(run_U(program("read-bit"))), "invalid out-of-data");
  EXPECT_EQ(format_run_result(run_U({})), "invalid out-of-data");
  EXPECT_EQ(format_run_result(run_U(BitString::from_uint(7, 8))), "invalid parse-error");
  BitString unbalanced;
  for (char c : std::string("(a\n")) unbalanced = unbalanced + BitString::from_uint(static_cast<unsigned char>(c), 8);
  EXPECT_EQ(format_run_result(run_U(unbalanced)), "invalid parse-error");
  auto h = run_U(program("read-bit", {1}));
  EXPECT_EQ(h.bits_consumed, program("read-bit", {1}).size());
}

TEST(U, BudgetedRuns) {
  auto loop = program("let (f n) (f n) (f 0)");
  EXPECT_EQ(run_U(loop, Budget::steps(100)).kind, RunResult::Kind::StillRunning);
  EXPECT_EQ(run_U(loop).kind, RunResult::Kind::StillRunning);  // depth cap
  EXPECT_EQ(run_U(program("+ 1 2"), Budget::steps(0)).kind, RunResult::Kind::StillRunning);
  EXPECT_TRUE(run_U(program("+ 1 2"), Budget::steps(3)).is_halted());
}

TEST(U, PrefixScanAgreesWithTheInterpreter) {
  for (const auto& p : all_strings_up_to(16))
    for (std::uint64_t t : {0u, 1u, 2u, 5u, 100u}) {
      auto fast = run_U(p, Budget::steps(t));
      auto slow = detail::run_U_interpreted(p, Budget::steps(t));
      ASSERT_EQ(format_run_result(fast), format_run_result(slow)) << p.str() << " t=" << t;
    }
  std::mt19937_64 rng(4);
  oracle::ExprGen gen(4);
  for (int i = 0; i < 2000; ++i) {
    auto p = to_bits(gen.expr(3));
    for (int k = gen.uniform(0, 2); k > 0; --k) p.push_back(gen.uniform(0, 1) != 0);
    auto cut = p.prefix(std::uniform_int_distribution<std::size_t>(0, p.size())(rng));
    for (const auto& q : {p, cut}) {
      auto fast = run_U(q, Budget::steps(500));
      auto slow = detail::run_U_interpreted(q, Budget::steps(500));
      ASSERT_EQ(format_run_result(fast), format_run_result(slow)) << q.str();
    }
  }
}

TEST(U, SampledDomainIsPrefixFree) {
  oracle::ExprGen gen(8);
  std::vector<BitString> halting;
  for (int i = 0; i < 400; ++i) {
    auto p = to_bits(gen.expr(3));
    int extra = gen.uniform(0, 3);
    for (int k = 0; k < extra; ++k) p.push_back(gen.uniform(0, 1) != 0);
    if (run_U(p, Budget::steps(500)).is_halted()) halting.push_back(p);
  }
  ASSERT_GT(halting.size(), 50u);
  for (const auto& p : halting) {
    for (std::size_t n = 0; n < p.size(); ++n) EXPECT_FALSE(run_U(p.prefix(n), Budget::steps(500)).is_halted());
    for (int b = 0; b < 2; ++b) {
      auto q = p;
      q.push_back(b != 0);
      EXPECT_FALSE(run_U(q, Budget::steps(500)).is_halted());
    }
  }
}

TEST(U, BudgetMonotonicity) {
  oracle::ExprGen gen(21);
  for (int i = 0; i < 500; ++i) {
    auto p = to_bits(gen.expr(3));
    for (std::uint64_t t = 1; t < 64; t *= 2) {
      auto r = run_U(p, Budget::steps(t));
      if (!r.is_halted()) continue;
      auto later = run_U(p, Budget::steps(t * 3));
      ASSERT_TRUE(later.is_halted());
      EXPECT_EQ(later.output, r.output);
    }
  }
}

TEST(ToyMachine, Examples) {
  auto toy = toy_machine();
  EXPECT_EQ(format_run_result(toy.run(BitString::parse("01"), Budget::unlimited())), "halted nil");
  EXPECT_EQ(format_run_result(toy.run(BitString::parse("00001101"), Budget::unlimited())), "halted (0 0 1)");
  EXPECT_TRUE(toy.run(BitString::parse("0"), Budget::unlimited()).needs_more_bits());
  EXPECT_EQ(format_run_result(toy.run(BitString::parse("10"), Budget::unlimited())), "invalid parse-error");
  EXPECT_EQ(format_run_result(toy.run(BitString::parse("0100"), Budget::unlimited())),
            "invalid partial-consumption");
  EXPECT_EQ(toy.run(BitString::parse("00001101"), Budget::steps(3)).kind, RunResult::Kind::StillRunning);
  EXPECT_TRUE(toy.run(BitString::parse("00001101"), Budget::steps(4)).is_halted());
}

TEST(ToyMachine, AgreesWithMembershipOracle) {
  auto toy = toy_machine();
  for (const auto& p : all_strings_up_to(14)) {
    auto r = toy.run(p, Budget::unlimited());
    ASSERT_EQ(r.is_halted(), oracle::toy_halts(p.str())) << p.str();
    if (r.is_halted()) {
      std::string out;
      for (const auto& b : r.output.items()) out += b.value() == 0 ? '0' : '1';
      EXPECT_EQ(out, oracle::toy_output(p.str()));
    }
  }
}

TEST(ToyMachine, OmegaPartialSums) {
  for (std::size_t L = 0; L <= 14; ++L) {
    auto est = omega_lower_bound(toy_machine(), L, Budget::unlimited());
    EXPECT_EQ(oracle::as_rational(est.value), oracle::toy_partial_sum(L, 1000)) << L;
  }
}

TEST(Compose, SelectsMachineByUnaryPrefix) {
  auto u = compose_universal({toy_machine(), toy_numeral_machine()});
  EXPECT_EQ(format_run_result(u.run(BitString::parse("1 00001101"), Budget::unlimited())), "halted (0 0 1)");
  EXPECT_EQ(format_run_result(u.run(BitString::parse("01 00001101"), Budget::unlimited())), "halted 1");
  EXPECT_EQ(u.run(BitString::parse("01 00001101"), Budget::unlimited()).bits_consumed, 10u);
  EXPECT_EQ(format_run_result(u.run(BitString::parse("0"), Budget::unlimited())), "invalid out-of-data");
  EXPECT_EQ(format_run_result(u.run(BitString::parse("00"), Budget::unlimited())), "invalid parse-error");
  EXPECT_EQ(format_run_result(u.run({}, Budget::unlimited())), "invalid out-of-data");
}

TEST(Compose, SimulationOverheadIsExactlyKPlusOne) {
  auto parts = std::vector<Machine>{toy_pair_machine(), toy_machine(), toy_numeral_machine()};
  auto u = compose_universal(parts);
  for (std::size_t k = 0; k < parts.size(); ++k) {
    for (const auto& h : halting_programs(parts[k], 8, Budget::unlimited())) {
      auto direct = H_upper(h.output, parts[k], 10, Budget::unlimited());
      auto composed = H_upper(h.output, u, 10 + k + 1, Budget::unlimited());
      ASSERT_TRUE(direct && composed);
      EXPECT_LE(composed->size, direct->size + k + 1);
    }
  }
}

TEST(Machines, ByName) {
  EXPECT_TRUE(machine_by_name("toy"));
  EXPECT_TRUE(machine_by_name("lispu"));
  EXPECT_FALSE(machine_by_name("nope"));
  EXPECT_EQ(toy_pair_machine().known_omega->fraction(), "1/4");
}
