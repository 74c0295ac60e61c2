#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ait/bits.hpp"
#include "ait/dyadic.hpp"
#include "ait/interpreter.hpp"
#include "ait/sexpr.hpp"

namespace ait {

/// Outcome of running a self-delimiting machine on a program.
///
/// Halted requires exact consumption: the machine stopped by itself after
/// reading every bit of the program, no more and no less.
struct RunResult {
  enum class Kind { Halted, StillRunning, Invalid };
  enum class Reason { None, OutOfData, ParseError, PartialConsumption };

  Kind kind = Kind::Invalid;
  SExpr output;
  std::size_t bits_consumed = 0;
  Reason reason = Reason::None;

  static RunResult halted(SExpr out, std::size_t consumed) { return {Kind::Halted, std::move(out), consumed, Reason::None}; }
  static RunResult still_running() { return {Kind::StillRunning, {}, 0, Reason::None}; }
  static RunResult invalid(Reason r) { return {Kind::Invalid, {}, 0, r}; }

  [[nodiscard]] bool is_halted() const noexcept { return kind == Kind::Halted; }

  /// Whether running a longer program with this one as prefix could still
  /// produce a different result. Only a run that wanted more bits qualifies;
  /// every other outcome is decided by the bits already present.
  [[nodiscard]] bool needs_more_bits() const noexcept { return kind == Kind::Invalid && reason == Reason::OutOfData; }
};

inline std::string reason_name(RunResult::Reason r) {
  switch (r) {
    case RunResult::Reason::OutOfData: return "out-of-data";
    case RunResult::Reason::ParseError: return "parse-error";
    case RunResult::Reason::PartialConsumption: return "partial-consumption";
    case RunResult::Reason::None: break;
  }
  return "none";
}

/// Canonical one-line form: "halted (a b c)", "still-running",
/// "invalid out-of-data".
inline std::string format_run_result(const RunResult& r) {
  switch (r.kind) {
    case RunResult::Kind::Halted: return "halted " + print_canonical(r.output);
    case RunResult::Kind::StillRunning: return "still-running";
    case RunResult::Kind::Invalid: return "invalid " + reason_name(r.reason);
  }
  return {};
}

/// A self-delimiting computer: a deterministic, step-budgeted partial map from
/// bit strings to S-expressions whose halting set is prefix-free.
struct Machine {
  std::string name;
  std::function<RunResult(const BitString&, Budget)> runner;
  /// Halting probability, when it is known analytically.
  std::optional<Dyadic> known_omega;

  RunResult run(const BitString& p, Budget budget) const { return runner(p, budget); }
  RunResult operator()(const BitString& p, Budget budget) const { return runner(p, budget); }
};

// ---------------------------------------------------------------------------
// The universal machine U: an 8-bit-per-character expression terminated by a
// newline, evaluated with the rest of the program as binary data.

/// `(eval (read-exp))`, the expression U tries on its program.
inline const SExpr& u_driver() {
  static const SExpr e = list({sym("eval"), list({sym("read-exp")})});
  return e;
}

namespace detail {
/// U evaluated entirely by the interpreter.
inline RunResult run_U_interpreted(const BitString& p, Budget budget) {
  thread_local Interpreter interp;
  auto out = interp.try_eval(u_driver(), budget, p);
  switch (out.status) {
    case TryOutcome::Status::OutOfTime: return RunResult::still_running();
    case TryOutcome::Status::OutOfData:
      return RunResult::invalid(out.malformed_data ? RunResult::Reason::ParseError : RunResult::Reason::OutOfData);
    case TryOutcome::Status::Success: break;
  }
  if (out.bits_read != p.size()) return RunResult::invalid(RunResult::Reason::PartialConsumption);
  return RunResult::halted(out.value, out.bits_read);
}

/// The outcome of U decided from the bytes before the newline alone: reading
/// past the end, or a byte read-exp rejects. nullopt once a newline is
/// present and the expression has to be evaluated.
inline std::optional<RunResult> u_prefix_verdict(const BitString& p) {
  for (std::size_t at = 0;; at += 8) {
    if (p.size() - at < 8) return RunResult::invalid(RunResult::Reason::OutOfData);
    unsigned c = 0;
    for (std::size_t i = 0; i < 8; ++i) c = (c << 1) | static_cast<unsigned>(p[at + i]);
    if (c == static_cast<unsigned>(kNewline)) return std::nullopt;
    if (c < ' ' || c > '~') return RunResult::invalid(RunResult::Reason::ParseError);
  }
}
}  // namespace detail

/// Runs U on p: the result of TRYing `(eval (read-exp))` with p as binary
/// data, under the exact-consumption rule.
inline RunResult run_U(const BitString& p, Budget budget = Budget::unlimited()) {
  // `(eval (read-exp))` takes two steps before the first bit is read.
  if (budget.remaining() >= 2)
    if (auto v = detail::u_prefix_verdict(p)) return *v;
  return detail::run_U_interpreted(p, budget);
}

inline Machine lisp_u_machine() { return Machine{"lispu", [](const BitString& p, Budget b) { return run_U(p, b); }, {}}; }

// ---------------------------------------------------------------------------
// Toy machines over the bit-doubling code. They read two bits at a time, one
// step per pair, while the pairs are twins; the pair 01 ends the codeword.

namespace detail {
struct DoublingRead {
  RunResult failure;  // set unless ok
  bool ok = false;
  BitString decoded;
};

inline DoublingRead read_doubling_codeword(BitStream& s, Budget& budget) {
  DoublingRead r;
  for (;;) {
    if (!budget.take()) {
      r.failure = RunResult::still_running();
      return r;
    }
    if (s.remaining() < 2) {
      r.failure = RunResult::invalid(RunResult::Reason::OutOfData);
      return r;
    }
    int a = s.read_bit(), b = s.read_bit();
    if (a == b) {
      r.decoded.push_back(a != 0);
    } else if (a == 0) {
      r.ok = true;
      return r;
    } else {
      r.failure = RunResult::invalid(RunResult::Reason::ParseError);
      return r;
    }
  }
}
}  // namespace detail

/// Halts exactly on codewords d(x) = doubled bits of x followed by 01,
/// outputting x as a list of 0s and 1s. Its halting probability is 1/2.
inline Machine toy_machine() {
  auto run = [](const BitString& p, Budget budget) {
    BitStream s(p);
    auto r = detail::read_doubling_codeword(s, budget);
    if (!r.ok) return r.failure;
    if (!s.at_end()) return RunResult::invalid(RunResult::Reason::PartialConsumption);
    return RunResult::halted(bits_as_list(r.decoded), s.position());
  };
  return Machine{"toy", run, Dyadic(1, 1)};
}

/// Big-endian value of a bit string; the empty string is 0.
inline Natural numeral_value(const BitString& bits) {
  Natural v = 0;
  for (auto b : bits) v = (v << 1) | Natural(b);
  return v;
}

/// The toy machine reading its decoded bits as a binary numeral.
inline Machine toy_numeral_machine() {
  auto run = [](const BitString& p, Budget budget) {
    BitStream s(p);
    auto r = detail::read_doubling_codeword(s, budget);
    if (!r.ok) return r.failure;
    if (!s.at_end()) return RunResult::invalid(RunResult::Reason::PartialConsumption);
    return RunResult::halted(nat(numeral_value(r.decoded)), s.position());
  };
  return Machine{"toy-numeral", run, Dyadic(1, 1)};
}

/// Two consecutive toy codewords d(x) d(y), output (x y).
inline Machine toy_pair_machine() {
  auto run = [](const BitString& p, Budget budget) {
    BitStream s(p);
    auto first = detail::read_doubling_codeword(s, budget);
    if (!first.ok) return first.failure;
    auto second = detail::read_doubling_codeword(s, budget);
    if (!second.ok) return second.failure;
    if (!s.at_end()) return RunResult::invalid(RunResult::Reason::PartialConsumption);
    return RunResult::halted(list({bits_as_list(first.decoded), bits_as_list(second.decoded)}), s.position());
  };
  return Machine{"toy-pair", run, Dyadic(1, 2)};
}

/// Machine k is selected by the prefix 0^k 1; the rest of the program is
/// handed to it unchanged. A program of zeros reads past its end; an index
/// past the end of the list is rejected.
inline Machine compose_universal(std::vector<Machine> machines) {
  auto run = [ms = std::move(machines)](const BitString& p, Budget budget) {
    std::size_t k = 0;
    while (k < p.size() && p[k] == 0) ++k;
    if (k >= ms.size()) return RunResult::invalid(RunResult::Reason::ParseError);
    if (k == p.size()) return RunResult::invalid(RunResult::Reason::OutOfData);
    BitString rest;
    rest.append(p.view().subspan(k + 1));
    auto r = ms[k].run(rest, budget);
    if (r.is_halted()) r.bits_consumed += k + 1;
    return r;
  };
  return Machine{"composed", run, {}};
}

/// Parses a machine name accepted on the command line.
inline std::optional<Machine> machine_by_name(const std::string& name) {
  if (name == "toy") return toy_machine();
  if (name == "toy-numeral") return toy_numeral_machine();
  if (name == "toy-pair") return toy_pair_machine();
  if (name == "lispu") return lisp_u_machine();
  return std::nullopt;
}

}  // namespace ait
