#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ait/interpreter.hpp"
#include "ait/sexpr.hpp"

namespace ait {

/// A formal theory as a program: a non-terminating expression that emits
/// each theorem with `display`.
struct TheoryHandle {
  SExpr source;
  std::size_t size_chars = 0;

  static TheoryHandle of(SExpr source) {
    auto n = ait::size_chars(source);
    return TheoryHandle{std::move(source), n};
  }
};

struct TheoryRun {
  std::vector<SExpr> theorems;
  /// The source finished with a value instead of running out of time.
  /// Legal, but a theory is expected to enumerate forever.
  bool terminated = false;
  TryOutcome outcome;
};

/// Tries the theory for `budget` steps with no binary data and collects the
/// theorems it displayed.
inline TheoryRun run_theory(const TheoryHandle& th, std::uint64_t budget) {
  Interpreter interp;
  TheoryRun run;
  run.outcome = interp.try_eval(th.source, Budget::steps(budget), {});
  run.theorems = run.outcome.captures;
  run.terminated = run.outcome.success();
  return run;
}

/// Theorem shape `(elegant <expression>)`; nullopt for anything else.
inline std::optional<SExpr> elegance_claim(const SExpr& theorem) {
  if (theorem.is_list() && theorem.length() == 2 && theorem[0].is_symbol("elegant")) return theorem[1];
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// The Berry-paradox searcher. Given a theory of size N it looks through the
// theorems for an expression claimed elegant whose size exceeds N plus its
// own constant, and returns that expression's value. A sound theory can never
// supply one: the searcher is itself a smaller expression with that value.

namespace detail {
// `%C%` is the searcher's constant, `%T%` the theory. Scoping is dynamic, so
// `scan` can call `loop` and see `t`.
inline constexpr const char* kSearcherTemplate =
    "((lambda (th) (let (loop t) (let (scan l) (if (atom l) (loop (* 2 t)) "
    "(if (< (+ (size th) %C%) (size (cadr (car l)))) (eval (cadr (car l))) (scan (cdr l)))) "
    "(scan (cadr (cdr (try t th nil))))) (loop 1))) (' %T%))";

inline std::string replace_all(std::string s, const std::string& from, const std::string& to) {
  for (std::size_t at = s.find(from); at != std::string::npos; at = s.find(from, at + to.size()))
    s.replace(at, from.size(), to);
  return s;
}
}  // namespace detail

/// The searcher written in the dialect, applied to a quoted copy of the
/// theory, with `constant` as the size allowance.
inline SExpr searcher_expression(const TheoryHandle& th, std::size_t constant) {
  auto text = detail::replace_all(detail::kSearcherTemplate, "%C%", std::to_string(constant));
  text = detail::replace_all(text, "%T%", print_canonical(th.source));
  return parse_full(text);
}

/// Size of the searcher minus the size of the theory it is applied to: the
/// fixed point c with size(searcher(th, c)) = size(th) + c. Independent of
/// the theory.
inline std::size_t searcher_constant() {
  auto probe = TheoryHandle::of(SExpr{});
  std::size_t c = 0;
  for (;;) {
    auto next = size_chars(searcher_expression(probe, c)) - probe.size_chars;
    if (next == c) return c;
    c = next;
  }
}

/// The constant for the same construction in the original dialect.
inline constexpr std::size_t kReferenceSearcherConstant = 410;

struct BerryOutcome {
  bool found = false;
  std::size_t theory_size = 0;        // N
  std::size_t searcher_constant = 0;  // c
  SExpr claimed;                      // the expression claimed elegant
  std::size_t claimed_size = 0;
  SExpr value;                        // its value, now produced by the searcher
  std::uint64_t budget = 0;           // schedule entry at which it was found
  std::vector<std::string> warnings;  // malformed theorems skipped
};

/// Runs the theory for each budget of `schedule` in turn, stopping at the
/// first theorem `(elegant e)` with size(e) > N + c, or when `wall_cap` has
/// elapsed.
inline BerryOutcome berry_searcher(const TheoryHandle& th, const std::vector<std::uint64_t>& schedule,
                                   std::chrono::milliseconds wall_cap = std::chrono::seconds(60)) {
  BerryOutcome out;
  out.theory_size = th.size_chars;
  out.searcher_constant = searcher_constant();
  auto deadline = std::chrono::steady_clock::now() + wall_cap;
  std::size_t threshold = out.theory_size + out.searcher_constant;
  std::size_t warned = 0;
  for (auto t : schedule) {
    if (std::chrono::steady_clock::now() > deadline) break;
    auto run = run_theory(th, t);
    for (std::size_t i = 0; i < run.theorems.size(); ++i) {
      auto claim = elegance_claim(run.theorems[i]);
      if (!claim) {
        if (i >= warned) out.warnings.push_back("skipping malformed theorem " + print_canonical(run.theorems[i]));
        continue;
      }
      auto n = size_chars(*claim);
      if (n <= threshold) continue;
      Interpreter interp;
      auto v = interp.try_eval(*claim, Budget::unlimited(), {});
      if (!v.success()) {
        out.warnings.push_back("claimed expression has no value: " + print_canonical(*claim));
        continue;
      }
      out.found = true;
      out.claimed = *claim;
      out.claimed_size = n;
      out.value = v.value;
      out.budget = t;
      return out;
    }
    warned = std::max(warned, run.theorems.size());
  }
  return out;
}

/// Budgets 1, 2, 4, ... up to and including `max_budget`.
inline std::vector<std::uint64_t> doubling_schedule(std::uint64_t max_budget) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t t = 1; t <= max_budget; t *= 2) out.push_back(t);
  return out;
}

/// A sound mock theory: claims only that each numeral is elegant.
inline TheoryHandle sound_numeral_theory() {
  return TheoryHandle::of(
      parse_full("(let (f n) (f (+ 1 (cadr (display (cons (' elegant) (cons n nil)))))) (f 0))"));
}

/// An unsound mock theory: claims (+ 0 (+ 0 ... 7)) is elegant at every
/// nesting depth, though `7` has the same value.
inline TheoryHandle unsound_nesting_theory() {
  return TheoryHandle::of(parse_full(
      "(let (f e) (f (cons (' +) (cons 0 (cons (cadr (display (cons (' elegant) (cons e nil)))) nil)))) (f 7))"));
}

}  // namespace ait
