#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>

#include "ait/bits.hpp"
#include "ait/dyadic.hpp"
#include "ait/machine.hpp"
#include "ait/search.hpp"
#include "ait/sexpr.hpp"

namespace ait {

/// Best program found for a target.
///
/// `size` is in bits for machine programs and in characters for LISP
/// expressions. `exact` means every smaller candidate was decided within the
/// budget, so `size` is the true minimum for that machine or language;
/// otherwise it is only an upper bound.
struct ComplexityRecord {
  SExpr target;
  std::variant<BitString, SExpr> witness;
  std::size_t size = 0;
  std::size_t search_cap = 0;
  Budget budget = Budget::unlimited();
  bool exact = false;

  [[nodiscard]] std::string witness_text() const {
    if (auto* b = std::get_if<BitString>(&witness)) return b->str();
    return print_canonical(std::get<SExpr>(witness));
  }
};

/// Smallest program of length <= size_cap that halts with output `x` within
/// `budget` steps, searched in (length, lexicographic) order. nullopt when
/// no program within the caps produces `x`.
inline std::optional<ComplexityRecord> H_upper(const SExpr& x, const Machine& m, std::size_t size_cap, Budget budget) {
  std::optional<ComplexityRecord> found;
  bool undecided_below = false;
  std::size_t undecided_len = 0;
  enumerate_programs(m, size_cap, budget, [&](const BitString& p, const RunResult& r) {
    if (r.kind == RunResult::Kind::StillRunning && !undecided_below) {
      undecided_below = true;
      undecided_len = p.size();
    }
    if (r.is_halted() && r.output == x) {
      found = ComplexityRecord{x, p, p.size(), size_cap, budget, !undecided_below || undecided_len >= p.size()};
      return false;
    }
    return true;
  });
  return found;
}

/// Lower bound on the algorithmic probability of `x`: the measure of the
/// programs of length <= max_len that output `x` within `budget` steps.
inline Dyadic P_lower(const SExpr& x, const Machine& m, std::size_t max_len, Budget budget) {
  Dyadic sum;
  enumerate_programs(m, max_len, budget, [&](const BitString& p, const RunResult& r) {
    if (r.is_halted() && r.output == x) sum += Dyadic::pow2_neg(p.size());
    return true;
  });
  return sum;
}

/// Complexities of x, y and the pair (x y), and the derived mutual
/// information Hx + Hy - Hxy. Only exact records make the difference a
/// statement about the machines; otherwise it is an estimate, not a bound.
struct InfoReport {
  ComplexityRecord hx, hy, hxy;
  bool pair_from_construction = false;  // Hxy is a witness-level upper bound
  long long mutual = 0;

  [[nodiscard]] bool exact() const noexcept { return hx.exact && hy.exact && hxy.exact; }
  [[nodiscard]] std::string label() const { return exact() ? "exact" : "estimate, not a bound"; }
};

/// `(cons (eval (read-exp)) (cons (eval (read-exp)) nil))`: run on U ahead of
/// two programs, it yields the list of their two outputs.
inline SExpr pair_prefix() {
  static const SExpr e = parse_implicit("cons eval read-exp cons eval read-exp nil");
  return e;
}

/// to_bits(pair_prefix) followed by both programs.
inline BitString pair_program(const BitString& xstar, const BitString& ystar) {
  return to_bits(pair_prefix()) + xstar + ystar;
}

/// `pair_machine` must output lists (x y); for the universal machine pass it
/// as both arguments. When no pair program is found within the caps and both
/// single witnesses exist, Hxy falls back to the pair-prefix construction on
/// `single`.
inline std::optional<InfoReport> info_measures(const SExpr& x, const SExpr& y, const Machine& single,
                                               const Machine& pair_machine, std::size_t size_cap, Budget budget) {
  auto hx = H_upper(x, single, size_cap, budget);
  auto hy = H_upper(y, single, size_cap, budget);
  if (!hx || !hy) return std::nullopt;
  InfoReport rep{*hx, *hy, {}, false, 0};
  SExpr xy = list({x, y});
  if (auto hxy = H_upper(xy, pair_machine, size_cap, budget)) {
    rep.hxy = *hxy;
  } else {
    auto prog = pair_program(std::get<BitString>(hx->witness), std::get<BitString>(hy->witness));
    auto r = single.run(prog, Budget::unlimited());
    if (!r.is_halted() || r.output != xy) return std::nullopt;
    rep.hxy = ComplexityRecord{xy, prog, prog.size(), size_cap, budget, false};
    rep.pair_from_construction = true;
  }
  rep.mutual = static_cast<long long>(rep.hx.size) + static_cast<long long>(rep.hy.size) -
               static_cast<long long>(rep.hxy.size);
  return rep;
}

}  // namespace ait
