#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ait/complexity.hpp"
#include "ait/interpreter.hpp"
#include "ait/sexpr.hpp"

namespace ait {

/// Atoms an expression enumeration may use: every numeral, the empty list,
/// and the listed symbols. The quote symbol is only ever a list head.
struct Vocabulary {
  std::vector<std::string> symbols;

  /// Primitive names plus `extra`.
  static Vocabulary standard(std::vector<std::string> extra = {"a", "b", "c"}) {
    Vocabulary v;
    auto table = ArityTable::primitives();
    for (const auto& [name, arity] : table.entries())
      if (name != "'") v.symbols.push_back(name);
    for (auto& s : extra) v.symbols.push_back(std::move(s));
    return v.normalized();
  }

  /// Adds every symbol occurring in `e`.
  void add_atoms_of(const SExpr& e) {
    if (e.is_symbol() && e.name() != "'") symbols.push_back(e.name());
    for (const auto& item : e.items()) add_atoms_of(item);
    *this = normalized();
  }

private:
  Vocabulary normalized() const {
    std::set<std::string> s;
    for (const auto& name : symbols)
      if (name != "nil" && name != "'" && SExpr::valid_symbol_name(name)) s.insert(name);
    return Vocabulary{{s.begin(), s.end()}};
  }
};

/// Generates every canonical expression over a vocabulary with a given
/// printed size. Canonical means print_canonical of the expression has that
/// many characters and parses back to the same expression.
class ExpressionEnumerator {
public:
  explicit ExpressionEnumerator(Vocabulary vocab) : vocab_(std::move(vocab)) {}

  /// Calls visit(e) for each expression of printed size n, atoms first,
  /// numerals in increasing order. visit returns false to stop.
  template <class Visit>
  bool for_each(std::size_t n, Visit&& visit) {
    if (n == 0) return true;
    for (const auto& s : vocab_.symbols)
      if (s.size() == n && !visit(sym(s))) return false;
    if (n == 3 && !visit(SExpr{})) return false;
    if (!for_each_numeral(n, visit)) return false;
    if (n < 3) return true;
    // A list "(h t1 t2 ...)": head h of size k, then tails totalling n-2-k.
    for (std::size_t k = 1; k + 2 <= n; ++k) {
      auto heads = head_candidates(k);
      std::size_t rest = n - 2 - k;
      if (rest == 0) {
        for (const auto& h : heads)
          if (!visit(list({h}))) return false;
        continue;
      }
      if (rest < 2) continue;  // a tail needs a blank and one character
      const auto& ts = tails(rest);
      for (const auto& h : heads)
        for (const auto& t : ts) {
          std::vector<SExpr> items{h};
          items.insert(items.end(), t.begin(), t.end());
          if (!visit(list(std::move(items)))) return false;
        }
    }
    return true;
  }

  /// All expressions of size n, materialized (memoized).
  const std::vector<SExpr>& all(std::size_t n) {
    if (auto it = memo_.find(n); it != memo_.end()) return it->second;
    std::vector<SExpr> out;
    for_each(n, [&](const SExpr& e) {
      out.push_back(e);
      return true;
    });
    return memo_[n] = std::move(out);
  }

private:
  template <class Visit>
  static bool for_each_numeral(std::size_t digits, Visit& visit) {
    if (digits == 1) {
      for (int d = 0; d <= 9; ++d)
        if (!visit(nat(d))) return false;
      return true;
    }
    Natural lo = 1;
    for (std::size_t i = 1; i < digits; ++i) lo *= 10;
    Natural hi = lo * 10;
    for (Natural v = lo; v < hi; ++v)
      if (!visit(nat(v))) return false;
    return true;
  }

  std::vector<SExpr> head_candidates(std::size_t k) {
    std::vector<SExpr> out = all(k);
    if (k == 1) out.push_back(sym("'"));
    return out;
  }

  // Sequences of one or more elements, each preceded by a blank, with total
  // printed size n.
  const std::vector<std::vector<SExpr>>& tails(std::size_t n) {
    if (auto it = tail_memo_.find(n); it != tail_memo_.end()) return it->second;
    std::vector<std::vector<SExpr>> out;
    for (std::size_t k = 1; k + 1 <= n; ++k) {
      std::size_t rest = n - 1 - k;
      if (rest == 1) continue;
      const auto& firsts = all(k);
      if (rest == 0) {
        for (const auto& e : firsts) out.push_back({e});
        continue;
      }
      const auto& more = tails(rest);
      for (const auto& e : firsts)
        for (const auto& t : more) {
          std::vector<SExpr> seq{e};
          seq.insert(seq.end(), t.begin(), t.end());
          out.push_back(std::move(seq));
        }
    }
    return tail_memo_[n] = std::move(out);
  }

  Vocabulary vocab_;
  std::map<std::size_t, std::vector<SExpr>> memo_;
  std::map<std::size_t, std::vector<std::vector<SExpr>>> tail_memo_;
};

/// Smallest canonical expression, by printed size, whose value under
/// `budget` steps is `x`. The search covers the standard vocabulary plus the
/// symbols of `x`, so the record is an upper bound (exact = false).
inline std::optional<ComplexityRecord> lisp_complexity_upper(const SExpr& x, std::size_t char_cap, Budget budget,
                                                             Vocabulary vocab = Vocabulary::standard()) {
  vocab.add_atoms_of(x);
  ExpressionEnumerator gen(std::move(vocab));
  Interpreter interp;
  std::optional<ComplexityRecord> found;
  for (std::size_t n = 1; n <= char_cap && !found; ++n) {
    gen.for_each(n, [&](const SExpr& e) {
      auto out = interp.try_eval(e, budget, {});
      if (out.success() && out.value == x) {
        found = ComplexityRecord{x, e, n, char_cap, budget, false};
        return false;
      }
      return true;
    });
  }
  return found;
}

/// An expression with no strictly smaller enumerated expression of the same
/// value under the budget.
struct ElegantEntry {
  SExpr expression;
  SExpr value;
  friend bool operator==(const ElegantEntry&, const ElegantEntry&) = default;
};

/// Budget-elegant expressions of printed size <= char_cap, in enumeration
/// order. Expressions that run out of time or data have no value and are
/// never elegant.
inline std::vector<ElegantEntry> elegant_search(std::size_t char_cap, Budget budget,
                                                Vocabulary vocab = Vocabulary::standard()) {
  ExpressionEnumerator gen(std::move(vocab));
  Interpreter interp;
  std::unordered_map<std::string, std::size_t> smallest;  // canonical value text -> size
  std::vector<ElegantEntry> out;
  for (std::size_t n = 1; n <= char_cap; ++n) {
    gen.for_each(n, [&](const SExpr& e) {
      auto r = interp.try_eval(e, budget, {});
      if (!r.success()) return true;
      auto [it, fresh] = smallest.try_emplace(print_canonical(r.value), n);
      if (fresh || it->second == n) out.push_back({e, r.value});
      return true;
    });
  }
  return out;
}

}  // namespace ait
