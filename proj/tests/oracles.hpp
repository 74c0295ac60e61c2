#pragma once

// Reference implementations used only by the tests. Each one is written
// without the library code it checks.

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <regex>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ait/ait.hpp"

namespace oracle {

using Rational = boost::rational<boost::multiprecision::cpp_int>;

/// Toy machine domain: (00|11)*01.
inline bool toy_halts(const std::string& bits) {
  static const std::regex re("^(00|11)*01$");
  return std::regex_match(bits, re);
}

inline std::string toy_output(const std::string& bits) {
  std::string out;
  for (std::size_t i = 0; i + 2 < bits.size(); i += 2) out += bits[i];
  return out;
}

/// Sum of 2^-|p| over toy codewords of length <= L that finish within t
/// steps; a codeword with N doubled pairs needs N + 1 steps.
inline Rational toy_partial_sum(std::size_t L, std::uint64_t t) {
  Rational sum = 0;
  for (std::uint64_t n = 0; 2 * n + 2 <= L && n + 1 <= t; ++n) {
    // 2^n codewords, each of length 2n + 2
    sum += Rational(1, boost::multiprecision::cpp_int(1) << (n + 2));
  }
  return sum;
}

inline Rational as_rational(const ait::Dyadic& d) { return Rational(d.numerator(), d.denominator()); }

inline std::string str(const ait::BitString& b) { return b.str(); }

inline bool prefix_related(const std::string& a, const std::string& b) {
  return a.size() <= b.size() ? b.compare(0, a.size(), a) == 0 : a.compare(0, b.size(), b) == 0;
}

/// Least string of length `size` not prefix-related to any assigned
/// codeword, by trying all 2^size candidates in order.
inline std::optional<std::string> first_free(const std::vector<std::string>& assigned, std::size_t size) {
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << size); ++v) {
    std::string s(size, '0');
    for (std::size_t i = 0; i < size; ++i) s[size - 1 - i] = ((v >> i) & 1) ? '1' : '0';
    bool ok = true;
    for (const auto& a : assigned)
      if (prefix_related(a, s)) {
        ok = false;
        break;
      }
    if (ok) return s;
  }
  return std::nullopt;
}

inline bool pairwise_prefix_free(const std::vector<std::string>& codes) {
  for (std::size_t i = 0; i < codes.size(); ++i)
    for (std::size_t j = i + 1; j < codes.size(); ++j)
      if (prefix_related(codes[i], codes[j])) return false;
  return true;
}

inline std::size_t bit_width(std::uint64_t n) {
  std::size_t w = 0;
  while (n >> w) ++w;
  return w;
}

// ---------------------------------------------------------------------------
// Elegance by brute force: every string of tokens up to the cap that parses
// and prints back to itself, evaluated, then grouped by value.

struct BruteElegance {
  std::set<std::pair<std::string, std::string>> elegant;  // (expression, value)
  std::size_t canonical_count = 0;
};

inline BruteElegance brute_force_elegant(std::size_t cap, std::uint64_t budget, const std::vector<std::string>& symbols) {
  std::vector<std::string> tokens{"(", ")", " ", "'", "nil"};
  for (int d = 0; d <= 9; ++d) tokens.push_back(std::to_string(d));
  tokens.insert(tokens.end(), symbols.begin(), symbols.end());

  // Token strings are built left to right. Two atoms may only touch when
  // both are digits (a longer numeral); anything else would read as one
  // symbol outside the vocabulary. Once a top-level expression is complete
  // nothing may follow it.
  enum Kind { None, Open, Close, Blank, Quote, Digit, Word };
  auto kind_of = [](const std::string& t) {
    if (t == "(") return Open;
    if (t == ")") return Close;
    if (t == " ") return Blank;
    if (t == "'") return Quote;
    if (t.size() == 1 && t[0] >= '0' && t[0] <= '9') return Digit;
    return Word;
  };
  std::set<std::string> texts;
  std::string cur;
  auto rec = [&](auto&& self, Kind prev, int depth) -> void {
    if (!cur.empty()) texts.insert(cur);
    for (const auto& t : tokens) {
      if (cur.size() + t.size() > cap) continue;
      Kind k = kind_of(t);
      bool atom = k == Digit || k == Word, prev_atom = prev == Digit || prev == Word;
      if (atom && prev_atom && !(k == Digit && prev == Digit)) continue;
      if (depth == 0 && prev != None && prev != Quote && !(prev == Digit && k == Digit)) continue;
      if (k == Blank && (depth == 0 || prev == Open || prev == Blank)) continue;
      if (k == Close && (depth == 0 || prev == Blank)) continue;
      int d = depth + (k == Open) - (k == Close);
      auto keep = cur.size();
      cur += t;
      self(self, k, d);
      cur.resize(keep);
    }
  };
  rec(rec, None, 0);

  std::map<std::size_t, std::vector<std::pair<std::string, ait::SExpr>>> by_size;
  for (const auto& s : texts) {
    ait::SExpr e;
    try {
      e = ait::parse_full(s);
    } catch (const ait::ParseError&) {
      continue;
    }
    if (ait::print_canonical(e) != s) continue;
    by_size[s.size()].emplace_back(s, e);
  }

  BruteElegance out;
  std::map<std::string, std::size_t> smallest;
  ait::Interpreter interp;
  for (auto& [size, items] : by_size) {
    std::vector<std::pair<std::string, std::string>> here;
    for (auto& [text, e] : items) {
      ++out.canonical_count;
      auto r = interp.try_eval(e, ait::Budget::steps(budget), {});
      if (!r.success()) continue;
      here.emplace_back(text, ait::print_canonical(r.value));
    }
    for (auto& [text, value] : here) smallest.try_emplace(value, size);
    for (auto& [text, value] : here)
      if (smallest[value] == size) out.elegant.emplace(text, value);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Random expressions over the dialect.

class ExprGen {
public:
  explicit ExprGen(std::uint64_t seed) : rng_(seed) {}

  ait::SExpr expr(int depth = 4) {
    int pick = uniform(0, depth <= 0 ? 2 : 9);
    switch (pick) {
      case 0: return ait::nat(uniform(0, 12));
      case 1: return ait::sym(kAtoms[uniform(0, static_cast<int>(std::size(kAtoms)) - 1)]);
      case 2: return ait::SExpr{};
      case 3: return ait::quote(data(depth - 1));
      case 4: return ait::list({ait::sym("if"), expr(depth - 1), expr(depth - 1), expr(depth - 1)});
      case 5: return ait::list({ait::sym("display"), expr(depth - 1)});
      case 6: {
        auto [name, arity] = kOps[uniform(0, static_cast<int>(std::size(kOps)) - 1)];
        std::vector<ait::SExpr> items{ait::sym(name)};
        for (int i = 0; i < arity; ++i) items.push_back(expr(depth - 1));
        return ait::list(std::move(items));
      }
      case 7:
        return ait::list({ait::sym("try"), ait::nat(uniform(0, 40)), ait::quote(expr(depth - 1)),
                          ait::quote(bits(uniform(0, 3)))});
      case 8: {
        // (let (f x) body value) with a body that may recurse
        auto body = uniform(0, 1) ? ait::list({ait::sym("f"), ait::list({ait::sym("-"), ait::sym("x"), ait::nat(1)})})
                                  : expr(depth - 1);
        auto guarded = ait::list({ait::sym("if"), ait::list({ait::sym("="), ait::sym("x"), ait::nat(0)}),
                                  expr(depth - 1), body});
        return ait::list({ait::sym("let"), ait::list({ait::sym("f"), ait::sym("x")}), guarded,
                          ait::list({ait::sym("f"), ait::nat(uniform(0, 6))})});
      }
      default: return ait::list({ait::sym("eval"), ait::quote(expr(depth - 1))});
    }
  }

  ait::SExpr data(int depth) {
    if (depth <= 0 || uniform(0, 2) == 0) return uniform(0, 1) ? ait::nat(uniform(0, 9)) : ait::sym("a");
    std::vector<ait::SExpr> items;
    for (int i = uniform(0, 3); i > 0; --i) items.push_back(data(depth - 1));
    return ait::list(std::move(items));
  }

  ait::SExpr bits(int n) {
    std::vector<ait::SExpr> items;
    for (int i = 0; i < n; ++i) items.push_back(ait::nat(uniform(0, 1)));
    return ait::list(std::move(items));
  }

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  std::mt19937_64& rng() { return rng_; }

private:
  static constexpr const char* kAtoms[] = {"a", "b", "x", "false", "true", "no-time-limit"};
  static constexpr std::pair<const char*, int> kOps[] = {
      {"car", 1}, {"cdr", 1}, {"cadr", 1}, {"cons", 2}, {"append", 2}, {"atom", 1}, {"=", 2}, {"+", 2},
      {"-", 2},   {"*", 2},   {"<", 2},    {"size", 1}, {"bits", 1},   {"read-bit", 0}, {"read-exp", 0}};
  std::mt19937_64 rng_;
};

}  // namespace oracle
