#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ait/bits.hpp"

namespace ait {

using Natural = boost::multiprecision::cpp_int;

/// Symbolic expression: a symbol, a natural number, or a list.
///
/// Values are immutable and share structure, so copies are cheap. The empty
/// list and the symbol `nil` are the same value; `SExpr::symbol("nil")`
/// returns the empty list.
class SExpr {
public:
  enum class Kind { Symbol, Natural, List };

  SExpr() = default;  // nil

  static SExpr symbol(std::string name) {
    if (name == "nil") return {};
    if (!valid_symbol_name(name)) throw std::invalid_argument("invalid symbol name: '" + name + "'");
    return SExpr(std::make_shared<const Node>(Node{Symbol{std::move(name)}}));
  }

  static SExpr natural(Natural value) {
    if (value < 0) throw std::invalid_argument("naturals are non-negative");
    return SExpr(std::make_shared<const Node>(Node{std::move(value)}));
  }

  static SExpr list(std::vector<SExpr> items) {
    if (items.empty()) return {};
    return SExpr(std::make_shared<const Node>(Node{std::move(items)}));
  }

  [[nodiscard]] Kind kind() const noexcept {
    if (!node_) return Kind::List;
    return static_cast<Kind>(node_->v.index());
  }
  [[nodiscard]] bool is_nil() const noexcept { return !node_; }
  [[nodiscard]] bool is_symbol() const noexcept { return kind() == Kind::Symbol; }
  [[nodiscard]] bool is_natural() const noexcept { return kind() == Kind::Natural; }
  [[nodiscard]] bool is_list() const noexcept { return kind() == Kind::List; }
  /// True unless this is a non-empty list.
  [[nodiscard]] bool is_atom() const noexcept { return kind() != Kind::List || is_nil(); }
  [[nodiscard]] bool is_symbol(std::string_view name) const noexcept {
    return is_symbol() && std::get<Symbol>(node_->v).name == name;
  }

  [[nodiscard]] const std::string& name() const { return std::get<Symbol>(checked().v).name; }
  [[nodiscard]] const Natural& value() const { return std::get<Natural>(checked().v); }
  [[nodiscard]] std::span<const SExpr> items() const noexcept {
    if (!node_ || kind() != Kind::List) return {};
    return std::get<std::vector<SExpr>>(node_->v);
  }
  [[nodiscard]] std::size_t length() const noexcept { return items().size(); }
  [[nodiscard]] const SExpr& operator[](std::size_t i) const { return items()[i]; }

  friend bool operator==(const SExpr& a, const SExpr& b) {
    if (a.node_ == b.node_) return true;
    if (!a.node_ || !b.node_) return false;
    return a.node_->v == b.node_->v;
  }

  /// Symbol characters: printable, non-blank, and none of `(`, `)`, `'`.
  static bool symbol_char(char c) noexcept {
    return c > ' ' && c < 0x7f && c != '(' && c != ')' && c != '\'';
  }

  /// The quote symbol `'` is legal as a symbol even though it is not made of
  /// symbol characters. All-digit names are numerals, never symbols.
  static bool valid_symbol_name(std::string_view name) noexcept {
    if (name == "'") return true;
    if (name.empty()) return false;
    bool all_digits = true;
    for (char c : name) {
      if (!symbol_char(c)) return false;
      if (c < '0' || c > '9') all_digits = false;
    }
    return !all_digits;
  }

private:
  struct Symbol {
    std::string name;
    friend bool operator==(const Symbol&, const Symbol&) = default;
  };
  struct Node {
    std::variant<Symbol, Natural, std::vector<SExpr>> v;
  };

  explicit SExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  const Node& checked() const {
    if (!node_) throw std::logic_error("nil has no symbol name or value");
    return *node_;
  }

  std::shared_ptr<const Node> node_;
};

inline SExpr sym(std::string name) { return SExpr::symbol(std::move(name)); }
inline SExpr nat(Natural v) { return SExpr::natural(std::move(v)); }
inline SExpr list(std::vector<SExpr> items) { return SExpr::list(std::move(items)); }
inline SExpr quote(SExpr e) { return list({sym("'"), std::move(e)}); }

// ---------------------------------------------------------------------------
// Canonical printer

namespace detail {
inline void print_into(const SExpr& e, std::string& out) {
  switch (e.kind()) {
    case SExpr::Kind::Symbol: out += e.name(); return;
    case SExpr::Kind::Natural: out += e.value().str(); return;
    case SExpr::Kind::List:
      if (e.is_nil()) {
        out += "nil";
        return;
      }
      out += '(';
      bool first = true;
      for (const auto& item : e.items()) {
        if (!first) out += ' ';
        first = false;
        print_into(item, out);
      }
      out += ')';
      return;
  }
}
}  // namespace detail

/// Fully parenthesized text with exactly one blank between list elements.
/// The empty list prints as `nil`; quote forms print as `(' x)`.
inline std::string print_canonical(const SExpr& e) {
  std::string out;
  detail::print_into(e, out);
  return out;
}

inline std::size_t size_chars(const SExpr& e) { return print_canonical(e).size(); }

// ---------------------------------------------------------------------------
// Parsers

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
        line(line),
        column(column) {}
  std::size_t line;
  std::size_t column;
};

/// Fixed argument count of each primitive. The implicit-parenthesis parser
/// consults it; user definitions extend it.
class ArityTable {
public:
  static ArityTable primitives() {
    ArityTable t;
    for (auto [name, arity] : std::initializer_list<std::pair<const char*, int>>{
             {"'", 1},     {"if", 3},       {"define", 2},   {"lambda", 2},   {"let", 3},
             {"car", 1},   {"cdr", 1},      {"cadr", 1},     {"cons", 2},     {"append", 2},
             {"atom", 1},  {"=", 2},        {"+", 2},        {"-", 2},        {"*", 2},
             {"<", 2},     {"size", 1},     {"bits", 1},     {"display", 1},  {"eval", 1},
             {"read-bit", 0}, {"read-exp", 0}, {"try", 3},   {"run-utm-on", 1}})
      t.arities_.emplace(name, arity);
    return t;
  }

  void set(const std::string& name, int arity) { arities_[name] = arity; }
  [[nodiscard]] std::optional<int> find(const std::string& name) const {
    auto it = arities_.find(name);
    if (it == arities_.end()) return std::nullopt;
    return it->second;
  }
  [[nodiscard]] bool contains(const std::string& name) const { return arities_.contains(name); }
  [[nodiscard]] const std::map<std::string, int>& entries() const noexcept { return arities_; }

private:
  std::map<std::string, int> arities_;
};

/// Recursive-descent reader shared by both notations.
///
/// Tokens are `(`, `)`, `'`, and runs of symbol characters. A `'` directly
/// after `(` is the quote symbol itself; anywhere else it quotes the next
/// expression. In implicit mode an atom naming an entry of the arity table
/// consumes that many following expressions, except at the head of an
/// explicit list.
class Reader {
public:
  Reader(std::string_view text, const ArityTable* table) : text_(text), table_(table) {}

  [[nodiscard]] bool at_end() {
    skip_blanks();
    return pos_ == text_.size();
  }

  SExpr read() {
    skip_blanks();
    if (pos_ == text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == ')') fail("unbalanced ')'");
    if (c == '(') return read_list();
    if (c == '\'') {
      ++pos_;
      return quote(read());
    }
    SExpr atom = read_atom();
    if (table_ && atom.is_symbol()) {
      if (auto arity = table_->find(atom.name())) {
        std::vector<SExpr> form{atom};
        for (int i = 0; i < *arity; ++i) {
          if (at_end()) fail("'" + atom.name() + "' needs " + std::to_string(*arity) + " argument(s)");
          if (text_[pos_] == ')') fail("'" + atom.name() + "' needs " + std::to_string(*arity) + " argument(s)");
          form.push_back(read());
        }
        return list(std::move(form));
      }
    }
    return atom;
  }

  [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
  SExpr read_list() {
    ++pos_;  // '('
    std::vector<SExpr> items;
    skip_blanks();
    if (pos_ < text_.size() && text_[pos_] == '\'') {
      ++pos_;
      items.push_back(sym("'"));
    } else if (pos_ < text_.size() && text_[pos_] != '(' && text_[pos_] != ')') {
      items.push_back(read_atom());
    }
    for (;;) {
      skip_blanks();
      if (pos_ == text_.size()) fail("unbalanced '(': missing ')'");
      if (text_[pos_] == ')') {
        ++pos_;
        return list(std::move(items));
      }
      items.push_back(read());
    }
  }

  SExpr read_atom() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && SExpr::symbol_char(text_[pos_])) ++pos_;
    if (start == pos_) fail(std::string("unexpected character '") + text_[pos_] + "'");
    std::string_view tok = text_.substr(start, pos_ - start);
    bool digits = true;
    for (char c : tok)
      if (c < '0' || c > '9') digits = false;
    if (digits) {
      Natural v = 0;  // decimal even with leading zeros
      for (char c : tok) v = v * 10 + (c - '0');
      return nat(v);
    }
    return sym(std::string(tok));
  }

  void skip_blanks() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        line_start_ = pos_ + 1;
      } else if (c != ' ' && c != '\t' && c != '\r') {
        return;
      }
      ++pos_;
    }
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, pos_ - line_start_ + 1); }

  std::string_view text_;
  const ArityTable* table_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t line_start_ = 0;
};

namespace detail {
inline SExpr read_single(std::string_view text, const ArityTable* table) {
  Reader r(text, table);
  if (r.at_end()) throw ParseError("empty input", 1, 1);
  SExpr e = r.read();
  if (!r.at_end()) throw ParseError("trailing characters after expression", r.line(), 1);
  return e;
}
}  // namespace detail

/// Parses one fully parenthesized expression. `'x` is accepted for `(' x)`.
inline SExpr parse_full(std::string_view text) { return detail::read_single(text, nullptr); }

/// Parses one expression in which primitive applications may omit their
/// parentheses, e.g. `* + 1 2 3` for `(* (+ 1 2) 3)`.
inline SExpr parse_implicit(std::string_view text, const ArityTable& table) {
  return detail::read_single(text, &table);
}

inline SExpr parse_implicit(std::string_view text) {
  static const ArityTable table = ArityTable::primitives();
  return parse_implicit(text, table);
}

// ---------------------------------------------------------------------------
// Expression <-> bits

inline constexpr char kNewline = '\n';

inline void append_char_bits(BitString& out, unsigned char c) {
  for (int i = 7; i >= 0; --i) out.push_back(((c >> i) & 1u) != 0);
}

/// Canonical text plus a trailing newline, 8 bits per character, MSB first.
inline BitString to_bits(const SExpr& e) {
  BitString out;
  for (char c : print_canonical(e)) append_char_bits(out, static_cast<unsigned char>(c));
  append_char_bits(out, kNewline);
  return out;
}

inline SExpr bits_as_list(const BitString& bits) {
  std::vector<SExpr> items;
  items.reserve(bits.size());
  static const SExpr zero = nat(0), one = nat(1);
  for (auto b : bits) items.push_back(b ? one : zero);
  return list(std::move(items));
}

/// Reads 8-bit characters up to a newline and parses them. Canonical text is
/// read as fully parenthesized; anything that does not parse that way is
/// retried in implicit-parenthesis form. Throws OutOfData if the stream ends
/// first, ParseError on malformed text or a byte that is not printable ASCII.
inline SExpr read_exp_from_stream(BitStream& s) {
  std::string text;
  for (;;) {
    auto c = static_cast<char>(s.read_uint(8));
    if (c == kNewline) break;
    if (c < ' ' || c > '~') throw ParseError("non-printable character in expression", 1, text.size() + 1);
    text.push_back(c);
  }
  try {
    return parse_full(text);
  } catch (const ParseError&) {
    return parse_implicit(text);
  }
}

}  // namespace ait
