#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ait/bits.hpp"
#include "ait/sexpr.hpp"

namespace ait {

/// Step allowance for an evaluation: a count, or unlimited.
class Budget {
public:
  static Budget unlimited() { return Budget(); }
  static Budget steps(std::uint64_t n) { return Budget(n); }

  [[nodiscard]] bool is_unlimited() const noexcept { return !remaining_; }
  [[nodiscard]] std::uint64_t remaining() const noexcept {
    return remaining_.value_or(std::numeric_limits<std::uint64_t>::max());
  }

  /// Takes one step; false when nothing is left.
  bool take() noexcept {
    if (!remaining_) return true;
    if (*remaining_ == 0) return false;
    --*remaining_;
    return true;
  }

  void spend(std::uint64_t n) noexcept {
    if (remaining_) *remaining_ -= std::min(n, *remaining_);
  }

  /// The tighter of this budget and a step limit.
  [[nodiscard]] Budget capped(std::uint64_t limit) const noexcept {
    return Budget(std::min(limit, remaining()));
  }

  friend bool operator==(const Budget&, const Budget&) = default;

private:
  Budget() = default;
  explicit Budget(std::uint64_t n) : remaining_(n) {}
  std::optional<std::uint64_t> remaining_;
};

/// Result of a TRY: success with a value, or failure with out-of-time /
/// out-of-data, plus every display captured inside.
struct TryOutcome {
  enum class Status { Success, OutOfTime, OutOfData };

  Status status = Status::Success;
  SExpr value;
  std::vector<SExpr> captures;
  std::uint64_t steps_used = 0;
  std::size_t bits_read = 0;
  /// Set when out-of-data came from a read-exp whose text did not parse.
  bool malformed_data = false;

  [[nodiscard]] bool success() const noexcept { return status == Status::Success; }

  /// The dialect's triple, e.g. `(failure out-of-time ((elegant 0)))`.
  [[nodiscard]] SExpr to_sexpr() const {
    SExpr payload = status == Status::Success     ? value
                    : status == Status::OutOfTime ? sym("out-of-time")
                                                  : sym("out-of-data");
    return list({sym(success() ? "success" : "failure"), payload, list(captures)});
  }
};

/// One reported item from running a source file.
struct TopLevelResult {
  enum class Kind { Value, Definition, Diagnostic };
  Kind kind = Kind::Value;
  SExpr value;                  // the value, or the defined name
  std::vector<SExpr> displays;  // displays emitted while evaluating the form
  std::string message;          // diagnostics only
  std::size_t line = 0;
};

/// Evaluator for the dialect. Holds the global environment (top-level
/// definitions) and the arity table the reader uses for them.
class Interpreter {
public:
  struct Options {
    /// Nesting depth past which a computation counts as out of time. Every
    /// non-terminating computation in this dialect nests without bound, so
    /// this also bounds evaluations with no step limit.
    std::size_t max_depth = 6000;
  };

  Interpreter() : Interpreter(Options{}) {}
  explicit Interpreter(Options opts) : opts_(opts), arities_(ArityTable::primitives()) {}

  [[nodiscard]] const ArityTable& arities() const noexcept { return arities_; }
  [[nodiscard]] const std::map<std::string, SExpr>& globals() const noexcept { return globals_; }

  /// Binds `name` globally. A signature `(f params...)` binds a function.
  SExpr define(const SExpr& target, const SExpr& body) {
    if (target.is_list() && !target.is_nil() && target[0].is_symbol()) {
      const auto& fname = target[0].name();
      std::vector<SExpr> params(target.items().begin() + 1, target.items().end());
      globals_[fname] = make_lambda(list(std::move(params)), body);
      arities_.set(fname, static_cast<int>(target.length() - 1));
      return target[0];
    }
    if (target.is_symbol()) {
      globals_[target.name()] = evaluate(body);
      return target;
    }
    return {};
  }

  /// Evaluates `e` in the global environment with the given budget and
  /// binary data.
  TryOutcome try_eval(const SExpr& e, Budget budget, const BitString& data) {
    BitStream stream(data);
    return run_activation(e, budget, &stream, 0);
  }

  /// TRY with a time limit expressed as in the dialect: a natural, or the
  /// atom `no-time-limit` to inherit the outer budget.
  TryOutcome try_op(const SExpr& limit, const SExpr& e, const BitString& data, Budget outer = Budget::unlimited()) {
    return try_eval(e, effective_budget(limit, outer), data);
  }

  /// Top-level evaluation: unlimited steps and no binary data. Throws
  /// std::runtime_error if the computation aborts.
  SExpr evaluate(const SExpr& e) {
    auto out = run_activation(e, Budget::unlimited(), nullptr, 0);
    if (!out.success()) throw std::runtime_error(out.status == TryOutcome::Status::OutOfTime ? "out-of-time" : "out-of-data");
    return out.value;
  }

  /// Reads and evaluates every top-level form of `text`, calling `sink` for
  /// each result in order. Definitions extend the global environment and the
  /// reader's arity table for later forms. Throws ParseError.
  void run_source(std::string_view text, const std::function<void(const TopLevelResult&)>& sink) {
    Reader reader(text, &arities_);
    while (!reader.at_end()) {
      std::size_t line = reader.line();
      SExpr form = reader.read();
      TopLevelResult r;
      r.line = line;
      if (form.is_list() && form.length() == 3 && form[0].is_symbol("define")) {
        r.kind = TopLevelResult::Kind::Definition;
        try {
          r.value = define(form[1], form[2]);
        } catch (const std::runtime_error& e) {
          r.kind = TopLevelResult::Kind::Diagnostic;
          r.message = std::string(e.what()) + " while evaluating the defined value";
        }
      } else {
        auto out = run_activation(form, Budget::unlimited(), nullptr, 0);
        r.displays = out.captures;
        if (out.success()) {
          r.value = out.value;
        } else {
          r.kind = TopLevelResult::Kind::Diagnostic;
          r.message = out.status == TryOutcome::Status::OutOfTime
                          ? "out-of-time: evaluation nested deeper than the interpreter allows"
                          : "out-of-data: read-bit/read-exp used with no binary data available";
        }
      }
      sink(r);
    }
  }

  std::vector<TopLevelResult> run_source(std::string_view text) {
    std::vector<TopLevelResult> out;
    run_source(text, [&](const TopLevelResult& r) { out.push_back(r); });
    return out;
  }

  Budget effective_budget(const SExpr& limit, Budget outer) const {
    if (limit.is_natural()) {
      const auto& v = limit.value();
      std::uint64_t n = v > std::numeric_limits<std::uint64_t>::max() ? std::numeric_limits<std::uint64_t>::max()
                                                                        : static_cast<std::uint64_t>(v);
      return outer.capped(n);
    }
    return outer;  // no-time-limit, or anything that is not a number
  }

private:
  struct Frame {
    std::vector<std::pair<std::string, SExpr>> bindings;
    std::shared_ptr<const Frame> parent;
  };
  using Env = std::shared_ptr<const Frame>;

  struct OutOfTimeSignal {};
  struct OutOfDataSignal {
    bool malformed = false;
  };

  // State of one TRY (or top-level) activation.
  struct Activation {
    Budget budget;
    BitStream* stream;
    std::vector<SExpr> captures;
    std::uint64_t steps = 0;
  };

  TryOutcome run_activation(const SExpr& e, Budget budget, BitStream* stream, std::size_t depth) {
    Activation act{budget, stream, {}, 0};
    TryOutcome out;
    try {
      out.value = eval(e, nullptr, act, depth);
      out.status = TryOutcome::Status::Success;
    } catch (const OutOfTimeSignal&) {
      out.status = TryOutcome::Status::OutOfTime;
    } catch (const OutOfDataSignal& sig) {
      out.status = TryOutcome::Status::OutOfData;
      out.malformed_data = sig.malformed;
    }
    out.captures = std::move(act.captures);
    out.steps_used = act.steps;
    out.bits_read = stream ? stream->position() : 0;
    return out;
  }

  static SExpr make_lambda(const SExpr& params, const SExpr& body) { return list({sym("lambda"), params, body}); }

  static bool is_lambda(const SExpr& v) {
    return v.is_list() && v.length() == 3 && v[0].is_symbol("lambda");
  }

  static const SExpr& truth(bool b) {
    static const SExpr t = sym("true"), f = sym("false");
    return b ? t : f;
  }

  static Natural as_number(const SExpr& v) { return v.is_natural() ? v.value() : Natural(0); }

  SExpr lookup(const SExpr& s, const Env& env) const {
    const auto& name = s.name();
    for (const Frame* f = env.get(); f; f = f->parent.get())
      for (auto it = f->bindings.rbegin(); it != f->bindings.rend(); ++it)
        if (it->first == name) return it->second;
    if (auto it = globals_.find(name); it != globals_.end()) return it->second;
    return s;
  }

  static Env bind(const SExpr& params, std::span<const SExpr> args, const Env& env) {
    auto frame = std::make_shared<Frame>();
    frame->parent = env;
    auto ps = params.items();
    for (std::size_t i = 0; i < ps.size(); ++i)
      if (ps[i].is_symbol()) frame->bindings.emplace_back(ps[i].name(), i < args.size() ? args[i] : SExpr{});
    return frame;
  }

  // Argument `i` of a form, or nil when the form is short.
  static const SExpr& arg(const SExpr& e, std::size_t i) {
    static const SExpr none;
    return i < e.length() ? e[i] : none;
  }

  SExpr eval(const SExpr& e, const Env& env, Activation& act, std::size_t depth) {
    if (e.is_symbol()) return lookup(e, env);
    if (e.is_atom()) return e;

    if (!act.budget.take()) throw OutOfTimeSignal{};
    ++act.steps;
    if (++depth > opts_.max_depth) throw OutOfTimeSignal{};

    const SExpr& head = e[0];
    if (head.is_symbol()) {
      if (auto prim = primitive_index(head.name())) return apply_primitive(*prim, e, env, act, depth);
    }

    SExpr fn = head.is_symbol() ? lookup(head, env) : eval(head, env, act, depth);
    std::vector<SExpr> args;
    args.reserve(e.length() - 1);
    for (std::size_t i = 1; i < e.length(); ++i) args.push_back(eval(e[i], env, act, depth));
    if (!is_lambda(fn)) return {};
    return eval(fn[2], bind(fn[1], args, env), act, depth);
  }

  enum class Prim {
    Quote, If, Define, Lambda, Let, Car, Cdr, Cadr, Cons, Append, Atom, Eq, Plus, Minus, Times, Less,
    Size, Bits, Display, Eval, ReadBit, ReadExp, Try, RunUtmOn
  };

  static std::optional<Prim> primitive_index(const std::string& name) {
    static const std::map<std::string, Prim, std::less<>> table{
        {"'", Prim::Quote},      {"if", Prim::If},           {"define", Prim::Define},   {"lambda", Prim::Lambda},
        {"let", Prim::Let},      {"car", Prim::Car},         {"cdr", Prim::Cdr},         {"cadr", Prim::Cadr},
        {"cons", Prim::Cons},    {"append", Prim::Append},   {"atom", Prim::Atom},       {"=", Prim::Eq},
        {"+", Prim::Plus},       {"-", Prim::Minus},         {"*", Prim::Times},         {"<", Prim::Less},
        {"size", Prim::Size},    {"bits", Prim::Bits},       {"display", Prim::Display}, {"eval", Prim::Eval},
        {"read-bit", Prim::ReadBit}, {"read-exp", Prim::ReadExp}, {"try", Prim::Try},    {"run-utm-on", Prim::RunUtmOn}};
    auto it = table.find(name);
    if (it == table.end()) return std::nullopt;
    return it->second;
  }

  static SExpr car(const SExpr& v) { return v.is_atom() ? v : v[0]; }
  static SExpr cdr(const SExpr& v) {
    if (v.is_atom()) return v;
    return list(std::vector<SExpr>(v.items().begin() + 1, v.items().end()));
  }

  SExpr apply_primitive(Prim p, const SExpr& e, const Env& env, Activation& act, std::size_t depth) {
    auto ev = [&](std::size_t i) { return eval(arg(e, i), env, act, depth); };
    switch (p) {
      case Prim::Quote: return arg(e, 1);
      case Prim::Lambda: return e;
      case Prim::If: {
        SExpr cond = ev(1);
        return cond.is_symbol("false") ? ev(3) : ev(2);
      }
      case Prim::Define:
        // Only top-level definitions bind; nested ones evaluate to the name.
        return arg(e, 1).is_list() && !arg(e, 1).is_nil() ? arg(e, 1)[0] : arg(e, 1);
      case Prim::Let: {
        const SExpr& target = arg(e, 1);
        auto frame = std::make_shared<Frame>();
        frame->parent = env;
        if (target.is_list() && !target.is_nil() && target[0].is_symbol()) {
          std::vector<SExpr> params(target.items().begin() + 1, target.items().end());
          frame->bindings.emplace_back(target[0].name(), make_lambda(list(std::move(params)), arg(e, 2)));
        } else if (target.is_symbol()) {
          frame->bindings.emplace_back(target.name(), ev(2));
        }
        return eval(arg(e, 3), frame, act, depth);
      }
      case Prim::Car: return car(ev(1));
      case Prim::Cdr: return cdr(ev(1));
      case Prim::Cadr: return car(cdr(ev(1)));
      case Prim::Cons: {
        SExpr x = ev(1), y = ev(2);
        std::vector<SExpr> items{x};
        if (!y.is_atom()) items.insert(items.end(), y.items().begin(), y.items().end());
        return list(std::move(items));
      }
      case Prim::Append: {
        SExpr x = ev(1), y = ev(2);
        std::vector<SExpr> items(x.items().begin(), x.items().end());
        items.insert(items.end(), y.items().begin(), y.items().end());
        return list(std::move(items));
      }
      case Prim::Atom: return truth(ev(1).is_atom());
      case Prim::Eq: {
        SExpr x = ev(1), y = ev(2);
        return truth(x == y);
      }
      case Prim::Plus: {
        SExpr x = ev(1), y = ev(2);
        return nat(as_number(x) + as_number(y));
      }
      case Prim::Minus: {
        SExpr x = ev(1), y = ev(2);
        Natural a = as_number(x), b = as_number(y);
        return nat(a > b ? Natural(a - b) : Natural(0));
      }
      case Prim::Times: {
        SExpr x = ev(1), y = ev(2);
        return nat(as_number(x) * as_number(y));
      }
      case Prim::Less: {
        SExpr x = ev(1), y = ev(2);
        return truth(as_number(x) < as_number(y));
      }
      case Prim::Size: return nat(Natural(size_chars(ev(1))));
      case Prim::Bits: return bits_as_list(to_bits(ev(1)));
      case Prim::Display: {
        SExpr v = ev(1);
        act.captures.push_back(v);
        return v;
      }
      case Prim::Eval: {
        SExpr v = ev(1);
        return eval(v, nullptr, act, depth);
      }
      case Prim::ReadBit: {
        if (!act.stream) throw OutOfDataSignal{};
        try {
          return nat(act.stream->read_bit());
        } catch (const OutOfData&) {
          throw OutOfDataSignal{};
        }
      }
      case Prim::ReadExp: {
        if (!act.stream) throw OutOfDataSignal{};
        try {
          return read_exp_from_stream(*act.stream);
        } catch (const OutOfData&) {
          throw OutOfDataSignal{};
        } catch (const ParseError&) {
          throw OutOfDataSignal{true};
        }
      }
      case Prim::Try: {
        SExpr limit = ev(1), body = ev(2), data = ev(3);
        BitString bits;
        for (const auto& b : data.items()) bits.push_back(!(b.is_natural() && b.value() == 0));
        BitStream stream(bits);
        auto inner = effective_budget(limit, act.budget);
        auto out = run_activation(body, inner, &stream, depth);
        act.budget.spend(out.steps_used);
        act.steps += out.steps_used;
        // Running out of the enclosing allowance is the enclosing
        // computation's failure, not a result it can inspect.
        bool outer_binds = !act.budget.is_unlimited() &&
                           (!limit.is_natural() || Natural(inner.remaining()) < limit.value());
        if (out.status == TryOutcome::Status::OutOfTime && outer_binds && out.steps_used >= inner.remaining())
          throw OutOfTimeSignal{};
        return out.to_sexpr();
      }
      case Prim::RunUtmOn: {
        // (cadr (try no-time-limit (' (eval (read-exp))) <arg>))
        static const SExpr program = quote(list({sym("eval"), list({sym("read-exp")})}));
        SExpr expansion = list({sym("cadr"), list({sym("try"), sym("no-time-limit"), program, arg(e, 1)})});
        return eval(expansion, env, act, depth);
      }
    }
    return {};
  }

  Options opts_;
  ArityTable arities_;
  std::map<std::string, SExpr> globals_;
};

}  // namespace ait
