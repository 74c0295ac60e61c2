#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ait/ait.hpp"

namespace ait::cli {

enum Exit : int { kOk = 0, kDomainFailure = 1, kUsage = 2 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string read_input(const std::string& path, std::istream& in) {
  if (path == "-") return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open " + path);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

/// Implicit parentheses first, as programs are usually written, then full
/// parenthesization.
inline SExpr parse_expression(const std::string& text) {
  try {
    return parse_implicit(text);
  } catch (const ParseError&) {
    return parse_full(text);
  }
}

inline BitString parse_bits(const std::string& text) {
  try {
    return BitString::parse(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

inline Budget budget_of(std::optional<std::uint64_t> steps) {
  return steps ? Budget::steps(*steps) : Budget::unlimited();
}

inline Machine machine_named(const std::string& name) {
  auto m = machine_by_name(name);
  if (!m) throw UsageError("unknown machine '" + name + "'");
  return *m;
}

// ---------------------------------------------------------------------------
// Verbs

inline int verb_run(const std::string& path, std::istream& in, std::ostream& out, std::ostream& err) {
  auto text = read_input(path, in);
  Interpreter interp;
  bool failed = false;
  interp.run_source(text, [&](const TopLevelResult& r) {
    for (const auto& d : r.displays) out << "display " << print_canonical(d) << '\n';
    switch (r.kind) {
      case TopLevelResult::Kind::Definition: out << "define " << print_canonical(r.value) << '\n'; break;
      case TopLevelResult::Kind::Value: out << print_canonical(r.value) << '\n'; break;
      case TopLevelResult::Kind::Diagnostic:
        err << path << ':' << r.line << ": " << r.message << '\n';
        failed = true;
        break;
    }
  });
  return failed ? kDomainFailure : kOk;
}

inline int verb_repl(std::istream& in, std::ostream& out, std::ostream& err) {
  Interpreter interp;
  std::string buffer, line;
  int depth = 0;
  while (std::getline(in, line)) {
    buffer += line;
    buffer += '\n';
    for (char c : line) depth += c == '(' ? 1 : c == ')' ? -1 : 0;
    if (depth > 0) continue;
    try {
      interp.run_source(buffer, [&](const TopLevelResult& r) {
        for (const auto& d : r.displays) out << "display " << print_canonical(d) << '\n';
        if (r.kind == TopLevelResult::Kind::Diagnostic)
          err << r.message << '\n';
        else
          out << (r.kind == TopLevelResult::Kind::Definition ? "define " : "") << print_canonical(r.value) << '\n';
      });
    } catch (const ParseError& e) {
      err << "parse error: " << e.what() << '\n';
    }
    buffer.clear();
    depth = 0;
  }
  return kOk;
}

inline int verb_u(const std::string& path, std::optional<std::uint64_t> budget, std::istream& in, std::ostream& out) {
  auto p = parse_bits(read_input(path, in));
  auto r = run_U(p, budget_of(budget));
  out << format_report(r) << '\n';
  return r.is_halted() ? kOk : kDomainFailure;
}

inline int verb_bits(const std::string& expr, const std::string& data, bool as_list, std::ostream& out) {
  auto bits = to_bits(parse_expression(expr)) + parse_bits(data);
  out << (as_list ? print_canonical(bits_as_list(bits)) : bits.str()) << '\n';
  return kOk;
}

struct ElegantHeaderOptions {
  std::size_t size_cap = 24;
  std::uint64_t budget = 1000;
};

inline int verb_encode(const std::string& scheme, const std::string& text, const ElegantHeaderOptions& eh,
                       std::ostream& out, std::ostream& err) {
  auto x = parse_bits(text);
  if (scheme == "elegant") {
    try {
      out << encode_elegant_header(x, toy_numeral_machine(), eh.size_cap, Budget::steps(eh.budget)).str() << '\n';
      return kOk;
    } catch (const SearchExhausted& e) {
      err << "exhausted: " << e.what() << '\n';
      return kDomainFailure;
    }
  }
  auto codec = codec_by_name(scheme);
  if (!codec) throw UsageError("unknown scheme '" + scheme + "'");
  out << codec->encode(x).str() << '\n';
  return kOk;
}

inline int verb_decode(const std::string& scheme, const std::string& text, const ElegantHeaderOptions& eh,
                       std::ostream& out, std::ostream& err) {
  auto bits = parse_bits(text);
  BitStream s(bits);
  BitString x;
  try {
    if (scheme == "elegant") {
      x = decode_elegant_header(s, toy_numeral_machine(), eh.size_cap, Budget::steps(eh.budget));
    } else {
      auto codec = codec_by_name(scheme);
      if (!codec) throw UsageError("unknown scheme '" + scheme + "'");
      x = codec->decode(s);
    }
  } catch (const OutOfData&) {
    err << "out-of-data: the input ends inside a codeword\n";
    return kDomainFailure;
  } catch (const SearchExhausted& e) {
    err << "exhausted: " << e.what() << '\n';
    return kDomainFailure;
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const UsageError*>(&e)) throw;
    err << "invalid: " << e.what() << '\n';
    return kDomainFailure;
  }
  out << "value: " << format_bits(x) << '\n'
      << "consumed: " << s.position() << '\n'
      << "rest: " << format_bits(s.rest()) << '\n';
  return kOk;
}

/// Parses lines "size expression"; blank lines are skipped.
inline std::vector<Requirement> parse_requirements(const std::string& text) {
  std::vector<Requirement> out;
  std::istringstream lines(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    long long size = -1;
    if (!(fields >> size) || size < 0) throw UsageError("line " + std::to_string(lineno) + ": expected a size");
    std::string rest;
    std::getline(fields, rest);
    try {
      out.push_back({static_cast<std::size_t>(size), parse_expression(rest)});
    } catch (const ParseError& e) {
      throw UsageError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

/// A random requirement stream whose sizes satisfy the Kraft inequality.
inline std::vector<Requirement> random_requirements(std::size_t count, std::uint64_t seed,
                                                    std::size_t max_size = 16) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> size_dist(1, max_size);
  std::vector<Requirement> out;
  Dyadic used;
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t s = size_dist(rng);
    auto next = used + Dyadic::pow2_neg(s);
    if (Dyadic::one() < next) break;
    used = next;
    out.push_back({s, nat(i)});
  }
  return out;
}

inline int verb_kraft(const std::string& path, std::optional<std::size_t> generate, std::uint64_t seed,
                      std::istream& in, std::ostream& out, std::ostream& err) {
  if (generate) {
    for (const auto& r : random_requirements(*generate, seed)) out << r.size << ' ' << print_canonical(r.output) << '\n';
    return kOk;
  }
  auto reqs = parse_requirements(read_input(path, in));
  KraftAllocator alloc;
  for (std::size_t i = 0; i < reqs.size(); ++i) {
    auto code = alloc.request(reqs[i]);
    if (!code) {
      out << "measure: " << format_report(alloc.measure_used()) << '\n';
      err << "exhausted: request " << i + 1 << " (size " << reqs[i].size << ") does not fit\n";
      return kDomainFailure;
    }
    out << format_bits(*code) << " → " << print_canonical(reqs[i].output) << '\n';
  }
  out << "measure: " << format_report(alloc.measure_used()) << '\n';
  return kOk;
}

struct OmegaOptions {
  std::string machine = "toy";
  std::size_t max_len = 8;
  std::uint64_t budget = 1000;
  std::optional<std::size_t> bits;
  unsigned jobs = 1;
};

inline int verb_omega(const OmegaOptions& o, std::ostream& out) {
  auto m = machine_named(o.machine);
  auto est = omega_lower_bound(m, o.max_len, Budget::steps(o.budget), o.jobs);
  out << est.value.binary() << " (dyadic " << est.value.fraction() << ")\n";
  out << "halting-programs: " << est.halted.size() << '\n';
  if (!m.known_omega) {
    out << "lower bound only\n";
    return kOk;
  }
  if (o.bits) {
    if (auto digits = certified_bits(est, *m.known_omega, *o.bits)) {
      out << "certified: 0." << *digits << '\n';
    } else {
      out << "certified: inconclusive (lower bound not yet within 2^-" << *o.bits << ")\n";
      return kDomainFailure;
    }
  }
  return kOk;
}

inline Vocabulary vocabulary_from(const std::vector<std::string>& symbols) {
  return symbols.empty() ? Vocabulary::standard() : Vocabulary::standard(symbols);
}

inline int verb_elegant(std::size_t char_cap, std::uint64_t budget, const std::vector<std::string>& symbols,
                        std::ostream& out) {
  auto entries = elegant_search(char_cap, Budget::steps(budget), vocabulary_from(symbols));
  for (const auto& e : entries)
    out << size_chars(e.expression) << ' ' << print_canonical(e.expression) << " → " << print_canonical(e.value)
        << '\n';
  out << "count: " << entries.size() << '\n';
  out << "note: elegant at budget " << budget << " among expressions of at most " << char_cap << " characters\n";
  return kOk;
}

inline int verb_complexity(const std::string& target_text, const std::string& machine, std::size_t size_cap,
                           std::uint64_t budget, std::ostream& out, std::ostream& err) {
  auto target = parse_expression(target_text);
  std::optional<ComplexityRecord> rec;
  if (machine == "lisp") {
    rec = lisp_complexity_upper(target, size_cap, Budget::steps(budget));
  } else {
    rec = H_upper(target, machine_named(machine), size_cap, Budget::steps(budget));
  }
  out << "target: " << print_canonical(target) << '\n' << "machine: " << machine << '\n';
  if (!rec) {
    out << "result: not-found\n";
    err << "no program of at most " << size_cap << (machine == "lisp" ? " characters" : " bits") << " within "
        << budget << " steps\n";
    return kDomainFailure;
  }
  out << "witness: " << rec->witness_text() << '\n'
      << "size: " << rec->size << (machine == "lisp" ? " characters" : " bits") << '\n'
      << "exact: " << (rec->exact ? "true" : "false (upper bound)") << '\n';
  if (machine != "lisp")
    out << "P-lower: " << format_report(P_lower(target, machine_named(machine), size_cap, Budget::steps(budget)))
        << '\n';
  return kOk;
}

struct PairOptions {
  std::string x, y;  // programs given as expressions for U, or targets on toy machines
  std::string x_data, y_data;
  std::string machine = "lispu";
  std::size_t size_cap = 16;
  std::uint64_t budget = 1000;
};

inline int verb_pair(const PairOptions& o, std::ostream& out) {
  if (o.machine == "toy") {
    auto x = parse_expression(o.x), y = parse_expression(o.y);
    auto rep = info_measures(x, y, toy_machine(), toy_pair_machine(), o.size_cap, Budget::steps(o.budget));
    if (!rep) {
      out << "result: not-found\n";
      return kDomainFailure;
    }
    out << "H(x): " << rep->hx.size << '\n'
        << "H(y): " << rep->hy.size << '\n'
        << "H(x,y): " << rep->hxy.size << '\n'
        << "H(x:y): " << rep->mutual << '\n'
        << "status: " << rep->label() << '\n';
    return kOk;
  }
  if (o.machine != "lispu") throw UsageError("pair supports --machine lispu or toy");
  auto xstar = to_bits(parse_expression(o.x)) + parse_bits(o.x_data);
  auto ystar = to_bits(parse_expression(o.y)) + parse_bits(o.y_data);
  auto rx = run_U(xstar), ry = run_U(ystar);
  auto prefix_bits = to_bits(pair_prefix()).size();
  out << "prefix: " << print_canonical(pair_prefix()) << '\n' << "prefix-bits: " << prefix_bits << '\n';
  out << "x*: " << xstar.size() << " bits, " << format_report(rx) << '\n';
  out << "y*: " << ystar.size() << " bits, " << format_report(ry) << '\n';
  if (!rx.is_halted() || !ry.is_halted()) {
    out << "result: a component program does not halt on U\n";
    return kDomainFailure;
  }
  auto prog = pair_program(xstar, ystar);
  auto r = run_U(prog);
  out << "pair-program: " << prog.size() << " bits, " << format_report(r) << '\n';
  if (!r.is_halted()) return kDomainFailure;
  out << "bound: H(x,y) <= " << xstar.size() << " + " << ystar.size() << " + " << prefix_bits << " = " << prog.size()
      << '\n';
  return kOk;
}

struct ParadoxOptions {
  std::string theory = "unsound";
  std::uint64_t max_budget = 1 << 16;
  std::uint64_t wall_ms = 60000;
};

inline int verb_paradox(const ParadoxOptions& o, std::istream& in, std::ostream& out, std::ostream& err) {
  TheoryHandle th;
  if (o.theory == "sound")
    th = sound_numeral_theory();
  else if (o.theory == "unsound")
    th = unsound_nesting_theory();
  else
    th = TheoryHandle::of(parse_expression(read_input(o.theory, in)));
  auto res = berry_searcher(th, doubling_schedule(o.max_budget), std::chrono::milliseconds(o.wall_ms));
  for (const auto& w : res.warnings) err << "warning: " << w << '\n';
  out << "theory: " << print_canonical(th.source) << '\n'
      << "N: " << res.theory_size << '\n'
      << "c-searcher: " << res.searcher_constant << '\n'
      << "reference-constant: " << kReferenceSearcherConstant << '\n'
      << "threshold: " << res.theory_size + res.searcher_constant << '\n';
  if (!res.found) {
    out << "result: not-found\n";
    return kDomainFailure;
  }
  out << "found: " << print_canonical(res.claimed) << '\n'
      << "size(found): " << res.claimed_size << '\n'
      << "value: " << print_canonical(res.value) << '\n'
      << "budget: " << res.budget << '\n'
      << "contradiction: N + c-searcher = " << res.theory_size << " + " << res.searcher_constant << " = "
      << res.theory_size + res.searcher_constant << " < " << res.claimed_size
      << " = size(found), yet the searcher computed the value of an expression claimed elegant\n";
  return kOk;
}

// ---------------------------------------------------------------------------

/// Parses `args` (without the program name) and runs the verb.
inline int dispatch(std::vector<std::string> args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"A small LISP, its universal machine U, and algorithmic information tools", "ait"};
  app.require_subcommand(1);

  std::string path = "-";
  std::optional<std::uint64_t> u_budget;
  auto* run = app.add_subcommand("run", "evaluate a source file");
  run->add_option("file", path, "source file, - for standard input");

  app.add_subcommand("repl", "read-evaluate-print loop on standard input");

  auto* u = app.add_subcommand("u", "run U on a bit string file");
  u->add_option("file", path, "bit string file, - for standard input");
  u->add_option("--budget", u_budget, "step limit (default unlimited)");

  std::string expr, data;
  bool as_list = false;
  auto* bits = app.add_subcommand("bits", "encode an expression (plus binary data) as a U program");
  bits->add_option("expression", expr)->required();
  bits->add_option("--data", data, "bits appended after the expression");
  bits->add_flag("--list", as_list, "print as a list of 0s and 1s");

  std::string scheme = "doubling", input;
  ElegantHeaderOptions eh;
  auto* encode = app.add_subcommand("encode", "self-delimiting encoding of a bit string");
  auto* decode = app.add_subcommand("decode", "decode one codeword from the front of a bit string");
  for (auto* sc : {encode, decode}) {
    sc->add_option("--scheme", scheme)->check(CLI::IsMember({"doubling", "header", "two-header", "elegant"}));
    sc->add_option("bits", input, "compact bit string");
    sc->add_option("--size-cap", eh.size_cap, "elegant header search cap in bits");
    sc->add_option("--budget", eh.budget, "elegant header step budget");
  }

  std::optional<std::size_t> generate;
  std::uint64_t seed = 1;
  auto* kraft = app.add_subcommand("kraft", "allocate codewords for \"size expression\" lines");
  kraft->add_option("file", path, "requirement file, - for standard input");
  kraft->add_option("--generate", generate, "print a random feasible requirement stream of this length");
  kraft->add_option("--seed", seed, "seed for --generate");

  OmegaOptions om;
  auto* omega = app.add_subcommand("omega", "lower bound on a halting probability");
  omega->add_option("--machine", om.machine)->check(CLI::IsMember({"toy", "toy-numeral", "toy-pair", "lispu"}));
  omega->add_option("--max-len", om.max_len);
  omega->add_option("--budget", om.budget);
  omega->add_option("--bits", om.bits, "certified leading bits (machines with known omega only)");
  omega->add_option("--jobs", om.jobs)->check(CLI::Range(1u, 256u));

  std::size_t char_cap = 5;
  std::uint64_t budget = 1000;
  std::vector<std::string> symbols;
  auto* elegant = app.add_subcommand("elegant", "budget-elegant expressions up to a size");
  elegant->add_option("--char-cap", char_cap);
  elegant->add_option("--budget", budget);
  elegant->add_option("--symbols", symbols, "extra symbols for the enumeration")->delimiter(',');

  std::string target, cmachine = "toy";
  std::size_t size_cap = 16;
  auto* complexity = app.add_subcommand("complexity", "smallest program found for a target");
  complexity->add_option("target", target)->required();
  complexity->add_option("--machine", cmachine)
      ->check(CLI::IsMember({"toy", "toy-numeral", "toy-pair", "lispu", "lisp"}));
  complexity->add_option("--size-cap", size_cap, "bits, or characters for --machine lisp");
  complexity->add_option("--budget", budget);

  PairOptions po;
  auto* pair = app.add_subcommand("pair", "combine programs for x and y");
  pair->add_option("--x", po.x)->required();
  pair->add_option("--y", po.y)->required();
  pair->add_option("--x-data", po.x_data);
  pair->add_option("--y-data", po.y_data);
  pair->add_option("--machine", po.machine)->check(CLI::IsMember({"lispu", "toy"}));
  pair->add_option("--size-cap", po.size_cap);
  pair->add_option("--budget", po.budget);

  ParadoxOptions pd;
  auto* paradox = app.add_subcommand("paradox", "run the Berry searcher on a theory");
  paradox->add_option("--theory", pd.theory, "sound, unsound, or a source file");
  paradox->add_option("--max-budget", pd.max_budget);
  paradox->add_option("--wall-ms", pd.wall_ms);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n' << app.help();
    return kUsage;
  }

  try {
    if (*run) return verb_run(path, in, out, err);
    if (app.got_subcommand("repl")) return verb_repl(in, out, err);
    if (*u) return verb_u(path, u_budget, in, out);
    if (*bits) return verb_bits(expr, data, as_list, out);
    if (*encode) return verb_encode(scheme, input, eh, out, err);
    if (*decode) return verb_decode(scheme, input, eh, out, err);
    if (*kraft) return verb_kraft(path, generate, seed, in, out, err);
    if (*omega) return verb_omega(om, out);
    if (*elegant) return verb_elegant(char_cap, budget, symbols, out);
    if (*complexity) return verb_complexity(target, cmachine, size_cap, budget, out, err);
    if (*pair) return verb_pair(po, out);
    if (*paradox) return verb_paradox(pd, in, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace ait::cli
