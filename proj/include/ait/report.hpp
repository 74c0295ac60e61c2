#pragma once

#include <string>

#include "ait/bits.hpp"
#include "ait/dyadic.hpp"
#include "ait/interpreter.hpp"
#include "ait/machine.hpp"
#include "ait/sexpr.hpp"

namespace ait {

/// One-line text forms used by the command line tool.
inline std::string format_report(const RunResult& r) { return format_run_result(r); }

/// "success 24", "failure out-of-time", "failure out-of-data".
inline std::string format_report(const TryOutcome& t) {
  switch (t.status) {
    case TryOutcome::Status::Success: return "success " + print_canonical(t.value);
    case TryOutcome::Status::OutOfTime: return "failure out-of-time";
    case TryOutcome::Status::OutOfData: return "failure out-of-data";
  }
  return {};
}

/// "3/4 = 0.11".
inline std::string format_report(const Dyadic& d) { return d.str(); }

inline std::string format_report(const SExpr& e) { return print_canonical(e); }

/// Compact bits, with "(empty)" for the empty string.
inline std::string format_bits(const BitString& b) { return b.size() == 0 ? "(empty)" : b.str(); }

}  // namespace ait
