#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <functional>
#include <future>
#include <utility>
#include <vector>

#include "ait/bits.hpp"
#include "ait/machine.hpp"

namespace ait {

/// Runs programs of length <= max_len in order of length, then
/// lexicographically, and calls `visit(p, result)` for each one run.
///
/// Extensions of a program are only run when it read past its end: any
/// other outcome is fixed by the bits already read, so no extension can
/// halt. `visit` returns false to stop early.
template <class Visit>
void enumerate_programs(const Machine& m, std::size_t max_len, Budget budget, Visit&& visit,
                        BitString root = {}) {
  std::vector<BitString> level{std::move(root)};
  while (!level.empty()) {
    std::vector<BitString> next;
    for (auto& p : level) {
      auto r = m.run(p, budget);
      if (!visit(static_cast<const BitString&>(p), static_cast<const RunResult&>(r))) return;
      if (r.needs_more_bits() && p.size() < max_len) {
        for (int b = 0; b < 2; ++b) {
          BitString child = p;
          child.push_back(b != 0);
          next.push_back(std::move(child));
        }
      }
    }
    level = std::move(next);
  }
}

/// A program that halted, with its output.
struct HaltingProgram {
  BitString program;
  SExpr output;
  friend bool operator==(const HaltingProgram&, const HaltingProgram&) = default;
};

/// Every program of length <= max_len that halts within `budget` steps, in
/// (length, lexicographic) order. With jobs > 1 disjoint subtrees are run on
/// worker threads; the merged result is identical to the sequential one.
inline std::vector<HaltingProgram> halting_programs(const Machine& m, std::size_t max_len, Budget budget,
                                                    unsigned jobs = 1) {
  auto collect = [&m, max_len, budget](BitString root) {
    std::vector<HaltingProgram> out;
    enumerate_programs(
        m, max_len, budget,
        [&](const BitString& p, const RunResult& r) {
          if (r.is_halted()) out.push_back({p, r.output});
          return true;
        },
        std::move(root));
    return out;
  };

  if (jobs <= 1) {
    auto out = collect({});
    std::stable_sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.program < b.program; });
    return out;
  }

  // Expand the tree sequentially until there are enough open subtrees to
  // share out; programs resolved on the way are kept as they are found.
  std::vector<HaltingProgram> out;
  std::vector<BitString> open{BitString{}};
  std::size_t depth = 0;
  while (open.size() < 64 * static_cast<std::size_t>(jobs) && depth < max_len && !open.empty()) {
    std::vector<BitString> next;
    for (auto& p : open) {
      auto r = m.run(p, budget);
      if (r.is_halted()) out.push_back({p, r.output});
      if (r.needs_more_bits()) {
        BitString c0 = p, c1 = p;
        c0.push_back(false);
        c1.push_back(true);
        next.push_back(std::move(c0));
        next.push_back(std::move(c1));
      }
    }
    open = std::move(next);
    ++depth;
  }

  // Subtrees differ wildly in size, so workers take them one at a time.
  std::vector<std::vector<HaltingProgram>> parts(open.size());
  std::atomic<std::size_t> next_root{0};
  std::vector<std::future<void>> workers;
  for (unsigned w = 0; w < jobs; ++w) {
    workers.push_back(std::async(std::launch::async, [&] {
      for (std::size_t i; (i = next_root.fetch_add(1)) < open.size();) parts[i] = collect(open[i]);
    }));
  }
  for (auto& f : workers) f.get();
  for (auto& part : parts) out.insert(out.end(), part.begin(), part.end());
  std::stable_sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.program < b.program; });
  return out;
}

}  // namespace ait
