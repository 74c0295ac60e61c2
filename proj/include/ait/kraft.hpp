#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ait/bits.hpp"
#include "ait/dyadic.hpp"
#include "ait/machine.hpp"
#include "ait/sexpr.hpp"

namespace ait {

/// ⟨program size, desired output⟩
struct Requirement {
  std::size_t size = 0;
  SExpr output;
};

/// First-fit allocation of prefix-free codewords from the unit interval.
///
/// Codeword c stands for the aligned interval [0.c, 0.c + 2^-|c|). Free space
/// is a binary tree of aligned intervals; each node records the shallowest
/// depth at which its subtree still has a whole free interval, so a request
/// walks one root-to-leaf path.
class KraftAllocator {
public:
  KraftAllocator() { nodes_.push_back(Node{}); }

  /// The lexicographically least `size`-bit string that is neither a prefix
  /// nor an extension of an assigned codeword, or nullopt if there is none.
  std::optional<BitString> request(const Requirement& r) {
    if (best(0) > r.size) return std::nullopt;
    BitString code;
    std::vector<std::size_t> path{0};
    std::size_t at = 0;
    while (code.size() < r.size) {
      if (nodes_[at].state == State::Free) split(at);
      std::size_t left = nodes_[at].child[0], right = nodes_[at].child[1];
      // `best` of a child is measured from the root, like `size`.
      bool go_left = best(left) <= r.size;
      at = go_left ? left : right;
      code.push_back(!go_left);
      path.push_back(at);
    }
    nodes_[at].state = State::Full;
    nodes_[at].best = kNone;
    for (auto it = path.rbegin() + 1; it != path.rend(); ++it) refresh(*it);
    assigned_.emplace_back(code, r.output);
    used_ += Dyadic::pow2_neg(code.size());
    return code;
  }

  [[nodiscard]] const Dyadic& measure_used() const noexcept { return used_; }
  [[nodiscard]] const std::vector<std::pair<BitString, SExpr>>& assigned() const noexcept { return assigned_; }

private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  enum class State { Free, Full, Split };

  struct Node {
    State state = State::Free;
    std::size_t depth = 0;
    std::size_t best = 0;  // shallowest free interval below, as a depth from the root
    std::size_t child[2] = {0, 0};
  };

  [[nodiscard]] std::size_t best(std::size_t i) const { return nodes_[i].best; }

  void split(std::size_t i) {
    std::size_t d = nodes_[i].depth + 1;
    std::size_t l = nodes_.size();
    nodes_.push_back(Node{State::Free, d, d, {0, 0}});
    nodes_.push_back(Node{State::Free, d, d, {0, 0}});
    nodes_[i].state = State::Split;
    nodes_[i].child[0] = l;
    nodes_[i].child[1] = l + 1;
  }

  void refresh(std::size_t i) {
    auto& n = nodes_[i];
    const auto& a = nodes_[n.child[0]];
    const auto& b = nodes_[n.child[1]];
    if (a.state == State::Full && b.state == State::Full) {
      n.state = State::Full;
      n.best = kNone;
    } else {
      n.best = std::min(a.best, b.best);
    }
  }

  std::vector<Node> nodes_;
  std::vector<std::pair<BitString, SExpr>> assigned_;
  Dyadic used_;
};

/// Machine realizing a finished allocation: each codeword outputs its
/// assigned value. Proper prefixes of codewords need more bits; anything
/// else is rejected.
inline Machine machine_from_codewords(std::vector<std::pair<BitString, SExpr>> table) {
  std::map<BitString, SExpr> codes(table.begin(), table.end());
  auto run = [codes = std::move(codes)](const BitString& p, Budget) {
    // Any codeword that is a prefix of p decides the run.
    for (std::size_t n = 0; n <= p.size(); ++n) {
      auto it = codes.find(p.prefix(n));
      if (it == codes.end()) continue;
      if (n == p.size()) return RunResult::halted(it->second, n);
      return RunResult::invalid(RunResult::Reason::PartialConsumption);
    }
    for (const auto& [code, out] : codes)
      if (p.is_prefix_of(code)) return RunResult::invalid(RunResult::Reason::OutOfData);
    return RunResult::invalid(RunResult::Reason::ParseError);
  };
  return Machine{"kraft", run, {}};
}

/// Result of building a computer from a requirement stream.
struct BuildResult {
  std::optional<Machine> machine;
  std::vector<std::pair<BitString, SExpr>> assigned;
  Dyadic measure;
  std::optional<std::size_t> failed_at;  // index of the first exhausted request
};

/// Processes requirements in order; a request that cannot be met ends the
/// stream.
inline BuildResult build_computer(const std::vector<Requirement>& reqs) {
  KraftAllocator alloc;
  BuildResult out;
  for (std::size_t i = 0; i < reqs.size(); ++i) {
    if (!alloc.request(reqs[i])) {
      out.failed_at = i;
      break;
    }
  }
  out.assigned = alloc.assigned();
  out.measure = alloc.measure_used();
  if (!out.failed_at) out.machine = machine_from_codewords(out.assigned);
  return out;
}

}  // namespace ait
