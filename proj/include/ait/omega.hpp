#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ait/bits.hpp"
#include "ait/complexity.hpp"
#include "ait/dyadic.hpp"
#include "ait/machine.hpp"
#include "ait/search.hpp"

namespace ait {

/// Lower bound on a machine's halting probability from the programs of
/// length <= max_len that halt within `budget` steps each.
struct OmegaEstimate {
  Dyadic value;
  std::size_t max_len = 0;
  Budget budget = Budget::unlimited();
  std::vector<HaltingProgram> halted;
};

inline OmegaEstimate omega_lower_bound(const Machine& m, std::size_t max_len, Budget budget, unsigned jobs = 1) {
  OmegaEstimate est{{}, max_len, budget, halting_programs(m, max_len, budget, jobs)};
  for (const auto& h : est.halted) est.value += Dyadic::pow2_neg(h.program.size());
  return est;
}

/// The first `n` binary digits of the exact Omega once `estimate` is within
/// 2^-n of it: at that point every program of at most n bits that will ever
/// halt is already among the halted ones. nullopt while the gap is larger.
inline std::optional<std::string> certified_bits(const OmegaEstimate& estimate, const Dyadic& exact, std::size_t n) {
  if (exact - estimate.value >= Dyadic::pow2_neg(n)) return std::nullopt;
  return exact.fraction_digits(n);
}

enum class HaltStatus { Halts, NeverHalts };

inline std::string status_name(HaltStatus s) { return s == HaltStatus::Halts ? "halts" : "never-halts"; }

/// Given that exactly `k` of `programs` halt, runs them all with budgets
/// 1, 2, 3, ... until k have halted; the rest never will. nullopt if fewer
/// than k have halted after `max_budget` (k overstated, or the cap too low).
inline std::optional<std::vector<HaltStatus>> solve_halting_by_count(const std::vector<BitString>& programs,
                                                                     std::size_t k, const Machine& m,
                                                                     std::uint64_t max_budget = 1'000'000) {
  std::vector<HaltStatus> status(programs.size(), HaltStatus::NeverHalts);
  std::size_t halted = 0;
  for (std::uint64_t t = 1; halted < k; ++t) {
    if (t > max_budget) return std::nullopt;
    for (std::size_t i = 0; i < programs.size() && halted < k; ++i) {
      if (status[i] == HaltStatus::Halts) continue;
      if (m.run(programs[i], Budget::steps(t)).is_halted()) {
        status[i] = HaltStatus::Halts;
        ++halted;
      }
    }
  }
  return status;
}

/// Halting status of every program of at most n bits, decided from the
/// exact value of Omega: dovetail stage s = 1, 2, ... (programs up to s bits,
/// s steps each) until the lower bound is within 2^-n of Omega. nullopt if
/// that never happens by `max_stage`, e.g. when `omega_exact` is wrong.
inline std::optional<std::vector<std::pair<BitString, HaltStatus>>> halting_oracle_from_omega(
    const Machine& m, const Dyadic& omega_exact, std::size_t n, std::size_t max_stage = 64) {
  for (std::size_t stage = 0; stage <= max_stage; ++stage) {
    auto est = omega_lower_bound(m, stage, Budget::steps(stage));
    if (!certified_bits(est, omega_exact, n)) continue;
    std::vector<std::pair<BitString, HaltStatus>> out;
    for (auto& p : all_strings_up_to(n)) {
      bool h = false;
      for (const auto& hp : est.halted)
        if (hp.program == p) h = true;
      out.emplace_back(p, h ? HaltStatus::Halts : HaltStatus::NeverHalts);
    }
    return out;
  }
  return std::nullopt;
}

/// Sum of 2^-|p| over the shortest program found for each n in [lo, hi] on a
/// numeral-producing machine. A lower bound on a lower bound of
/// sum_n 2^-H(n): values with no program found contribute nothing.
inline Dyadic omega_prime_lower(const Machine& numeral_machine, std::uint64_t lo, std::uint64_t hi,
                                std::size_t size_cap, Budget budget) {
  Dyadic sum;
  for (std::uint64_t n = lo; n <= hi; ++n)
    if (auto rec = H_upper(nat(n), numeral_machine, size_cap, budget)) sum += Dyadic::pow2_neg(rec->size);
  return sum;
}

}  // namespace ait
