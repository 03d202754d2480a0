#pragma once

#include <functional>
#include <string>
#include <vector>

#include "zeckit/numeration.hpp"

namespace zeckit {

struct CheckResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0;
  /// Wall-clock budget; exceeding it fails the check.
  double budget_seconds = 0;
};

struct VerifyOptions {
  /// Closed form under test; replaced by a perturbed one for fault injection.
  std::function<Natural(Natural)> closed_form;
  /// Restrict to these criterion ids; empty means all.
  std::vector<int> only;
};

/// The acceptance criteria, one result per criterion, in id order.
std::vector<CheckResult> run_acceptance(const VerifyOptions& options = {});

/// "[PASS] 3 title (0.41 s) detail" per line.
std::string format_result(const CheckResult& r);

/// Closed form with an off-by-one error injected at n = 1000.
Natural perturbed_closed_form(Natural n);

// Individual property sweeps, shared with the unit tests.

/// Product, complement and cylindrification against per-word evaluation of
/// the operands, for random automata over up to three tracks.
bool check_boolean_algebra(std::size_t max_len, unsigned seed, std::string& detail);

/// Projection against NFA simulation with zero-padded witnesses.
bool check_projection(std::size_t max_len, unsigned seed, std::string& detail);

/// Minimization: language preserved, idempotent, canonical numbering.
bool check_minimization(std::size_t max_len, unsigned seed, std::string& detail);

/// Projections of relation automata: prepending an all-zero column never
/// changes acceptance, for every word up to `max_len`.
bool check_zero_closure(std::size_t max_len, std::string& detail);

/// Determinization of random NFAs against direct simulation.
bool check_determinization(std::size_t max_len, unsigned seed, std::string& detail);

}  // namespace zeckit
