#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "zeckit/automata.hpp"
#include "zeckit/logic.hpp"
#include "zeckit/numeration.hpp"

namespace zeckit {

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

using BinaryWord = std::vector<std::uint8_t>;

std::string to_string(const BinaryWord& w);

/// The shipped reproduction script (scripts/paper.walnut).
const std::string& reproduction_script();

/// Environment after running the reproduction script; built once.
const Environment& reproduction_environment();

/// The Fibonacci-Thue-Morse DFAO built by `combine FTM zecksum`.
const Dfao& ftm_dfao();

/// Two-track automaton over (m, n) accepting m = f(n).
const RelationAutomaton& maxspec_automaton();

/// ftm[0..n-1] via the DFAO.
BinaryWord ftm_prefix(Natural n);

/// Largest m such that some length-m factor x has both x0 and x1 inside w.
/// None when w has fewer than two distinct letters.
std::optional<std::size_t> longest_special_factor(std::span<const std::uint8_t> w);

/// f(n) for the length-n prefix of ftm; all require n >= 2.
Natural f_brute(Natural n);
Natural f_closed(Natural n);
Natural f_synchronized(Natural n);

/// Maximum order complexity M(n) = f(n) + 1.
Natural max_order_complexity(Natural n);

enum class ProfileMethod { Brute, Synchronized, ClosedForm };

std::optional<ProfileMethod> parse_profile_method(std::string_view name);
std::string_view method_name(ProfileMethod m);

struct SpecialFactorProfile {
  Natural n_min = 2;
  Natural n_max = 2;
  ProfileMethod method = ProfileMethod::ClosedForm;
  std::map<Natural, Natural> values;
};

SpecialFactorProfile special_factor_profile(ProfileMethod method, Natural n_min, Natural n_max);

struct RatioPoint {
  Natural n;
  double ratio;
};

/// (n, f(n)/n) for 2 <= n <= n_max, from the closed form.
std::vector<RatioPoint> ratio_series(Natural n_max);

/// Header "n,ratio", nine decimals, locale independent.
void write_ratio_csv(std::ostream& out, std::span<const RatioPoint> series);

struct LimitEstimates {
  double liminf;
  double limsup;
};

/// Extremal ratios on the Lucas intervals for i in {i_max-1, i_max}.
LimitEstimates limit_estimates(unsigned i_max);

/// 1/(alpha + alpha^3) and 1/(1 + alpha^2).
double liminf_constant();
double limsup_constant();

struct LowerBoundReport {
  Natural n_max = 0;
  /// n >= 5 with f(n) < n/(alpha+alpha^3).
  std::vector<Natural> violations;
  /// n in {2,3,4} where the bound unexpectedly holds.
  std::vector<Natural> unexpected_holds;

  bool ok() const { return violations.empty() && unexpected_holds.empty(); }
  std::string text() const;
};

/// Checks f(n) >= n/(alpha+alpha^3) on 5..n_max and its failure on 2..4.
LowerBoundReport lower_bound_check(Natural n_max,
                                   const std::function<Natural(Natural)>& f = f_closed);

}  // namespace zeckit
