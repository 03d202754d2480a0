#include "zeckit/sequence_analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

#include "zeckit/script.hpp"

namespace zeckit {

// Defined in the generated reproduction_script.cpp.
extern const char* const kReproductionScript;

std::string to_string(const BinaryWord& w) {
  std::string out;
  out.reserve(w.size());
  for (auto b : w) out.push_back(b ? '1' : '0');
  return out;
}

const std::string& reproduction_script() {
  static const std::string script(kReproductionScript);
  return script;
}

const Environment& reproduction_environment() {
  static const Environment env = [] {
    Session session;
    session.run(reproduction_script());
    return session.environment();
  }();
  return env;
}

const Dfao& ftm_dfao() {
  // Only the commands up to the combine are needed; the rest is slow.
  static const Dfao dfao = [] {
    Session session;
    for (const auto& command : parse_script(reproduction_script())) {
      session.execute(command);
      if (const Dfao* seq = session.environment().sequence("FTM")) return *seq;
    }
    throw CompileError("reproduction script does not define FTM");
  }();
  return dfao;
}

const RelationAutomaton& maxspec_automaton() {
  const auto* rel = reproduction_environment().relation("maxspec");
  if (rel == nullptr) throw CompileError("reproduction script does not define maxspec");
  return *rel->automaton;
}

BinaryWord ftm_prefix(Natural n) {
  const Dfao& dfao = ftm_dfao();
  BinaryWord out;
  out.reserve(n);
  for (Natural k = 0; k < n; ++k) {
    out.push_back(static_cast<std::uint8_t>(run_dfao(dfao, zeck_encode(k).str())));
  }
  return out;
}

std::optional<std::size_t> longest_special_factor(std::span<const std::uint8_t> w) {
  // For each shift d, a run of m agreeing positions w[i..i+m) = w[i+d..i+d+m)
  // that ends in a disagreement w[i+m] != w[i+d+m] exhibits a special factor
  // of length m.
  std::optional<std::size_t> best;
  const std::size_t n = w.size();
  for (std::size_t d = 1; d < n; ++d) {
    std::size_t run = 0;
    for (std::size_t i = 0; i + d < n; ++i) {
      if (w[i] == w[i + d]) {
        ++run;
      } else {
        if (!best || run > *best) best = run;
        run = 0;
      }
    }
  }
  return best;
}

namespace {

void require_domain(Natural n) {
  if (n < 2) throw DomainError("f(n) is defined for n >= 2, got " + std::to_string(n));
}

}  // namespace

Natural f_brute(Natural n) {
  require_domain(n);
  const BinaryWord w = ftm_prefix(n);
  const auto m = longest_special_factor(w);
  if (!m) throw DomainError("prefix of length " + std::to_string(n) + " has no special factor");
  return *m;
}

Natural f_closed(Natural n) {
  require_domain(n);
  static constexpr std::array<Natural, 8> kSmall = {0, 0, 0, 0, 0, 2, 2, 2};
  if (n < 8) return kSmall[n];
  unsigned i = 4;
  while (!(lucas(i) < n && n <= lucas(i + 1))) ++i;
  return i % 2 == 0 ? fib(i - 1) : fib(i - 1) + 1;
}

Natural f_synchronized(Natural n) {
  require_domain(n);
  const auto m = synchronized_apply(maxspec_automaton(), n);
  if (!m) throw FunctionalityError("maxspec has no value at n = " + std::to_string(n));
  return *m;
}

Natural max_order_complexity(Natural n) { return f_closed(n) + 1; }

std::optional<ProfileMethod> parse_profile_method(std::string_view name) {
  if (name == "brute") return ProfileMethod::Brute;
  if (name == "sync") return ProfileMethod::Synchronized;
  if (name == "closed") return ProfileMethod::ClosedForm;
  return std::nullopt;
}

std::string_view method_name(ProfileMethod m) {
  switch (m) {
    case ProfileMethod::Brute: return "brute";
    case ProfileMethod::Synchronized: return "sync";
    case ProfileMethod::ClosedForm: return "closed";
  }
  return "?";
}

SpecialFactorProfile special_factor_profile(ProfileMethod method, Natural n_min, Natural n_max) {
  require_domain(n_min);
  if (n_max < n_min) throw DomainError("empty profile range");
  SpecialFactorProfile profile{n_min, n_max, method, {}};
  if (method == ProfileMethod::Brute) {
    // One prefix serves every n.
    const BinaryWord w = ftm_prefix(n_max);
    for (Natural n = n_min; n <= n_max; ++n) {
      profile.values[n] = *longest_special_factor(std::span(w).first(n));
    }
    return profile;
  }
  for (Natural n = n_min; n <= n_max; ++n) {
    profile.values[n] = method == ProfileMethod::Synchronized ? f_synchronized(n) : f_closed(n);
  }
  return profile;
}

std::vector<RatioPoint> ratio_series(Natural n_max) {
  require_domain(n_max);
  std::vector<RatioPoint> out;
  out.reserve(n_max - 1);
  for (Natural n = 2; n <= n_max; ++n) {
    out.push_back({n, static_cast<double>(f_closed(n)) / static_cast<double>(n)});
  }
  return out;
}

void write_ratio_csv(std::ostream& out, std::span<const RatioPoint> series) {
  out << "n,ratio\n";
  char buf[64];
  for (const auto& p : series) {
    // %.9f with the "C" locale; snprintf ignores std::locale::global.
    std::snprintf(buf, sizeof buf, "%llu,%.9f\n", static_cast<unsigned long long>(p.n), p.ratio);
    out << buf;
  }
}

LimitEstimates limit_estimates(unsigned i_max) {
  if (i_max < 10 || i_max % 2 != 0) {
    throw DomainError("limit estimates need an even index >= 10");
  }
  LimitEstimates est{1.0, 0.0};
  for (unsigned i : {i_max - 1, i_max}) {
    const Natural low_end = lucas(i) + 1;
    const Natural high_end = lucas(i + 1);
    est.liminf = std::min(est.liminf, static_cast<double>(f_closed(high_end)) /
                                          static_cast<double>(high_end));
    est.limsup = std::max(est.limsup, static_cast<double>(f_closed(low_end)) /
                                          static_cast<double>(low_end));
  }
  return est;
}

double liminf_constant() {
  const double alpha = golden_constants().alpha;
  return 1.0 / (alpha + alpha * alpha * alpha);
}

double limsup_constant() {
  const double alpha = golden_constants().alpha;
  return 1.0 / (1.0 + alpha * alpha);
}

std::string LowerBoundReport::text() const {
  std::string out;
  const double c = liminf_constant();
  char buf[128];
  for (Natural n : violations) {
    std::snprintf(buf, sizeof buf, "violation: n=%llu, bound %.6f not met\n",
                  static_cast<unsigned long long>(n), static_cast<double>(n) * c);
    out += buf;
  }
  for (Natural n : unexpected_holds) {
    out += "unexpected: bound holds at n=" + std::to_string(n) + "\n";
  }
  if (ok()) out += "OK (5.." + std::to_string(n_max) + ")\n";
  return out;
}

LowerBoundReport lower_bound_check(Natural n_max, const std::function<Natural(Natural)>& f) {
  if (n_max < 8) throw DomainError("lower bound sweep needs n_max >= 8");
  LowerBoundReport report;
  report.n_max = n_max;
  const double c = liminf_constant();
  auto holds = [&](Natural n) {
    return static_cast<double>(f(n)) >= static_cast<double>(n) * c;
  };
  for (Natural n = 2; n <= 4; ++n) {
    if (holds(n)) report.unexpected_holds.push_back(n);
  }
  for (Natural n = 5; n <= n_max; ++n) {
    if (!holds(n)) report.violations.push_back(n);
  }
  return report;
}

}  // namespace zeckit
