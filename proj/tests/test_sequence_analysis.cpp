#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "zeckit/sequence_analysis.hpp"

using namespace zeckit;

namespace {

// Naive search over factor lengths with sets of extended factors.
std::optional<std::size_t> naive_special(const std::string& w) {
  for (std::size_t m = w.size(); m-- > 0;) {
    std::set<std::string> with0, with1;
    for (std::size_t i = 0; i + m < w.size(); ++i) {
      (w[i + m] == '0' ? with0 : with1).insert(w.substr(i, m));
    }
    for (const auto& x : with0) {
      if (with1.count(x)) return m;
    }
  }
  return std::nullopt;
}

std::string ftm_string(Natural n) {
  std::string s;
  for (Natural k = 0; k < n; ++k) s += ftm_direct(k) ? '1' : '0';
  return s;
}

BinaryWord bits(const std::string& s) {
  BinaryWord w;
  for (char c : s) w.push_back(c == '1');
  return w;
}

}  // namespace

TEST_CASE("ftm prefixes") {
  CHECK(to_string(ftm_prefix(14)) == "01110100100011");
  CHECK(ftm_prefix(0).empty());
  CHECK(to_string(ftm_prefix(1)) == "0");
  CHECK(to_string(ftm_prefix(3000)) == ftm_string(3000));
}

TEST_CASE("longest special factor") {
  CHECK(longest_special_factor(ftm_prefix(5)) == 2);
  CHECK(longest_special_factor(ftm_prefix(12)) == 4);
  CHECK_FALSE(longest_special_factor(bits("0000")).has_value());
  CHECK_FALSE(longest_special_factor(bits("1")).has_value());
  CHECK_FALSE(longest_special_factor(bits("")).has_value());
  CHECK(longest_special_factor(bits("01")) == 0);
  CHECK(longest_special_factor(bits("0010")) == 1);
}

TEST_CASE("shift scan agrees with the naive search") {
  // All words up to length 10, plus ftm prefixes.
  for (unsigned len = 0; len <= 10; ++len) {
    for (unsigned mask = 0; mask < (1u << len); ++mask) {
      std::string w;
      for (unsigned k = 0; k < len; ++k) w += (mask >> k & 1) ? '1' : '0';
      REQUIRE(longest_special_factor(bits(w)) == naive_special(w));
    }
  }
  const std::string prefix = ftm_string(300);
  for (Natural n = 2; n <= 300; n += 7) {
    REQUIRE(longest_special_factor(bits(prefix.substr(0, n))) == naive_special(prefix.substr(0, n)));
  }
}

TEST_CASE("f values") {
  CHECK(f_brute(2) == 0);
  CHECK(f_brute(11) == 2);
  CHECK(f_brute(12) == 4);
  CHECK(f_brute(19) == 5);
  CHECK(f_closed(12) == 4);
  CHECK(f_closed(19) == 5);
  CHECK(f_closed(100) == 22);
  CHECK(f_brute(100) == 22);
  CHECK(naive_special(ftm_string(100)) == 22);
  CHECK(f_synchronized(5) == 2);
  CHECK(f_synchronized(13) == 4);
  CHECK(f_synchronized(18) == 4);
  CHECK(max_order_complexity(12) == 5);
  CHECK(max_order_complexity(2) == 1);
  CHECK(max_order_complexity(19) == 6);
  for (auto f : {f_brute, f_closed, f_synchronized, max_order_complexity}) {
    CHECK_THROWS_AS(f(0), DomainError);
    CHECK_THROWS_AS(f(1), DomainError);
  }
}

TEST_CASE("maxspec is functional") {
  for (Natural n = 2; n <= 3000; ++n) {
    REQUIRE_NOTHROW(f_synchronized(n));
  }
  // The automaton accepts exactly the pairs of the golden table.
  const auto pairs = enumerate_accepted(maxspec_automaton(), 19);
  std::vector<std::vector<Natural>> expected;
  for (Natural n = 2; n <= 19; ++n) expected.push_back({f_brute(n), n});
  std::sort(expected.begin(), expected.end());
  CHECK(pairs == expected);
}

TEST_CASE("closed form shape") {
  for (Natural n = 3; n <= 5000; ++n) REQUIRE(f_closed(n) >= f_closed(n - 1));
  for (unsigned i = 4; i <= 20; ++i) {
    const Natural value = f_closed(lucas(i) + 1);
    for (Natural n = lucas(i) + 1; n <= lucas(i + 1); n += 1 + (lucas(i + 1) - lucas(i)) / 50) {
      REQUIRE(f_closed(n) == value);
    }
    REQUIRE(f_closed(lucas(i + 1)) == value);
  }
  for (unsigned i = 4; i <= 18; ++i) {
    const Natural lo = lucas(i) + 1, hi = lucas(i + 1);
    double min_ratio = 2, max_ratio = -1;
    Natural argmin = 0, argmax = 0;
    for (Natural n = lo; n <= hi; ++n) {
      const double r = static_cast<double>(f_closed(n)) / n;
      if (r < min_ratio) min_ratio = r, argmin = n;
      if (r > max_ratio) max_ratio = r, argmax = n;
    }
    CHECK(argmin == hi);
    CHECK(argmax == lo);
  }
  for (Natural n = 2; n <= 5000; ++n) REQUIRE(f_closed(n) <= n - 2);
}

TEST_CASE("profiles") {
  const auto brute = special_factor_profile(ProfileMethod::Brute, 2, 300);
  const auto closed = special_factor_profile(ProfileMethod::ClosedForm, 2, 300);
  const auto sync = special_factor_profile(ProfileMethod::Synchronized, 2, 300);
  CHECK(brute.values == closed.values);
  CHECK(sync.values == closed.values);
  CHECK(closed.values.size() == 299);
  CHECK_THROWS_AS(special_factor_profile(ProfileMethod::Brute, 1, 10), DomainError);
  CHECK_THROWS_AS(special_factor_profile(ProfileMethod::Brute, 10, 5), DomainError);
  CHECK(parse_profile_method("brute") == ProfileMethod::Brute);
  CHECK(parse_profile_method("sync") == ProfileMethod::Synchronized);
  CHECK(parse_profile_method("closed") == ProfileMethod::ClosedForm);
  CHECK_FALSE(parse_profile_method("fast").has_value());
  CHECK(method_name(ProfileMethod::Synchronized) == "sync");
}

TEST_CASE("ratio series and CSV") {
  const auto series = ratio_series(1000);
  CHECK(series.size() == 999);
  CHECK(series.front().n == 2);
  CHECK(series.front().ratio == 0.0);
  CHECK(series[10].n == 12);
  CHECK(std::abs(series[10].ratio - 1.0 / 3) < 1e-15);
  for (std::size_t i = 1; i < series.size(); ++i) REQUIRE(series[i].n > series[i - 1].n);
  std::ostringstream out;
  write_ratio_csv(out, ratio_series(12));
  const std::string csv = out.str();
  CHECK(csv.rfind("n,ratio\n2,0.000000000\n", 0) == 0);
  CHECK(csv.find("\n12,0.333333333\n") != std::string::npos);
}

TEST_CASE("limit estimates") {
  const auto e20 = limit_estimates(20);
  CHECK(std::abs(e20.liminf - 0.17082039) < 1e-4);
  CHECK(std::abs(e20.limsup - 0.276393202) < 1e-3);
  CHECK(e20.limsup - e20.liminf > 0.1);
  const auto e10 = limit_estimates(10);
  const auto e14 = limit_estimates(14);
  CHECK(std::abs(e14.liminf - liminf_constant()) <= std::abs(e10.liminf - liminf_constant()));
  CHECK(std::abs(e20.liminf - liminf_constant()) <= std::abs(e14.liminf - liminf_constant()));
  CHECK(std::abs(e14.limsup - limsup_constant()) <= std::abs(e10.limsup - limsup_constant()));
  CHECK(std::abs(e20.limsup - limsup_constant()) <= std::abs(e14.limsup - limsup_constant()));
  CHECK_THROWS_AS(limit_estimates(8), DomainError);
  CHECK_THROWS_AS(limit_estimates(11), DomainError);
  CHECK(std::abs(liminf_constant() - 0.17082039) < 1e-8);
  CHECK(std::abs(limsup_constant() - 0.276393202) < 1e-9);
}

TEST_CASE("lower bound sweep") {
  const double c = liminf_constant();
  CHECK(2 >= 5 * c);
  CHECK(0 < 4 * c);
  const auto report = lower_bound_check(5000);
  CHECK(report.ok());
  CHECK(report.text() == "OK (5..5000)\n");
  const auto broken = lower_bound_check(100, [](Natural n) { return n == 50 ? Natural{0} : f_closed(n); });
  CHECK_FALSE(broken.ok());
  CHECK(broken.violations == std::vector<Natural>{50});
  CHECK(broken.text().find("n=50") != std::string::npos);
  const auto too_strong = lower_bound_check(10, [](Natural n) { return n; });
  CHECK(too_strong.unexpected_holds == std::vector<Natural>{2, 3, 4});
  CHECK_THROWS_AS(lower_bound_check(7), DomainError);
}
