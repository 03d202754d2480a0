#include <doctest.h>

#include "zeckit/sequence_analysis.hpp"
#include "zeckit/verify.hpp"

using namespace zeckit;

TEST_CASE("selected criteria pass and are formatted") {
  VerifyOptions options;
  options.only = {1, 6, 8};
  const auto results = run_acceptance(options);
  REQUIRE(results.size() == 3);
  for (const auto& r : results) {
    CHECK_MESSAGE(r.passed, r.detail);
    CHECK(format_result(r).rfind("[PASS] ", 0) == 0);
    CHECK(format_result(r).find(" s") != std::string::npos);
  }
  CHECK(results[1].id == 6);
}

TEST_CASE("a perturbed closed form is caught") {
  CHECK(perturbed_closed_form(999) == f_closed(999));
  CHECK(perturbed_closed_form(1000) == f_closed(1000) + 1);
  VerifyOptions options;
  options.only = {2, 4};
  options.closed_form = perturbed_closed_form;
  const auto results = run_acceptance(options);
  REQUIRE(results.size() == 2);
  CHECK_MESSAGE(results[0].passed, results[0].detail);
  CHECK_FALSE(results[1].passed);
  CHECK(results[1].detail.find("n=1000") != std::string::npos);
  CHECK(format_result(results[1]).rfind("[FAIL] 4.", 0) == 0);
}
