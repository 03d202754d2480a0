#include <doctest.h>

#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "zeckit/script.hpp"
#include "zeckit/sequence_analysis.hpp"

using namespace zeckit;

TEST_CASE("splitting commands") {
  const auto cmds = parse_script(
      "# comment\n"
      "reg odd1 msd_fib \"0*(10*10*)*10*\":\n"
      "def two \"?msd_fib x<y &\n   y<z\"; eval e \"An n>=0\"\n"
      "combine T odd1\n");
  REQUIRE(cmds.size() == 4);
  CHECK(cmds[0].kind == ScriptCommand::Kind::Reg);
  CHECK(cmds[0].argument == "0*(10*10*)*10*");
  CHECK(cmds[1].kind == ScriptCommand::Kind::Def);
  CHECK(cmds[1].line == 3);
  CHECK(cmds[1].argument == "?msd_fib x<y &    y<z");  // newlines become spaces
  CHECK(cmds[2].kind == ScriptCommand::Kind::Eval);
  CHECK(cmds[2].line == 4);
  CHECK(cmds[3].kind == ScriptCommand::Kind::Combine);
  CHECK(cmds[3].argument == "odd1");
  CHECK(parse_script("").empty());
  CHECK(parse_script("\n# only a comment\n\n").empty());
}

TEST_CASE("script syntax errors name the line") {
  auto line_of = [](const char* text) -> std::size_t {
    try {
      parse_script(text);
    } catch (const ScriptError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("\n\nfoo x \"y\"") == 3);
  CHECK(line_of("def x") == 1);
  CHECK(line_of("\ndef x \"unterminated\n") == 2);
  CHECK(line_of("def \"x\" \"y\"") == 1);
}

TEST_CASE("outcome summaries") {
  Session s;
  const auto out = s.run(
      "reg odd1 msd_fib \"0*(10*10*)*10*\":\n"
      "def zero \"?msd_fib n=0\":\n"
      "def t \"An n>=0\":\n"
      "eval f \"An n>=1\":\n");
  REQUIRE(out.size() == 4);
  CHECK(out[0].summary() == "odd1: 2 states");
  CHECK(out[1].summary() == "zero: 1 state");
  CHECK(out[2].summary() == "t: TRUE");
  CHECK(out[3].summary() == "f: FALSE");
  CHECK(s.environment().contains("t"));
  CHECK_FALSE(s.environment().contains("f"));
}

TEST_CASE("execution errors name the line") {
  Session s;
  try {
    s.run("def a \"x<y\"\n\ndef b \"$missing(x)\"\n");
    FAIL("expected an error");
  } catch (const ScriptError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(s.run("def a \"x<y\""), ScriptError);  // duplicate
  CHECK_THROWS_AS(s.run("eval q \"x<y\""), ScriptError);  // free variables
  CHECK_THROWS_AS(s.run("combine C a"), ScriptError);      // arity 2
  CHECK_THROWS_AS(s.run("def bad \"x <\""), ScriptError);
  CHECK_THROWS_AS(s.run("reg r \"(\""), ScriptError);
}

TEST_CASE("shipped script is the embedded one") {
  std::ifstream in(ZECKIT_REPRODUCTION_SCRIPT_PATH, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == reproduction_script());
}

TEST_CASE("reproduction script") {
  Session s;
  std::map<std::string, std::string> summary;
  for (const auto& o : s.run(reproduction_script())) summary[o.command.name] = o.summary();
  CHECK(summary.at("odd1") == "odd1: 2 states");
  CHECK(summary.at("maxspec") == "maxspec: 17 states");
  CHECK(summary.at("check_i_even") == "check_i_even: TRUE");
  CHECK(summary.at("check_i_odd") == "check_i_odd: TRUE");
  const auto* maxspec = s.environment().relation("maxspec");
  REQUIRE(maxspec != nullptr);
  CHECK(maxspec->automaton->tracks() == TrackSet{"m", "n"});
  CHECK(maxspec->automaton->live_state_count() == 17);
}
