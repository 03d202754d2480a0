#include <doctest.h>

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "zeckit/automata.hpp"
#include "zeckit/verify.hpp"

using namespace zeckit;

namespace {

// Every bit string of length <= max_len, shortest first.
std::vector<std::string> words_upto(std::size_t max_len) {
  std::vector<std::string> out{""};
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].size() == max_len) continue;
    out.push_back(out[i] + '0');
    out.push_back(out[i] + '1');
  }
  return out;
}

bool odd_ones(const std::string& w) { return std::count(w.begin(), w.end(), '1') % 2 == 1; }
bool ends_in_zero(const std::string& w) { return !w.empty() && w.back() == '0'; }

// Hand-built automata on track x.
Dfa parity() { return Dfa(TrackSet{"x"}, 2, 0, {0, 1, 1, 0}, {false, true}); }
Dfa ends_zero() { return Dfa(TrackSet{"x"}, 2, 0, {1, 0, 1, 0}, {false, true}); }
Dfa even_parity() { return complement(parity()); }

// Equality of two tracks x and y, unminimized with a redundant copy state.
Dfa equality() {
  // Columns: bit0 = x, bit1 = y. States 0 and 2 are equivalent; 1 is dead.
  return Dfa(TrackSet{"x", "y"}, 3, 0, {2, 1, 1, 0, 1, 1, 1, 1, 0, 1, 1, 2}, {true, false, true});
}

void check_language(const Dfa& a, const std::function<bool(const std::string&)>& oracle,
                    std::size_t max_len) {
  for (const auto& w : words_upto(max_len)) {
    INFO("word: ", w);
    REQUIRE(accepts(a, w) == oracle(w));
  }
}

std::size_t count_node_statements(const std::string& dot) {
  std::size_t count = 0;
  std::size_t pos = 0;
  while ((pos = dot.find('\n', pos)) != std::string::npos) {
    ++pos;
    const auto end = dot.find('\n', pos);
    const std::string line = dot.substr(pos, end - pos);
    if (line.find("->") == std::string::npos && line.find("[label=") != std::string::npos) ++count;
  }
  return count;
}

std::size_t count_edges(const std::string& dot) {
  std::size_t count = 0;
  for (std::size_t pos = 0; (pos = dot.find("->", pos)) != std::string::npos; pos += 2) ++count;
  return count;
}

}  // namespace

TEST_CASE("track sets are sorted and deduplicated") {
  const TrackSet t{"n", "m", "n", "i"};
  CHECK(t.names() == std::vector<std::string>{"i", "m", "n"});
  CHECK(t.index_of("m") == 1);
  CHECK(t.index_of("z") == -1);
  CHECK(t.alphabet_size() == 8);
  CHECK(t.without("m") == TrackSet{"i", "n"});
  CHECK(t.with("a").names().front() == "a");
  CHECK(TrackSet::merge(TrackSet{"x"}, TrackSet{"y", "x"}) == TrackSet{"x", "y"});
}

TEST_CASE("malformed automata are rejected") {
  CHECK_THROWS_AS(Dfa(TrackSet{"x"}, 2, 0, {0, 1, 1}, {false, true}), AutomatonError);
  CHECK_THROWS_AS(Dfa(TrackSet{"x"}, 2, 0, {0, 1, 1, 5}, {false, true}), AutomatonError);
  CHECK_THROWS_AS(Dfa(TrackSet{"x"}, 2, 3, {0, 1, 1, 0}, {false, true}), AutomatonError);
  Nfa n(TrackSet{"x"}, 2);
  CHECK_THROWS_AS(n.add_transition(0, 2, 1), AutomatonError);
  CHECK_THROWS_AS(n.add_transition(0, 1, 7), AutomatonError);
}

TEST_CASE("running automata") {
  CHECK(accepts(parity(), "10110") == true);
  CHECK(accepts(parity(), "") == false);
  CHECK_THROWS_AS(accepts(parity(), "102"), AutomatonError);
  const Column bad[] = {2};
  CHECK_THROWS_AS(accepts(parity(), std::span<const Column>(bad)), AutomatonError);
  const std::string digits[] = {"101", "1"};
  CHECK(zip_tracks(digits) == std::vector<Column>{1, 0, 3});
}

TEST_CASE("complement") {
  check_language(complement(parity()), [](const std::string& w) { return !odd_ones(w); }, 12);
  check_language(complement(complement(ends_zero())), ends_in_zero, 10);
  const Dfa none = complement(Dfa::universal(TrackSet{"x"}));
  check_language(none, [](const std::string&) { return false; }, 8);
}

TEST_CASE("product") {
  const Dfa both = product(parity(), ends_zero(), BoolOp::And);
  check_language(both, [](const std::string& w) { return odd_ones(w) && ends_in_zero(w); }, 10);
  CHECK(product(even_parity(), even_parity(), BoolOp::And).state_count() ==
        minimize(even_parity()).state_count());
  const Dfa contradiction = product(ends_zero(), complement(ends_zero()), BoolOp::And);
  check_language(contradiction, [](const std::string&) { return false; }, 10);
  CHECK(contradiction.state_count() == 1);
  check_language(product(parity(), ends_zero(), BoolOp::Implies),
                 [](const std::string& w) { return !odd_ones(w) || ends_in_zero(w); }, 10);
}

TEST_CASE("cylindrify") {
  check_language(cylindrify(parity(), TrackSet{"x"}), odd_ones, 10);
  // Parity on x lifted to {m, x}: the m bit is ignored.
  const Dfa lifted = cylindrify(parity(), TrackSet{"m", "x"});
  for (const auto& m : words_upto(6)) {
    for (const auto& x : words_upto(6)) {
      if (m.size() != x.size()) continue;
      const std::string digits[] = {m, x};
      REQUIRE(accepts(lifted, zip_tracks(digits)) == odd_ones(x));
    }
  }
  CHECK(equivalent_up_to(project(lifted, "m"), parity(), 8));
  CHECK_THROWS_AS(cylindrify(equality(), TrackSet{"x"}), AutomatonError);
}

TEST_CASE("projection") {
  check_language(project(equality(), "y"), [](const std::string&) { return true; }, 8);
  // A track the automaton ignores. The empty word now counts as a padded
  // zero, so it is accepted through the witness "0".
  const Dfa lifted = cylindrify(ends_zero(), TrackSet{"x", "y"});
  check_language(project(lifted, "y"),
                 [](const std::string& w) { return w.empty() || ends_in_zero(w); }, 8);
  check_language(project(cylindrify(parity(), TrackSet{"x", "y"}), "y"), odd_ones, 8);
  CHECK_THROWS_AS(project(parity(), "y"), AutomatonError);

  // Only the reading (x, y) = (01, 10) is accepted. After erasing y, the
  // unpadded x = 1 is accepted too, because the zero-padded 01 witnesses it.
  // Columns: bit 0 is x, bit 1 is y.
  const Dfa pair(TrackSet{"x", "y"}, 4, 0,
                 {3, 3, 1, 3, 3, 2, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3}, {false, false, true, false});
  const Dfa px = project(pair, "y");
  check_language(px, [](const std::string& w) { return w == "1" || w == "01"; }, 8);
  const Dfa sentence = project(project(equality(), "x"), "y");
  CHECK(sentence.tracks().empty());
  CHECK(sentence.accepting(sentence.initial()));
}

TEST_CASE("determinization") {
  // Starts with 0 or starts with 1, from two initial states.
  Nfa n(TrackSet{"x"}, 3);
  n.add_initial(0);
  n.add_initial(1);
  n.add_transition(0, 0, 2);
  n.add_transition(1, 1, 2);
  n.add_transition(2, 0, 2);
  n.add_transition(2, 1, 2);
  n.set_accepting(2);
  const Dfa d = determinize(n);
  check_language(d, [](const std::string& w) { return !w.empty(); }, 10);

  Nfa copy(TrackSet{"x"}, 2);
  copy.add_initial(0);
  copy.set_accepting(1);
  for (State q = 0; q < 2; ++q) {
    for (Column c = 0; c < 2; ++c) copy.add_transition(q, c, parity().next(q, c));
  }
  check_language(determinize(copy), odd_ones, 10);
}

TEST_CASE("minimization") {
  const Dfa m = minimize(equality());
  CHECK(m.state_count() == 2);
  CHECK(m.live_state_count() == 1);
  CHECK(minimize(m).state_count() == m.state_count());
  CHECK(serialize(minimize(m)) == serialize(m));
  CHECK(minimize(parity()).state_count() == 2);
  // Unreachable states are dropped.
  const Dfa padded(TrackSet{"x"}, 3, 0, {0, 1, 1, 0, 2, 2}, {false, true, true});
  CHECK(minimize(padded).state_count() == 2);
  CHECK(serialize(minimize(padded)) == serialize(minimize(parity())));
}

TEST_CASE("renaming tracks") {
  const Dfa eq = minimize(equality());
  const Dfa renamed = rename_tracks(eq, {"b", "a"});
  CHECK(renamed.tracks() == TrackSet{"a", "b"});
  check_language(rename_tracks(eq, {"z", "z"}), [](const std::string&) { return true; }, 8);
  CHECK_THROWS_AS(rename_tracks(eq, {"z"}), AutomatonError);
}

TEST_CASE("DOT export") {
  const std::string one = to_dot(Dfa::universal(TrackSet{"x"}));
  CHECK(count_node_statements(one) == 1);
  const std::string two = to_dot(parity());
  CHECK(count_node_statements(two) == 2);
  CHECK(count_edges(two) == 4);
  CHECK(two.find("doublecircle") != std::string::npos);
  CHECK(two.find("start") != std::string::npos);
  // The dead state of equality is elided unless requested.
  const Dfa eq = minimize(equality());
  CHECK(count_node_statements(to_dot(eq)) == 1);
  CHECK(count_node_statements(to_dot(eq, DotOptions{false, "eq"})) == 2);
  CHECK(to_dot(eq).find("[0 0]") != std::string::npos);
}

TEST_CASE("serialization round trip") {
  const Dfa eq = minimize(equality());
  const std::string text = serialize(eq);
  CHECK(text == "dfa x y\n0 1\n0 [0 0] 0\n0 [1 1] 0\n");
  CHECK(serialize(parse_dfa(text)) == text);
  const std::string p = serialize(minimize(parity()));
  CHECK(serialize(parse_dfa(p)) == p);
  CHECK_THROWS_AS(parse_dfa(""), AutomatonError);
  CHECK_THROWS_AS(parse_dfa("dfa x\n0 1\n0 [0 1] 0\n"), AutomatonError);
}

TEST_CASE("property sweeps with other seeds") {
  std::string detail;
  CHECK_MESSAGE(check_boolean_algebra(6, 101, detail), detail);
  CHECK_MESSAGE(check_projection(6, 102, detail), detail);
  CHECK_MESSAGE(check_minimization(6, 103, detail), detail);
  CHECK_MESSAGE(check_determinization(7, 104, detail), detail);
  CHECK_MESSAGE(check_zero_closure(6, detail), detail);
}
