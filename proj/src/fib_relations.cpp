#include "zeckit/fib_relations.hpp"

#include <cstdlib>
#include <map>
#include <utility>

#include "zeckit/regex.hpp"

namespace zeckit {
namespace {

// Local construction tracks are named so that lexicographic order matches
// argument order; the result is then renamed onto the caller's tracks.
const std::string kA = "a";
const std::string kB = "b";
const std::string kC = "c";

// Comparator over (a, b): 0 = equal so far, 1 = a < b, 2 = a > b.
Dfa comparator(RelOp op) {
  const TrackSet tracks{kA, kB};
  std::vector<State> delta(3 * 4);
  for (Column c = 0; c < 4; ++c) {
    const bool a_bit = c & 1U;
    const bool b_bit = c & 2U;
    delta[0 * 4 + c] = a_bit == b_bit ? 0 : (a_bit ? 2 : 1);
    delta[1 * 4 + c] = 1;
    delta[2 * 4 + c] = 2;
  }
  const bool eq = op == RelOp::Eq || op == RelOp::Le || op == RelOp::Ge;
  const bool lt = op == RelOp::Lt || op == RelOp::Le || op == RelOp::Ne;
  const bool gt = op == RelOp::Gt || op == RelOp::Ge || op == RelOp::Ne;
  return Dfa(tracks, 3, 0, std::move(delta), {eq, lt, gt});
}

// Carry state (c1, c0): the digits read so far, minus the summands, equal
// c1 * F_{k+1} + c0 * F_k where F_k weighs the next unread column.
struct Carry {
  int c1;
  int c0;
  auto operator<=>(const Carry&) const = default;
};

// Whether some completion of the word can bring the pending difference back
// to zero. With k-1 columns left (weights F_k..F_2), the remaining
// contribution z - x - y ranges over [-2(F_{k+1}-1), F_{k+1}-1].
bool carry_viable(Carry s) {
  for (unsigned k = 1; k <= 60; ++k) {
    const auto f1 = static_cast<std::int64_t>(fib(k + 1));
    const auto f0 = static_cast<std::int64_t>(fib(k));
    const std::int64_t pending = s.c1 * f1 + s.c0 * f0;
    const std::int64_t room = f1 - 1;
    if (-room <= pending && pending <= 2 * room) return true;
  }
  return false;
}

Dfa adder_automaton() {
  const TrackSet tracks{kA, kB, kC};  // a + b = c
  std::map<Carry, State> ids;
  std::vector<Carry> states;
  std::vector<State> delta;
  constexpr State kDead = 0;
  states.push_back({0, 0});  // placeholder slot for the dead state
  ids[{0, 0}] = 1;
  states.push_back({0, 0});

  for (std::size_t k = 1; k < states.size(); ++k) {
    const Carry s = states[k];
    for (Column col = 0; col < 8; ++col) {
      const int e = static_cast<int>(col >> 2 & 1U) - static_cast<int>(col & 1U) -
                    static_cast<int>(col >> 1 & 1U);
      const Carry t{s.c1 + s.c0 + e, s.c1};
      if (!carry_viable(t)) {
        delta.push_back(kDead);
        continue;
      }
      if (std::abs(t.c1) > kAdderCarryBound || std::abs(t.c0) > kAdderCarryBound) {
        throw AutomatonError("adder construction exceeded carry bound");
      }
      auto [it, inserted] = ids.emplace(t, static_cast<State>(states.size()));
      if (inserted) states.push_back(t);
      delta.push_back(it->second);
    }
  }
  std::vector<State> full(8, kDead);
  full.insert(full.end(), delta.begin(), delta.end());
  std::vector<bool> acc(states.size(), false);
  for (std::size_t k = 1; k < states.size(); ++k) {
    acc[k] = states[k].c1 + states[k].c0 == 0;  // remaining weights F_2 = F_1 = 1
  }
  return Dfa(tracks, states.size(), 1, std::move(full), std::move(acc));
}

const Dfa& cached_adder() {
  static const Dfa adder = restrict_canonical(adder_automaton());
  return adder;
}

}  // namespace

RelationAutomaton canonical_rel(const std::string& track) {
  return canonical_all(TrackSet{track});
}

RelationAutomaton canonical_all(const TrackSet& tracks) {
  // State: mask of tracks whose last digit was 1, plus a dead state.
  const std::size_t k = tracks.size();
  const std::size_t masks = std::size_t{1} << k;
  const std::size_t sigma = tracks.alphabet_size();
  const State dead = static_cast<State>(masks);
  std::vector<State> delta((masks + 1) * sigma);
  std::vector<bool> acc(masks + 1, true);
  acc[dead] = false;
  for (std::size_t m = 0; m < masks; ++m) {
    for (Column c = 0; c < sigma; ++c) {
      delta[m * sigma + c] = (c & m) ? dead : static_cast<State>(c);
    }
  }
  for (Column c = 0; c < sigma; ++c) delta[dead * sigma + c] = dead;
  return minimize(Dfa(tracks, masks + 1, 0, std::move(delta), std::move(acc)));
}

RelationAutomaton restrict_canonical(const Dfa& a) {
  return product(a, canonical_all(a.tracks()), BoolOp::And);
}

RelationAutomaton compare_rel(const std::string& x, RelOp op, const std::string& y) {
  static const std::map<RelOp, Dfa> base = [] {
    std::map<RelOp, Dfa> m;
    for (RelOp op : {RelOp::Eq, RelOp::Ne, RelOp::Lt, RelOp::Le, RelOp::Gt, RelOp::Ge}) {
      m.emplace(op, restrict_canonical(comparator(op)));
    }
    return m;
  }();
  return rename_tracks(base.at(op), {x, y});
}

RelationAutomaton eq_rel(const std::string& x, const std::string& y) {
  return compare_rel(x, RelOp::Eq, y);
}

RelationAutomaton lt_rel(const std::string& x, const std::string& y) {
  return compare_rel(x, RelOp::Lt, y);
}

RelationAutomaton add_rel(const std::string& x, const std::string& y, const std::string& z) {
  return rename_tracks(cached_adder(), {x, y, z});
}

RelationAutomaton const_rel(const std::string& x, Natural c) {
  const std::string digits = zeck_encode(c).str();
  // Chain: leading zeros loop on state 0 until the first digit of c.
  const std::size_t len = c == 0 ? 0 : digits.size();
  const State dead = static_cast<State>(len + 1);
  std::vector<State> delta((len + 2) * 2, dead);
  std::vector<bool> acc(len + 2, false);
  delta[0 * 2 + 0] = 0;
  if (len > 0) delta[0 * 2 + 1] = 1;  // digits[0] is always '1'
  for (std::size_t k = 1; k < len; ++k) {
    delta[k * 2 + (digits[k] == '1' ? 1 : 0)] = static_cast<State>(k + 1);
  }
  acc[len] = true;
  return minimize(Dfa(TrackSet{x}, len + 2, 0, std::move(delta), std::move(acc)));
}

RelationAutomaton const_mul_rel(int k, const std::string& x, const std::string& y) {
  switch (k) {
    case 1:
      return eq_rel(x, y);
    case 2:
      return add_rel(x, x, y);
    case 3: {
      const std::string s = "_tmul";
      return exists(both(add_rel(x, x, s), add_rel(s, x, y)), {s});
    }
    case 4: {
      const std::string s = "_tmul";
      return exists(both(add_rel(x, x, s), add_rel(s, s, y)), {s});
    }
    default:
      throw AutomatonError("constant multiplier " + std::to_string(k) +
                           " outside supported range 1..4");
  }
}

RelationAutomaton isevenfib_rel(const std::string& x) {
  static const Dfa base = restrict_canonical(regex_to_dfa(regex_parse("0*1(00)*"), kA));
  return rename_tracks(base, {x});
}

RelationAutomaton isoddfib_rel(const std::string& x) {
  static const Dfa base = restrict_canonical(regex_to_dfa(regex_parse("0*10(00)*"), kA));
  return rename_tracks(base, {x});
}

namespace {

// Consecutive Fibonacci pair with the given parities: x < y <= 2x.
Dfa consecutive_pair(const Dfa& x_shape, const Dfa& y_shape) {
  Dfa r = both(x_shape, y_shape);
  r = both(r, lt_rel(kA, kB));
  const std::string twice = "_tmul";
  r = both(r, exists(both(add_rel(kA, kA, twice), compare_rel(twice, RelOp::Ge, kB)), {twice}));
  return r;
}

}  // namespace

RelationAutomaton fiboddeven_rel(const std::string& x, const std::string& y) {
  static const Dfa base = consecutive_pair(isoddfib_rel(kA), isevenfib_rel(kB));
  return rename_tracks(base, {x, y});
}

RelationAutomaton fibevenodd_rel(const std::string& x, const std::string& y) {
  static const Dfa base = consecutive_pair(isevenfib_rel(kA), isoddfib_rel(kB));
  return rename_tracks(base, {x, y});
}

RelationAutomaton exists(RelationAutomaton a, const std::vector<std::string>& tracks) {
  for (auto it = tracks.rbegin(); it != tracks.rend(); ++it) {
    if (a.tracks().contains(*it)) a = project(a, *it);
  }
  return a;
}

RelationAutomaton both(const RelationAutomaton& a, const RelationAutomaton& b) {
  return product(a, b, BoolOp::And);
}

bool accepts_values(const Dfa& a, std::span<const Natural> values, std::size_t extra_zeros) {
  if (values.size() != a.tracks().size()) {
    throw AutomatonError("expected " + std::to_string(a.tracks().size()) + " values");
  }
  std::vector<std::string> digits;
  std::size_t len = 0;
  for (Natural v : values) {
    digits.push_back(zeck_encode(v).str());
    len = std::max(len, digits.back().size());
  }
  for (auto& d : digits) d.insert(0, len + extra_zeros - d.size(), '0');
  return accepts(a, zip_tracks(digits));
}

bool accepts_values(const Dfa& a, std::initializer_list<Natural> values,
                    std::size_t extra_zeros) {
  return accepts_values(a, std::span<const Natural>(values.begin(), values.size()),
                        extra_zeros);
}

}  // namespace zeckit
