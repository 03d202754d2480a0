#include "zeckit/automata.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace zeckit {
namespace {

struct VectorHash {
  std::size_t operator()(const std::vector<State>& v) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (State s : v) {
      h ^= s + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

// Labelled transition table shared by Dfa and Dfao minimization.
struct Table {
  std::size_t n = 0;
  std::size_t sigma = 1;
  State init = 0;
  std::vector<State> delta;
  std::vector<int> label;
};

Table restrict_to_reachable(const Table& t) {
  constexpr State kUnseen = static_cast<State>(-1);
  std::vector<State> index(t.n, kUnseen);
  std::vector<State> order{t.init};
  index[t.init] = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const State q = order[k];
    for (std::size_t c = 0; c < t.sigma; ++c) {
      const State r = t.delta[q * t.sigma + c];
      if (index[r] == kUnseen) {
        index[r] = static_cast<State>(order.size());
        order.push_back(r);
      }
    }
  }
  Table out;
  out.n = order.size();
  out.sigma = t.sigma;
  out.init = 0;
  out.delta.resize(out.n * out.sigma);
  out.label.resize(out.n);
  for (std::size_t k = 0; k < out.n; ++k) {
    const State q = order[k];
    out.label[k] = t.label[q];
    for (std::size_t c = 0; c < t.sigma; ++c) {
      out.delta[k * t.sigma + c] = index[t.delta[q * t.sigma + c]];
    }
  }
  return out;
}

// Hopcroft partition refinement. Returns the block of every state.
std::vector<State> hopcroft_blocks(const Table& t) {
  const std::size_t n = t.n;
  const std::size_t sigma = t.sigma;

  // Predecessor lists in CSR form, keyed by (column, target).
  std::vector<std::size_t> offset(n * sigma + 1, 0);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t c = 0; c < sigma; ++c) {
      ++offset[c * n + t.delta[p * sigma + c] + 1];
    }
  }
  std::partial_sum(offset.begin(), offset.end(), offset.begin());
  std::vector<State> preds(n * sigma);
  {
    std::vector<std::size_t> fill(offset.begin(), offset.end() - 1);
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t c = 0; c < sigma; ++c) {
        preds[fill[c * n + t.delta[p * sigma + c]]++] = static_cast<State>(p);
      }
    }
  }

  std::vector<State> elems(n);
  std::vector<std::size_t> loc(n);
  std::vector<State> block_of(n);
  std::vector<std::size_t> bstart, bend, bmarked;

  {
    std::map<int, std::vector<State>> by_label;
    for (std::size_t q = 0; q < n; ++q) {
      by_label[t.label[q]].push_back(static_cast<State>(q));
    }
    std::size_t pos = 0;
    for (auto& [label, members] : by_label) {
      const State b = static_cast<State>(bstart.size());
      bstart.push_back(pos);
      for (State q : members) {
        elems[pos] = q;
        loc[q] = pos;
        block_of[q] = b;
        ++pos;
      }
      bend.push_back(pos);
      bmarked.push_back(0);
    }
  }

  std::vector<char> in_work(n * sigma, 0);
  std::vector<std::pair<State, std::size_t>> work;
  for (State b = 0; b < bstart.size(); ++b) {
    for (std::size_t c = 0; c < sigma; ++c) {
      work.emplace_back(b, c);
      in_work[b * sigma + c] = 1;
    }
  }

  std::vector<State> splitter;
  std::vector<State> touched;
  while (!work.empty()) {
    const auto [b, c] = work.back();
    work.pop_back();
    in_work[b * sigma + c] = 0;

    splitter.assign(elems.begin() + static_cast<std::ptrdiff_t>(bstart[b]),
                    elems.begin() + static_cast<std::ptrdiff_t>(bend[b]));
    for (State q : splitter) {
      const std::size_t key = c * n + q;
      for (std::size_t k = offset[key]; k < offset[key + 1]; ++k) {
        const State p = preds[k];
        const State x = block_of[p];
        const std::size_t boundary = bstart[x] + bmarked[x];
        if (loc[p] < boundary) continue;
        if (bmarked[x] == 0) touched.push_back(x);
        const State other = elems[boundary];
        std::swap(elems[loc[p]], elems[boundary]);
        loc[other] = loc[p];
        loc[p] = boundary;
        ++bmarked[x];
      }
    }

    for (State x : touched) {
      const std::size_t marked = bmarked[x];
      bmarked[x] = 0;
      if (marked == bend[x] - bstart[x]) continue;
      const State y = static_cast<State>(bstart.size());
      bstart.push_back(bstart[x]);
      bend.push_back(bstart[x] + marked);
      bmarked.push_back(0);
      bstart[x] += marked;
      for (std::size_t i = bstart[y]; i < bend[y]; ++i) block_of[elems[i]] = y;
      const std::size_t size_x = bend[x] - bstart[x];
      const std::size_t size_y = bend[y] - bstart[y];
      for (std::size_t d = 0; d < sigma; ++d) {
        if (in_work[x * sigma + d]) {
          work.emplace_back(y, d);
          in_work[y * sigma + d] = 1;
        } else {
          const State smaller = size_y <= size_x ? y : x;
          work.emplace_back(smaller, d);
          in_work[smaller * sigma + d] = 1;
        }
      }
    }
    touched.clear();
  }
  return block_of;
}

Table minimize_table(const Table& input) {
  const Table t = restrict_to_reachable(input);
  const std::vector<State> block_of = hopcroft_blocks(t);

  // Quotient, then breadth-first renumbering from the initial block.
  const std::size_t blocks =
      *std::max_element(block_of.begin(), block_of.end()) + 1;
  std::vector<State> representative(blocks);
  for (std::size_t q = t.n; q-- > 0;) representative[block_of[q]] = static_cast<State>(q);

  constexpr State kUnseen = static_cast<State>(-1);
  std::vector<State> index(blocks, kUnseen);
  std::vector<State> order{block_of[t.init]};
  index[order[0]] = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const State rep = representative[order[k]];
    for (std::size_t c = 0; c < t.sigma; ++c) {
      const State nb = block_of[t.delta[rep * t.sigma + c]];
      if (index[nb] == kUnseen) {
        index[nb] = static_cast<State>(order.size());
        order.push_back(nb);
      }
    }
  }

  Table out;
  out.n = order.size();
  out.sigma = t.sigma;
  out.init = 0;
  out.delta.resize(out.n * out.sigma);
  out.label.resize(out.n);
  for (std::size_t k = 0; k < out.n; ++k) {
    const State rep = representative[order[k]];
    out.label[k] = t.label[rep];
    for (std::size_t c = 0; c < t.sigma; ++c) {
      out.delta[k * t.sigma + c] = index[block_of[t.delta[rep * t.sigma + c]]];
    }
  }
  return out;
}

Table table_of(const Dfa& a) {
  Table t;
  t.n = a.state_count();
  t.sigma = a.alphabet_size();
  t.init = a.initial();
  t.delta = a.transitions();
  t.label.resize(t.n);
  for (std::size_t q = 0; q < t.n; ++q) t.label[q] = a.accepting(static_cast<State>(q));
  return t;
}

Dfa dfa_of(const TrackSet& tracks, Table t) {
  std::vector<bool> acc(t.n);
  for (std::size_t q = 0; q < t.n; ++q) acc[q] = t.label[q] != 0;
  return Dfa(tracks, t.n, t.init, std::move(t.delta), std::move(acc));
}

// Maps each column over `outer` to the column over `inner` (inner ⊆ outer).
std::vector<Column> restriction_map(const TrackSet& outer, const TrackSet& inner) {
  std::vector<int> pos(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) {
    pos[i] = outer.index_of(inner[i]);
    if (pos[i] < 0) {
      throw AutomatonError("track '" + inner[i] + "' missing from target track set");
    }
  }
  std::vector<Column> map(outer.alphabet_size());
  for (Column c = 0; c < map.size(); ++c) {
    Column r = 0;
    for (std::size_t i = 0; i < inner.size(); ++i) {
      if (c >> pos[i] & 1U) r |= Column{1} << i;
    }
    map[c] = r;
  }
  return map;
}

void check_track_count(std::size_t k) {
  if (k > kMaxTracks) {
    throw AutomatonError("too many tracks (" + std::to_string(k) + ")");
  }
}

// Subset construction driven by a successor function on sorted state sets.
template <class Successor, class Accepting>
Dfa subset_construction(const TrackSet& tracks, std::vector<State> start,
                        Successor&& successor, Accepting&& accepting_set) {
  const std::size_t sigma = tracks.alphabet_size();
  std::unordered_map<std::vector<State>, State, VectorHash> ids;
  std::vector<std::vector<State>> sets;
  std::vector<State> delta;
  std::vector<bool> acc;

  std::sort(start.begin(), start.end());
  start.erase(std::unique(start.begin(), start.end()), start.end());
  ids.emplace(start, 0);
  sets.push_back(std::move(start));

  std::vector<State> next;
  for (std::size_t k = 0; k < sets.size(); ++k) {
    acc.push_back(accepting_set(sets[k]));
    for (Column c = 0; c < sigma; ++c) {
      next.clear();
      successor(sets[k], c, next);
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      auto [it, inserted] = ids.emplace(next, static_cast<State>(sets.size()));
      if (inserted) sets.push_back(next);
      delta.push_back(it->second);
    }
  }
  return Dfa(tracks, sets.size(), 0, std::move(delta), std::move(acc));
}

Table table_of(const Dfao& d) {
  Table t;
  t.n = d.state_count();
  t.sigma = d.alphabet_size();
  t.init = d.initial();
  t.delta = d.transitions();
  t.label.resize(t.n);
  for (std::size_t q = 0; q < t.n; ++q) t.label[q] = d.output(static_cast<State>(q));
  return t;
}

}  // namespace

// ---------------------------------------------------------------- TrackSet

TrackSet::TrackSet(std::vector<std::string> names) : names_(std::move(names)) {
  std::sort(names_.begin(), names_.end());
  names_.erase(std::unique(names_.begin(), names_.end()), names_.end());
  check_track_count(names_.size());
}

int TrackSet::index_of(std::string_view name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) return -1;
  return static_cast<int>(it - names_.begin());
}

TrackSet TrackSet::with(std::string name) const {
  auto names = names_;
  names.push_back(std::move(name));
  return TrackSet(std::move(names));
}

TrackSet TrackSet::without(std::string_view name) const {
  std::vector<std::string> names;
  for (const auto& n : names_) {
    if (n != name) names.push_back(n);
  }
  return TrackSet(std::move(names));
}

TrackSet TrackSet::merge(const TrackSet& a, const TrackSet& b) {
  auto names = a.names_;
  names.insert(names.end(), b.names_.begin(), b.names_.end());
  return TrackSet(std::move(names));
}

// --------------------------------------------------------------------- Dfa

Dfa::Dfa(TrackSet tracks, std::size_t states, State initial,
         std::vector<State> delta, std::vector<bool> accepting)
    : tracks_(std::move(tracks)),
      states_(states),
      initial_(initial),
      delta_(std::move(delta)),
      accepting_(std::move(accepting)) {
  if (states_ == 0) throw AutomatonError("automaton needs at least one state");
  if (initial_ >= states_) throw AutomatonError("initial state out of range");
  if (delta_.size() != states_ * alphabet_size()) {
    throw AutomatonError("transition table is not total");
  }
  if (accepting_.size() != states_) throw AutomatonError("accepting set size mismatch");
  for (State r : delta_) {
    if (r >= states_) throw AutomatonError("transition to undeclared state");
  }
}

Dfa Dfa::universal(TrackSet tracks) {
  const std::size_t sigma = tracks.alphabet_size();
  return Dfa(std::move(tracks), 1, 0, std::vector<State>(sigma, 0), {true});
}

Dfa Dfa::empty(TrackSet tracks) {
  const std::size_t sigma = tracks.alphabet_size();
  return Dfa(std::move(tracks), 1, 0, std::vector<State>(sigma, 0), {false});
}

std::optional<State> Dfa::dead_state() const {
  const std::size_t sigma = alphabet_size();
  for (State q = 0; q < states_; ++q) {
    if (accepting_[q]) continue;
    bool sink = true;
    for (std::size_t c = 0; c < sigma && sink; ++c) sink = delta_[q * sigma + c] == q;
    if (sink) return q;
  }
  return std::nullopt;
}

std::size_t Dfa::live_state_count() const {
  return states_ - (dead_state() ? 1 : 0);
}

// -------------------------------------------------------------------- Dfao

Dfao::Dfao(TrackSet tracks, std::size_t states, State initial,
           std::vector<State> delta, std::vector<int> output)
    : tracks_(std::move(tracks)),
      states_(states),
      initial_(initial),
      delta_(std::move(delta)),
      output_(std::move(output)) {
  if (states_ == 0) throw AutomatonError("automaton needs at least one state");
  if (initial_ >= states_) throw AutomatonError("initial state out of range");
  if (delta_.size() != states_ * alphabet_size()) {
    throw AutomatonError("transition table is not total");
  }
  if (output_.size() != states_) throw AutomatonError("output map size mismatch");
  for (State r : delta_) {
    if (r >= states_) throw AutomatonError("transition to undeclared state");
  }
  for (int o : output_) {
    if (o != 0 && o != 1) throw AutomatonError("DFAO outputs must be 0 or 1");
  }
}

// --------------------------------------------------------------------- Nfa

Nfa::Nfa(TrackSet tracks, std::size_t states)
    : tracks_(std::move(tracks)),
      states_(states),
      delta_(states * tracks_.alphabet_size()),
      accepting_(states, false) {}

void Nfa::check_state(State q) const {
  if (q >= states_) throw AutomatonError("NFA state out of range");
}

void Nfa::add_initial(State q) {
  check_state(q);
  initial_.push_back(q);
}

void Nfa::set_accepting(State q, bool value) {
  check_state(q);
  accepting_[q] = value;
}

void Nfa::add_transition(State from, Column c, State to) {
  check_state(from);
  check_state(to);
  if (c >= alphabet_size()) throw AutomatonError("column outside alphabet");
  delta_[from * alphabet_size() + c].push_back(to);
}

bool Nfa::accepts(std::span<const Column> word) const {
  std::vector<bool> current(states_, false);
  for (State q : initial_) current[q] = true;
  for (Column c : word) {
    if (c >= alphabet_size()) throw AutomatonError("column outside alphabet");
    std::vector<bool> next(states_, false);
    for (State q = 0; q < states_; ++q) {
      if (!current[q]) continue;
      for (State r : successors(q, c)) next[r] = true;
    }
    current = std::move(next);
  }
  for (State q = 0; q < states_; ++q) {
    if (current[q] && accepting_[q]) return true;
  }
  return false;
}

// -------------------------------------------------------------- operations

bool apply(BoolOp op, bool a, bool b) {
  switch (op) {
    case BoolOp::And: return a && b;
    case BoolOp::Or: return a || b;
    case BoolOp::Implies: return !a || b;
    case BoolOp::Iff: return a == b;
    case BoolOp::Xor: return a != b;
    case BoolOp::AndNot: return a && !b;
  }
  return false;
}

Dfa minimize(const Dfa& a) { return dfa_of(a.tracks(), minimize_table(table_of(a))); }

Dfao minimize(const Dfao& d) {
  Table t = minimize_table(table_of(d));
  return Dfao(d.tracks(), t.n, t.init, std::move(t.delta), std::move(t.label));
}

Dfa determinize(const Nfa& a) {
  auto successor = [&](const std::vector<State>& set, Column c, std::vector<State>& out) {
    for (State q : set) {
      const auto& succ = a.successors(q, c);
      out.insert(out.end(), succ.begin(), succ.end());
    }
  };
  auto accepting = [&](const std::vector<State>& set) {
    return std::any_of(set.begin(), set.end(), [&](State q) { return a.accepting(q); });
  };
  return minimize(subset_construction(a.tracks(), a.initial(), successor, accepting));
}

Dfa complement(const Dfa& a) {
  auto acc = a.accepting_states();
  acc.flip();
  return Dfa(a.tracks(), a.state_count(), a.initial(), a.transitions(), std::move(acc));
}

Dfa product(const Dfa& a, const Dfa& b, BoolOp op) {
  const TrackSet tracks = TrackSet::merge(a.tracks(), b.tracks());
  const auto map_a = restriction_map(tracks, a.tracks());
  const auto map_b = restriction_map(tracks, b.tracks());
  const std::size_t sigma = tracks.alphabet_size();

  std::unordered_map<std::uint64_t, State> ids;
  std::vector<std::pair<State, State>> pairs{{a.initial(), b.initial()}};
  ids.emplace((std::uint64_t{a.initial()} << 32) | b.initial(), 0);
  std::vector<State> delta;
  std::vector<bool> acc;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [p, q] = pairs[k];
    acc.push_back(apply(op, a.accepting(p), b.accepting(q)));
    for (Column c = 0; c < sigma; ++c) {
      const State np = a.next(p, map_a[c]);
      const State nq = b.next(q, map_b[c]);
      const std::uint64_t key = (std::uint64_t{np} << 32) | nq;
      auto [it, inserted] = ids.emplace(key, static_cast<State>(pairs.size()));
      if (inserted) pairs.emplace_back(np, nq);
      delta.push_back(it->second);
    }
  }
  return minimize(Dfa(tracks, pairs.size(), 0, std::move(delta), std::move(acc)));
}

Dfa cylindrify(const Dfa& a, const TrackSet& tracks) {
  if (tracks == a.tracks()) return a;
  const auto map = restriction_map(tracks, a.tracks());
  const std::size_t sigma = tracks.alphabet_size();
  std::vector<State> delta(a.state_count() * sigma);
  for (State q = 0; q < a.state_count(); ++q) {
    for (Column c = 0; c < sigma; ++c) delta[q * sigma + c] = a.next(q, map[c]);
  }
  return Dfa(tracks, a.state_count(), a.initial(), std::move(delta), a.accepting_states());
}

Dfa rename_tracks(const Dfa& a, const std::vector<std::string>& new_names) {
  if (new_names.size() != a.tracks().size()) {
    throw AutomatonError("rename: expected " + std::to_string(a.tracks().size()) +
                         " names, got " + std::to_string(new_names.size()));
  }
  const TrackSet tracks(new_names);
  std::vector<int> pos(new_names.size());
  for (std::size_t i = 0; i < new_names.size(); ++i) pos[i] = tracks.index_of(new_names[i]);

  const std::size_t sigma = tracks.alphabet_size();
  std::vector<Column> old_column(sigma);
  for (Column c = 0; c < sigma; ++c) {
    Column r = 0;
    for (std::size_t i = 0; i < pos.size(); ++i) {
      if (c >> pos[i] & 1U) r |= Column{1} << i;
    }
    old_column[c] = r;
  }
  std::vector<State> delta(a.state_count() * sigma);
  for (State q = 0; q < a.state_count(); ++q) {
    for (Column c = 0; c < sigma; ++c) delta[q * sigma + c] = a.next(q, old_column[c]);
  }
  return minimize(Dfa(tracks, a.state_count(), a.initial(), std::move(delta),
                      a.accepting_states()));
}

Dfa project(const Dfa& a, std::string_view track) {
  return project(a, std::vector<std::string>{std::string(track)});
}

Dfa project(const Dfa& a, const std::vector<std::string>& erased_tracks) {
  TrackSet remaining = a.tracks();
  for (const auto& t : erased_tracks) {
    if (!remaining.contains(t)) {
      throw AutomatonError("cannot project missing track '" + t + "'");
    }
    remaining = remaining.without(t);
  }
  if (remaining == a.tracks()) return a;

  // Every full column that restricts to a given column on the remaining tracks.
  const auto restrict = restriction_map(a.tracks(), remaining);
  std::vector<std::vector<Column>> expansions(remaining.alphabet_size());
  for (Column c = 0; c < a.alphabet_size(); ++c) expansions[restrict[c]].push_back(c);

  // Leading-zero closure: every state reachable from the initial state
  // through columns that are zero on all remaining tracks.
  std::vector<bool> seen(a.state_count(), false);
  std::vector<State> start{a.initial()};
  seen[a.initial()] = true;
  for (std::size_t k = 0; k < start.size(); ++k) {
    for (Column full : expansions[0]) {
      const State r = a.next(start[k], full);
      if (!seen[r]) {
        seen[r] = true;
        start.push_back(r);
      }
    }
  }

  auto successor = [&](const std::vector<State>& set, Column c, std::vector<State>& out) {
    for (State q : set) {
      for (Column full : expansions[c]) out.push_back(a.next(q, full));
    }
  };
  auto accepting = [&](const std::vector<State>& set) {
    return std::any_of(set.begin(), set.end(), [&](State q) { return a.accepting(q); });
  };
  return minimize(subset_construction(remaining, std::move(start), successor, accepting));
}

bool accepts(const Dfa& a, std::span<const Column> word) {
  State q = a.initial();
  for (Column c : word) {
    if (c >= a.alphabet_size()) throw AutomatonError("column outside alphabet");
    q = a.next(q, c);
  }
  return a.accepting(q);
}

int run_dfao(const Dfao& d, std::span<const Column> word) {
  State q = d.initial();
  for (Column c : word) {
    if (c >= d.alphabet_size()) throw AutomatonError("column outside alphabet");
    q = d.next(q, c);
  }
  return d.output(q);
}

namespace {

std::vector<Column> single_track_word(std::string_view bits, std::size_t tracks) {
  if (tracks != 1) throw AutomatonError("bit-string input requires a one-track automaton");
  std::vector<Column> word;
  word.reserve(bits.size());
  for (char ch : bits) {
    if (ch != '0' && ch != '1') {
      throw AutomatonError("symbol '" + std::string(1, ch) + "' outside alphabet {0,1}");
    }
    word.push_back(ch == '1' ? 1U : 0U);
  }
  return word;
}

}  // namespace

bool accepts(const Dfa& a, std::string_view bits) {
  return accepts(a, single_track_word(bits, a.tracks().size()));
}

int run_dfao(const Dfao& d, std::string_view bits) {
  return run_dfao(d, single_track_word(bits, d.tracks().size()));
}

std::vector<Column> zip_tracks(std::span<const std::string> digits) {
  check_track_count(digits.size());
  std::size_t len = 0;
  for (const auto& d : digits) len = std::max(len, d.size());
  std::vector<Column> word(len, 0);
  for (std::size_t t = 0; t < digits.size(); ++t) {
    const std::string& d = digits[t];
    const std::size_t pad = len - d.size();
    for (std::size_t k = 0; k < d.size(); ++k) {
      if (d[k] == '1') {
        word[pad + k] |= Column{1} << t;
      } else if (d[k] != '0') {
        throw AutomatonError("symbol '" + std::string(1, d[k]) + "' outside alphabet {0,1}");
      }
    }
  }
  return word;
}

bool equivalent_up_to(const Dfa& a, const Dfa& b, std::size_t max_len) {
  const Dfa diff = product(a, b, BoolOp::Xor);
  std::vector<State> frontier{diff.initial()};
  std::vector<bool> seen(diff.state_count(), false);
  seen[diff.initial()] = true;
  for (std::size_t depth = 0; depth <= max_len && !frontier.empty(); ++depth) {
    std::vector<State> next;
    for (State q : frontier) {
      if (diff.accepting(q)) return false;
      for (Column c = 0; c < diff.alphabet_size(); ++c) {
        const State r = diff.next(q, c);
        if (!seen[r]) {
          seen[r] = true;
          next.push_back(r);
        }
      }
    }
    frontier = std::move(next);
  }
  return true;
}

// ----------------------------------------------------------- text formats

std::string column_label(Column c, std::size_t tracks) {
  std::string out = "[";
  for (std::size_t t = 0; t < tracks; ++t) {
    if (t > 0) out += ' ';
    out += (c >> t & 1U) ? '1' : '0';
  }
  out += ']';
  return out;
}

namespace {

std::string edge_label(Column c, std::size_t tracks) {
  if (tracks == 1) return c ? "1" : "0";
  return column_label(c, tracks);
}

template <class Automaton, class NodeLabel>
std::string dot_body(const Automaton& a, std::optional<State> hidden,
                     const DotOptions& options, NodeLabel&& node_attrs) {
  std::ostringstream out;
  out << "digraph " << options.name << " {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=circle];\n";
  for (State q = 0; q < a.state_count(); ++q) {
    if (q == hidden) continue;
    out << "  " << q << " [" << node_attrs(q);
    if (q == a.initial()) out << ", penwidth=2, xlabel=\"start\"";
    out << "];\n";
  }
  const std::size_t k = a.tracks().size();
  for (State q = 0; q < a.state_count(); ++q) {
    if (q == hidden) continue;
    std::map<State, std::vector<Column>> edges;
    for (Column c = 0; c < a.alphabet_size(); ++c) {
      const State r = a.next(q, c);
      if (r == hidden) continue;
      edges[r].push_back(c);
    }
    for (const auto& [r, columns] : edges) {
      out << "  " << q << " -> " << r << " [label=\"";
      for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i > 0) out << ", ";
        out << edge_label(columns[i], k);
      }
      out << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace

std::string to_dot(const Dfa& a, const DotOptions& options) {
  std::optional<State> hidden;
  if (options.elide_dead_state) hidden = a.dead_state();
  return dot_body(a, hidden, options, [&](State q) {
    return std::string("label=\"") + std::to_string(q) + "\"" +
           (a.accepting(q) ? ", shape=doublecircle" : "");
  });
}

std::string to_dot(const Dfao& d, const DotOptions& options) {
  return dot_body(d, std::nullopt, options, [&](State q) {
    return "label=\"" + std::to_string(q) + "/" + std::to_string(d.output(q)) + "\"";
  });
}

namespace {

template <class Automaton, class StateLine>
std::string serialize_body(const Automaton& a, std::string_view kind,
                           State hidden, StateLine&& state_value) {
  // `hidden` is a state to leave out, or state_count() for none. The
  // initial state gets id 0 and the rest keep their relative order, so ids
  // stay contiguous.
  std::vector<State> order{a.initial()};
  for (State q = 0; q < a.state_count(); ++q) {
    if (q != a.initial() && q != hidden) order.push_back(q);
  }
  std::vector<State> id(a.state_count(), 0);
  for (State k = 0; k < order.size(); ++k) id[order[k]] = k;

  std::ostringstream out;
  out << kind;
  for (const auto& name : a.tracks()) out << ' ' << name;
  out << '\n';
  for (State k = 0; k < order.size(); ++k) out << k << ' ' << state_value(order[k]) << '\n';
  for (State k = 0; k < order.size(); ++k) {
    const State q = order[k];
    for (Column c = 0; c < a.alphabet_size(); ++c) {
      const State r = a.next(q, c);
      if (r == hidden) continue;
      out << k << ' ' << column_label(c, a.tracks().size()) << ' ' << id[r] << '\n';
    }
  }
  return out.str();
}

}  // namespace

std::string serialize(const Dfa& a) {
  // An initial dead state is the empty language; keep it visible.
  const std::optional<State> dead = a.dead_state();
  const State hidden = dead && *dead != a.initial() ? *dead : static_cast<State>(a.state_count());
  return serialize_body(a, "dfa", hidden, [&](State q) { return a.accepting(q) ? 1 : 0; });
}

std::string serialize(const Dfao& d) {
  return serialize_body(d, "dfao", static_cast<State>(d.state_count()), [&](State q) { return d.output(q); });
}

Dfa parse_dfa(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw AutomatonError("empty automaton text");
  std::istringstream header(line);
  std::string kind;
  header >> kind;
  if (kind != "dfa") throw AutomatonError("expected 'dfa' header");
  std::vector<std::string> names;
  for (std::string name; header >> name;) names.push_back(name);
  const TrackSet tracks(names);
  if (tracks.names() != names) throw AutomatonError("track names must be sorted and distinct");

  std::map<State, bool> acc;
  std::vector<std::tuple<State, Column, State>> edges;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto open = line.find('[');
    std::istringstream fields(line);
    if (open == std::string::npos) {
      State q;
      int value;
      if (!(fields >> q >> value)) throw AutomatonError("malformed state line: " + line);
      acc[q] = value != 0;
      continue;
    }
    const auto close = line.find(']', open);
    if (close == std::string::npos) throw AutomatonError("malformed transition: " + line);
    State from, to;
    if (!(fields >> from)) throw AutomatonError("malformed transition: " + line);
    std::istringstream bits(line.substr(open + 1, close - open - 1));
    Column c = 0;
    std::size_t t = 0;
    for (int b; bits >> b; ++t) {
      if (b != 0 && b != 1) throw AutomatonError("bit expected in column: " + line);
      if (b) c |= Column{1} << t;
    }
    if (t != tracks.size()) throw AutomatonError("column width mismatch: " + line);
    std::istringstream rest(line.substr(close + 1));
    if (!(rest >> to)) throw AutomatonError("malformed transition: " + line);
    edges.emplace_back(from, c, to);
  }
  if (acc.empty()) throw AutomatonError("automaton has no states");
  const std::size_t listed = acc.rbegin()->first + 1;
  if (listed != acc.size()) throw AutomatonError("state ids must be contiguous");
  const std::size_t n = listed + 1;  // trailing implicit dead state
  const std::size_t sigma = tracks.alphabet_size();
  const State dead = static_cast<State>(listed);
  std::vector<State> delta(n * sigma, dead);
  std::vector<bool> accepting(n, false);
  for (const auto& [q, value] : acc) accepting[q] = value;
  for (const auto& [from, c, to] : edges) {
    if (from >= listed || to >= listed) throw AutomatonError("transition to unknown state");
    delta[from * sigma + c] = to;
  }
  return minimize(Dfa(tracks, n, 0, std::move(delta), std::move(accepting)));
}

}  // namespace zeckit
