#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace zeckit {

using State = std::uint32_t;

/// One column of a multi-track word: bit t holds the digit of track t.
using Column = std::uint32_t;

inline constexpr std::size_t kMaxTracks = 16;

class AutomatonError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ordered, duplicate-free track names. Order is lexicographic.
class TrackSet {
 public:
  TrackSet() = default;
  /// Sorts and deduplicates.
  TrackSet(std::vector<std::string> names);
  TrackSet(std::initializer_list<std::string> names)
      : TrackSet(std::vector<std::string>(names)) {}

  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  const std::string& operator[](std::size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  auto begin() const { return names_.begin(); }
  auto end() const { return names_.end(); }

  /// Position of `name`, or -1.
  int index_of(std::string_view name) const;
  bool contains(std::string_view name) const { return index_of(name) >= 0; }

  /// Number of columns over these tracks.
  std::size_t alphabet_size() const { return std::size_t{1} << names_.size(); }

  TrackSet with(std::string name) const;
  TrackSet without(std::string_view name) const;
  static TrackSet merge(const TrackSet& a, const TrackSet& b);

  friend bool operator==(const TrackSet&, const TrackSet&) = default;

 private:
  std::vector<std::string> names_;
};

/// Complete deterministic automaton over the columns of a TrackSet.
class Dfa {
 public:
  /// `delta` is row-major: delta[q * alphabet + column].
  Dfa(TrackSet tracks, std::size_t states, State initial,
      std::vector<State> delta, std::vector<bool> accepting);

  /// Accepts every word (or nothing) over `tracks`.
  static Dfa universal(TrackSet tracks);
  static Dfa empty(TrackSet tracks);

  const TrackSet& tracks() const { return tracks_; }
  std::size_t state_count() const { return states_; }
  std::size_t alphabet_size() const { return tracks_.alphabet_size(); }
  State initial() const { return initial_; }
  State next(State q, Column c) const { return delta_[q * alphabet_size() + c]; }
  bool accepting(State q) const { return accepting_[q]; }
  const std::vector<State>& transitions() const { return delta_; }
  const std::vector<bool>& accepting_states() const { return accepting_; }

  /// A non-accepting state whose every edge loops back, if one exists.
  std::optional<State> dead_state() const;

  /// States excluding the dead sink: the count reported to users.
  std::size_t live_state_count() const;

 private:
  TrackSet tracks_;
  std::size_t states_;
  State initial_;
  std::vector<State> delta_;
  std::vector<bool> accepting_;
};

/// Deterministic automaton with a 0/1 output on every state.
class Dfao {
 public:
  Dfao(TrackSet tracks, std::size_t states, State initial,
       std::vector<State> delta, std::vector<int> output);

  const TrackSet& tracks() const { return tracks_; }
  std::size_t state_count() const { return states_; }
  std::size_t alphabet_size() const { return tracks_.alphabet_size(); }
  State initial() const { return initial_; }
  State next(State q, Column c) const { return delta_[q * alphabet_size() + c]; }
  int output(State q) const { return output_[q]; }
  const std::vector<State>& transitions() const { return delta_; }

 private:
  TrackSet tracks_;
  std::size_t states_;
  State initial_;
  std::vector<State> delta_;
  std::vector<int> output_;
};

/// Nondeterministic automaton without epsilon moves.
class Nfa {
 public:
  Nfa(TrackSet tracks, std::size_t states);

  const TrackSet& tracks() const { return tracks_; }
  std::size_t state_count() const { return states_; }
  std::size_t alphabet_size() const { return tracks_.alphabet_size(); }

  void add_initial(State q);
  void set_accepting(State q, bool value = true);
  void add_transition(State from, Column c, State to);

  const std::vector<State>& initial() const { return initial_; }
  bool accepting(State q) const { return accepting_[q]; }
  const std::vector<State>& successors(State q, Column c) const {
    return delta_[q * alphabet_size() + c];
  }

  /// Direct simulation, independent of determinize().
  bool accepts(std::span<const Column> word) const;

 private:
  void check_state(State q) const;

  TrackSet tracks_;
  std::size_t states_;
  std::vector<State> initial_;
  std::vector<std::vector<State>> delta_;
  std::vector<bool> accepting_;
};

enum class BoolOp { And, Or, Implies, Iff, Xor, AndNot };

bool apply(BoolOp op, bool a, bool b);

/// Minimal automaton, states renumbered breadth-first from the initial
/// state with columns visited in increasing order.
Dfa minimize(const Dfa& a);
Dfao minimize(const Dfao& a);

Dfa determinize(const Nfa& a);
Dfa complement(const Dfa& a);

/// Boolean combination over the union of both track sets.
Dfa product(const Dfa& a, const Dfa& b, BoolOp op);

/// Lifts `a` to a superset of its tracks; added tracks are unconstrained.
Dfa cylindrify(const Dfa& a, const TrackSet& tracks);

/// Renames tracks. Several old tracks may map to one new name, in which
/// case only columns agreeing on those tracks are kept.
Dfa rename_tracks(const Dfa& a, const std::vector<std::string>& new_names);

/// Existential projection of `track`, closed under leading zero columns.
Dfa project(const Dfa& a, std::string_view track);

/// Simultaneous projection of several tracks.
Dfa project(const Dfa& a, const std::vector<std::string>& tracks);

bool accepts(const Dfa& a, std::span<const Column> word);
int run_dfao(const Dfao& d, std::span<const Column> word);

/// Single-track convenience: `bits` is a string over {'0','1'}.
bool accepts(const Dfa& a, std::string_view bits);
int run_dfao(const Dfao& d, std::string_view bits);

/// Zips per-track digit strings (in track order) into columns, padding
/// shorter strings with leading zeros.
std::vector<Column> zip_tracks(std::span<const std::string> digits);

/// True iff both accept the same words of every length up to `max_len`.
bool equivalent_up_to(const Dfa& a, const Dfa& b, std::size_t max_len);

struct DotOptions {
  bool elide_dead_state = true;
  std::string name = "automaton";
};

std::string to_dot(const Dfa& a, const DotOptions& options = {});
std::string to_dot(const Dfao& d, const DotOptions& options = {});

/// Line-oriented text form; the dead state of a Dfa is left implicit.
std::string serialize(const Dfa& a);
std::string serialize(const Dfao& d);
Dfa parse_dfa(std::string_view text);

/// Renders a column as "[b0 b1 ...]" in track order.
std::string column_label(Column c, std::size_t tracks);

}  // namespace zeckit
