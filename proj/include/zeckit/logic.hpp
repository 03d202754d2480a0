#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zeckit/automata.hpp"
#include "zeckit/fib_relations.hpp"
#include "zeckit/formula.hpp"

namespace zeckit {

class CompileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Named sequences (DFAOs) and relations, extended functionally.
class Environment {
 public:
  struct Relation {
    /// Parameter order used by $name(args); a subset ordering of the tracks.
    std::vector<std::string> params;
    std::shared_ptr<const Dfa> automaton;
  };

  bool contains(const std::string& name) const;
  const Relation* relation(const std::string& name) const;
  const Dfao* sequence(const std::string& name) const;

  /// Names in definition order.
  const std::vector<std::string>& names() const { return order_; }

  Environment with_relation(const std::string& name, Dfa automaton,
                            std::vector<std::string> params = {}) const;
  Environment with_sequence(const std::string& name, Dfao sequence) const;

 private:
  void check_unused(const std::string& name) const;

  std::map<std::string, Relation> relations_;
  std::map<std::string, std::shared_ptr<const Dfao>> sequences_;
  std::vector<std::string> order_;
};

/// Automaton over the free variables of `f` accepting exactly the canonical
/// encodings of satisfying assignments.
RelationAutomaton compile(const Formula& f, const Environment& env);

/// Truth value of a sentence.
bool decide(const Formula& sentence, const Environment& env);

/// `reg name regex`: the regex language on a single track.
Environment define_regex(const Environment& env, const std::string& name,
                         const std::string& regex);

/// `def name "formula"`. Parameters default to the free variables in
/// lexicographic order.
Environment define(const Environment& env, const std::string& name, const Formula& f,
                   std::vector<std::string> params = {});

/// DFAO with output 1 on accepted readings and 0 elsewhere.
Dfao combine_to_dfao(const RelationAutomaton& predicate);

/// All accepted tuples (in track order) whose components are <= bound,
/// sorted lexicographically.
std::vector<std::vector<Natural>> enumerate_accepted(const RelationAutomaton& r, Natural bound);

class FunctionalityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// For a two-track relation encoding a function, the unique output paired
/// with `input` on `input_track` (default: the last track), or none.
std::optional<Natural> synchronized_apply(const RelationAutomaton& r, Natural input,
                                          std::optional<std::string> input_track = std::nullopt,
                                          std::size_t extra_padding = 2);

}  // namespace zeckit
