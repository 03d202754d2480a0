#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "zeckit/logic.hpp"

namespace zeckit {

class ScriptError : public std::runtime_error {
 public:
  ScriptError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct ScriptCommand {
  enum class Kind { Reg, Def, Combine, Eval };

  Kind kind;
  std::string name;
  /// Regex, formula text, or predicate name.
  std::string argument;
  std::size_t line;
};

/// Splits a script into commands. Commands end at ':' or end of line;
/// quoted arguments may span lines; '#' starts a comment.
std::vector<ScriptCommand> parse_script(std::string_view text);

struct CommandOutcome {
  ScriptCommand command;
  /// States of the resulting automaton, dead sink excluded.
  std::size_t states = 0;
  /// Set for evals and for definitions without free variables.
  std::optional<bool> truth;

  /// "name: N states" or "name: TRUE".
  std::string summary() const;
};

/// Executes commands in order against a growing environment.
class Session {
 public:
  CommandOutcome execute(const ScriptCommand& command);
  std::vector<CommandOutcome> run(std::string_view script);

  const Environment& environment() const { return env_; }

 private:
  Environment env_;
};

}  // namespace zeckit
