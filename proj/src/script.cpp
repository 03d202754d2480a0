#include "zeckit/script.hpp"

#include <cctype>

#include "zeckit/regex.hpp"

namespace zeckit {

ScriptError::ScriptError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

namespace {

struct Word {
  std::string text;
  bool quoted;
};

std::optional<ScriptCommand::Kind> command_kind(const std::string& word) {
  if (word == "reg") return ScriptCommand::Kind::Reg;
  if (word == "def") return ScriptCommand::Kind::Def;
  if (word == "combine") return ScriptCommand::Kind::Combine;
  if (word == "eval") return ScriptCommand::Kind::Eval;
  return std::nullopt;
}

ScriptCommand build_command(std::vector<Word> words, std::size_t line) {
  const auto kind = command_kind(words[0].text);
  if (!kind || words[0].quoted) throw ScriptError(line, "unknown command '" + words[0].text + "'");
  // Walnut's numeration annotation is optional and ignored.
  if (words.size() > 2 && !words[2].quoted && words[2].text == "msd_fib") {
    words.erase(words.begin() + 2);
  }
  if (words.size() != 3) {
    throw ScriptError(line, words[0].text + " expects a name and one argument");
  }
  if (words[1].quoted) throw ScriptError(line, "name must not be quoted");
  return ScriptCommand{*kind, words[1].text, words[2].text, line};
}

}  // namespace

std::vector<ScriptCommand> parse_script(std::string_view text) {
  std::vector<ScriptCommand> commands;
  std::vector<Word> words;
  std::size_t line = 1;
  std::size_t command_line = 1;
  std::size_t i = 0;

  auto flush = [&] {
    if (!words.empty()) commands.push_back(build_command(std::move(words), command_line));
    words.clear();
  };

  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      flush();
      ++line;
      ++i;
    } else if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (c == ':' || c == ';') {
      flush();
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '"') {
      if (words.empty()) command_line = line;
      const std::size_t open_line = line;
      std::string quoted;
      ++i;
      while (i < text.size() && text[i] != '"') {
        if (text[i] == '\n') {
          ++line;
          quoted.push_back(' ');
        } else {
          quoted.push_back(text[i]);
        }
        ++i;
      }
      if (i >= text.size()) throw ScriptError(open_line, "unterminated string");
      ++i;
      words.push_back({std::move(quoted), true});
    } else {
      if (words.empty()) command_line = line;
      std::string word;
      while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
             text[i] != '"' && text[i] != ':' && text[i] != ';' && text[i] != '#') {
        word.push_back(text[i++]);
      }
      words.push_back({std::move(word), false});
    }
  }
  flush();
  return commands;
}

std::string CommandOutcome::summary() const {
  if (truth) return command.name + ": " + (*truth ? "TRUE" : "FALSE");
  return command.name + ": " + std::to_string(states) + (states == 1 ? " state" : " states");
}

CommandOutcome Session::execute(const ScriptCommand& command) {
  CommandOutcome outcome{command, 0, std::nullopt};
  try {
    switch (command.kind) {
      case ScriptCommand::Kind::Reg: {
        env_ = define_regex(env_, command.name, command.argument);
        outcome.states = env_.relation(command.name)->automaton->live_state_count();
        break;
      }
      case ScriptCommand::Kind::Def: {
        env_ = define(env_, command.name, parse_formula(command.argument));
        const Dfa& a = *env_.relation(command.name)->automaton;
        outcome.states = a.live_state_count();
        if (a.tracks().empty()) outcome.truth = a.accepting(a.initial());
        break;
      }
      case ScriptCommand::Kind::Combine: {
        const Environment::Relation* pred = env_.relation(command.argument);
        if (pred == nullptr) throw CompileError("unknown predicate '" + command.argument + "'");
        Dfao seq = combine_to_dfao(*pred->automaton);
        outcome.states = seq.state_count();
        env_ = env_.with_sequence(command.name, std::move(seq));
        break;
      }
      case ScriptCommand::Kind::Eval: {
        if (env_.contains(command.name)) {
          throw CompileError("'" + command.name + "' is already defined");
        }
        const Formula f = parse_formula(command.argument);
        outcome.truth = decide(f, env_);
        outcome.states = 1;
        break;
      }
    }
  } catch (const ScriptError&) {
    throw;
  } catch (const std::exception& e) {
    throw ScriptError(command.line, e.what());
  }
  return outcome;
}

std::vector<CommandOutcome> Session::run(std::string_view script) {
  std::vector<CommandOutcome> outcomes;
  for (const auto& command : parse_script(script)) outcomes.push_back(execute(command));
  return outcomes;
}

}  // namespace zeckit
