#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "zeckit/automata.hpp"

namespace zeckit {

class RegexSyntaxError : public std::runtime_error {
 public:
  RegexSyntaxError(const std::string& message, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Regular expressions over {0,1}: symbols, juxtaposition, '|', '*', parens.
struct RegexNode {
  enum class Kind { Symbol, Concat, Union, Star };

  Kind kind;
  int symbol = 0;
  std::vector<std::shared_ptr<const RegexNode>> children;
};

using RegexAst = std::shared_ptr<const RegexNode>;

RegexAst regex_parse(std::string_view text);

/// Compact textual form, e.g. "concat(star(0),1)".
std::string regex_to_string(const RegexAst& ast);

/// Minimal one-track DFA for the expression's language.
Dfa regex_to_dfa(const RegexAst& ast, const std::string& track = "x");

}  // namespace zeckit
