#pragma once

#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "zeckit/fib_relations.hpp"
#include "zeckit/numeration.hpp"

namespace zeckit {

class FormulaSyntaxError : public std::runtime_error {
 public:
  FormulaSyntaxError(const std::string& message, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Prefix reserved for variables introduced by term normalization.
inline constexpr std::string_view kFreshPrefix = "_t";

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

struct TermNode {
  struct Var { std::string name; };
  struct Const { Natural value; };
  struct Sum { Term lhs, rhs; };
  struct Mul { int factor; Term operand; };

  std::variant<Var, Const, Sum, Mul> node;
};

Term var(std::string name);
Term constant(Natural value);
Term sum(Term lhs, Term rhs);
Term mul(int factor, Term operand);

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  /// t1 op t2 over naturals.
  struct Compare { Term lhs; RelOp op; Term rhs; };
  /// S[i] = T[j] or S[i] != T[j].
  struct SeqCompare { std::string lhs_seq; Term lhs_index; bool equal; std::string rhs_seq; Term rhs_index; };
  /// S[i] = b or S[i] != b.
  struct SeqConst { std::string seq; Term index; bool equal; int bit; };
  /// $name(args...)
  struct Call { std::string name; std::vector<Term> args; };
  struct Not { Formula operand; };
  struct Binary { BoolOp op; Formula lhs, rhs; };
  struct Exists { std::string var; Formula body; };
  struct Forall { std::string var; Formula body; };

  std::variant<Compare, SeqCompare, SeqConst, Call, Not, Binary, Exists, Forall> node;
};

Formula make_not(Formula f);
Formula make_binary(BoolOp op, Formula lhs, Formula rhs);
Formula make_exists(std::string var, Formula body);
Formula make_forall(std::string var, Formula body);

/// Parses the formula language. A leading "?msd_fib" is accepted and
/// ignored. Quantifiers bind as far right as possible.
Formula parse_formula(std::string_view text);

/// Variables occurring free, in lexicographic order.
std::set<std::string> free_variables(const Formula& f);

/// Names of definitions invoked through $name(...).
std::set<std::string> called_names(const Formula& f);

/// Fully parenthesized rendering, mainly for diagnostics and tests.
std::string to_string(const Formula& f);
std::string to_string(const Term& t);

}  // namespace zeckit
