#include "zeckit/formula.hpp"

#include <cctype>
#include <optional>

namespace zeckit {

FormulaSyntaxError::FormulaSyntaxError(const std::string& message, std::size_t position)
    : std::runtime_error("syntax error at " + std::to_string(position) + ": " + message),
      position_(position) {}

Term var(std::string name) {
  return std::make_shared<TermNode>(TermNode{TermNode::Var{std::move(name)}});
}
Term constant(Natural value) {
  return std::make_shared<TermNode>(TermNode{TermNode::Const{value}});
}
Term sum(Term lhs, Term rhs) {
  return std::make_shared<TermNode>(TermNode{TermNode::Sum{std::move(lhs), std::move(rhs)}});
}
Term mul(int factor, Term operand) {
  return std::make_shared<TermNode>(TermNode{TermNode::Mul{factor, std::move(operand)}});
}

Formula make_not(Formula f) {
  return std::make_shared<FormulaNode>(FormulaNode{FormulaNode::Not{std::move(f)}});
}
Formula make_binary(BoolOp op, Formula lhs, Formula rhs) {
  return std::make_shared<FormulaNode>(
      FormulaNode{FormulaNode::Binary{op, std::move(lhs), std::move(rhs)}});
}
Formula make_exists(std::string v, Formula body) {
  return std::make_shared<FormulaNode>(FormulaNode{FormulaNode::Exists{std::move(v), std::move(body)}});
}
Formula make_forall(std::string v, Formula body) {
  return std::make_shared<FormulaNode>(FormulaNode{FormulaNode::Forall{std::move(v), std::move(body)}});
}

namespace {

enum class Tok {
  Ident, Number, Call, LParen, RParen, LBracket, RBracket, Comma,
  And, Or, Not, Implies, Iff, Plus, Star,
  Eq, Ne, Lt, Le, Gt, Ge, End
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto starts = [&](std::string_view lit) { return s.substr(i, lit.size()) == lit; };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Tok::Ident, std::string(s.substr(start, i - start)), start});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      out.push_back({Tok::Number, std::string(s.substr(start, i - start)), start});
      continue;
    }
    if (c == '$') {
      ++i;
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      if (i == start + 1) throw FormulaSyntaxError("'$' must be followed by a name", start);
      out.push_back({Tok::Call, std::string(s.substr(start + 1, i - start - 1)), start});
      continue;
    }
    if (c == '?') {
      ++i;
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      const std::string_view annotation = s.substr(start + 1, i - start - 1);
      if (annotation != "msd_fib") {
        throw FormulaSyntaxError("unsupported numeration system '" + std::string(annotation) + "'",
                                 start);
      }
      continue;
    }
    struct Sym { std::string_view text; Tok kind; };
    static constexpr Sym kSymbols[] = {
        {"<=>", Tok::Iff}, {"=>", Tok::Implies}, {"<=", Tok::Le}, {">=", Tok::Ge},
        {"!=", Tok::Ne},   {"=", Tok::Eq},       {"<", Tok::Lt},  {">", Tok::Gt},
        {"&", Tok::And},   {"|", Tok::Or},       {"~", Tok::Not}, {"+", Tok::Plus},
        {"*", Tok::Star},  {"(", Tok::LParen},   {")", Tok::RParen},
        {"[", Tok::LBracket}, {"]", Tok::RBracket}, {",", Tok::Comma},
    };
    bool matched = false;
    for (const auto& sym : kSymbols) {
      if (starts(sym.text)) {
        out.push_back({sym.kind, std::string(sym.text), start});
        i += sym.text.size();
        matched = true;
        break;
      }
    }
    if (!matched) throw FormulaSyntaxError(std::string("unknown operator '") + c + "'", start);
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

std::optional<RelOp> relop_of(Tok t) {
  switch (t) {
    case Tok::Eq: return RelOp::Eq;
    case Tok::Ne: return RelOp::Ne;
    case Tok::Lt: return RelOp::Lt;
    case Tok::Le: return RelOp::Le;
    case Tok::Gt: return RelOp::Gt;
    case Tok::Ge: return RelOp::Ge;
    default: return std::nullopt;
  }
}

bool is_quantifier(const Token& t) {
  return t.kind == Tok::Ident && (t.text[0] == 'A' || t.text[0] == 'E');
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Formula parse() {
    if (peek().kind == Tok::End) throw FormulaSyntaxError("empty formula", peek().pos);
    Formula f = iff();
    if (peek().kind != Tok::End) throw error("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& advance() { return toks_[pos_++]; }
  bool accept(Tok t) {
    if (peek().kind != t) return false;
    ++pos_;
    return true;
  }
  FormulaSyntaxError error(const std::string& message) const {
    return FormulaSyntaxError(message, peek().pos);
  }
  void expect(Tok t, std::string_view what) {
    if (!accept(t)) throw error("expected " + std::string(what));
  }

  Formula iff() {
    Formula lhs = implies();
    while (accept(Tok::Iff)) lhs = make_binary(BoolOp::Iff, lhs, implies());
    return lhs;
  }

  Formula implies() {
    Formula lhs = disjunction();
    if (accept(Tok::Implies)) return make_binary(BoolOp::Implies, lhs, implies());
    return lhs;
  }

  Formula disjunction() {
    Formula lhs = conjunction();
    while (accept(Tok::Or)) lhs = make_binary(BoolOp::Or, lhs, conjunction());
    return lhs;
  }

  Formula conjunction() {
    Formula lhs = unary();
    while (accept(Tok::And)) lhs = make_binary(BoolOp::And, lhs, unary());
    return lhs;
  }

  Formula unary() {
    if (accept(Tok::Not)) return make_not(unary());
    if (is_quantifier(peek()) && peek(1).kind != Tok::LBracket) return quantified();
    return primary();
  }

  // "Au,v body": the quantifier letter is fused with the first variable,
  // or stands alone before it.
  Formula quantified() {
    const Token q = advance();
    const bool universal = q.text[0] == 'A';
    std::vector<std::string> vars;
    if (q.text.size() > 1) {
      vars.push_back(q.text.substr(1));
    } else {
      if (peek().kind != Tok::Ident) throw error("expected quantified variable");
      vars.push_back(advance().text);
    }
    while (accept(Tok::Comma)) {
      if (peek().kind != Tok::Ident) throw error("expected quantified variable");
      vars.push_back(advance().text);
    }
    for (std::size_t k = 0; k < vars.size(); ++k) {
      check_variable(vars[k], q.pos);
      for (std::size_t j = 0; j < k; ++j) {
        if (vars[j] == vars[k]) throw FormulaSyntaxError("variable '" + vars[k] + "' quantified twice", q.pos);
      }
      for (const auto& outer : bound_) {
        if (outer == vars[k]) throw FormulaSyntaxError("quantifier shadows '" + vars[k] + "'", q.pos);
      }
    }
    bound_.insert(bound_.end(), vars.begin(), vars.end());
    Formula body = iff();
    bound_.resize(bound_.size() - vars.size());
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
      body = universal ? make_forall(*it, body) : make_exists(*it, body);
    }
    return body;
  }

  Formula primary() {
    if (peek().kind == Tok::LParen) {
      // Either a parenthesized formula or a comparison whose left term is
      // parenthesized, as in "(2*x)>=y".
      const std::size_t save = pos_;
      try {
        Formula f = comparison();
        return f;
      } catch (const FormulaSyntaxError&) {
        pos_ = save;
      }
      advance();
      Formula inner = iff();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (peek().kind == Tok::Call) return call();
    if (peek().kind == Tok::Ident && peek(1).kind == Tok::LBracket) return sequence_atom();
    return comparison();
  }

  Formula call() {
    const Token name = advance();
    expect(Tok::LParen, "'(' after $" + name.text);
    std::vector<Term> args;
    if (peek().kind != Tok::RParen) {
      args.push_back(term());
      while (accept(Tok::Comma)) args.push_back(term());
    }
    expect(Tok::RParen, "')' closing argument list");
    return std::make_shared<FormulaNode>(FormulaNode{FormulaNode::Call{name.text, std::move(args)}});
  }

  std::pair<std::string, Term> indexed() {
    const Token name = advance();
    expect(Tok::LBracket, "'['");
    Term index = term();
    expect(Tok::RBracket, "']'");
    return {name.text, index};
  }

  Formula sequence_atom() {
    auto [seq, index] = indexed();
    bool equal;
    if (accept(Tok::Eq)) {
      equal = true;
    } else if (accept(Tok::Ne)) {
      equal = false;
    } else {
      throw error("expected '=' or '!=' after sequence term");
    }
    if (peek().kind == Tok::Number) {
      const Token bit = advance();
      if (bit.text != "0" && bit.text != "1") {
        throw FormulaSyntaxError("sequence values are 0 or 1", bit.pos);
      }
      return std::make_shared<FormulaNode>(
          FormulaNode{FormulaNode::SeqConst{seq, index, equal, bit.text == "1"}});
    }
    if (peek().kind == Tok::Ident && peek(1).kind == Tok::LBracket) {
      auto [rhs_seq, rhs_index] = indexed();
      return std::make_shared<FormulaNode>(
          FormulaNode{FormulaNode::SeqCompare{seq, index, equal, rhs_seq, rhs_index}});
    }
    throw error("expected sequence term or bit");
  }

  Formula comparison() {
    Term lhs = term();
    const auto op = relop_of(peek().kind);
    if (!op) throw error("expected comparison operator");
    advance();
    Term rhs = term();
    return std::make_shared<FormulaNode>(FormulaNode{FormulaNode::Compare{lhs, *op, rhs}});
  }

  Term term() {
    Term lhs = factor();
    while (accept(Tok::Plus)) lhs = sum(lhs, factor());
    return lhs;
  }

  Term factor() {
    const Token& t = peek();
    if (t.kind == Tok::Number) {
      advance();
      const Natural value = parse_number(t);
      if (accept(Tok::Star)) {
        if (value < 1 || value > 4) {
          throw FormulaSyntaxError("constant multiplier must be between 1 and 4", t.pos);
        }
        return mul(static_cast<int>(value), factor());
      }
      return constant(value);
    }
    if (t.kind == Tok::Ident) {
      if (peek(1).kind == Tok::LBracket) throw error("sequence value used as a number");
      advance();
      check_variable(t.text, t.pos);
      return var(t.text);
    }
    if (accept(Tok::LParen)) {
      Term inner = term();
      expect(Tok::RParen, "')'");
      return inner;
    }
    throw error(t.kind == Tok::End ? "unexpected end of formula" : "unexpected '" + t.text + "'");
  }

  static Natural parse_number(const Token& t) {
    try {
      return std::stoull(t.text);
    } catch (const std::exception&) {
      throw FormulaSyntaxError("integer literal out of range", t.pos);
    }
  }

  static void check_variable(const std::string& name, std::size_t pos) {
    if (name.rfind(kFreshPrefix, 0) == 0) {
      throw FormulaSyntaxError("variable prefix '_t' is reserved", pos);
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::string> bound_;
};

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

void term_vars(const Term& t, std::set<std::string>& out) {
  std::visit(Overloaded{
                 [&](const TermNode::Var& v) { out.insert(v.name); },
                 [&](const TermNode::Const&) {},
                 [&](const TermNode::Sum& s) {
                   term_vars(s.lhs, out);
                   term_vars(s.rhs, out);
                 },
                 [&](const TermNode::Mul& m) { term_vars(m.operand, out); },
             },
             t->node);
}

const char* relop_text(RelOp op) {
  switch (op) {
    case RelOp::Eq: return "=";
    case RelOp::Ne: return "!=";
    case RelOp::Lt: return "<";
    case RelOp::Le: return "<=";
    case RelOp::Gt: return ">";
    case RelOp::Ge: return ">=";
  }
  return "?";
}

const char* boolop_text(BoolOp op) {
  switch (op) {
    case BoolOp::And: return "&";
    case BoolOp::Or: return "|";
    case BoolOp::Implies: return "=>";
    case BoolOp::Iff: return "<=>";
    case BoolOp::Xor: return "^";
    case BoolOp::AndNot: return "&~";
  }
  return "?";
}

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(tokenize(text)).parse(); }

std::set<std::string> free_variables(const Formula& f) {
  std::set<std::string> out;
  std::visit(Overloaded{
                 [&](const FormulaNode::Compare& c) {
                   term_vars(c.lhs, out);
                   term_vars(c.rhs, out);
                 },
                 [&](const FormulaNode::SeqCompare& c) {
                   term_vars(c.lhs_index, out);
                   term_vars(c.rhs_index, out);
                 },
                 [&](const FormulaNode::SeqConst& c) { term_vars(c.index, out); },
                 [&](const FormulaNode::Call& c) {
                   for (const auto& a : c.args) term_vars(a, out);
                 },
                 [&](const FormulaNode::Not& n) { out = free_variables(n.operand); },
                 [&](const FormulaNode::Binary& b) {
                   out = free_variables(b.lhs);
                   out.merge(free_variables(b.rhs));
                 },
                 [&](const FormulaNode::Exists& q) {
                   out = free_variables(q.body);
                   out.erase(q.var);
                 },
                 [&](const FormulaNode::Forall& q) {
                   out = free_variables(q.body);
                   out.erase(q.var);
                 },
             },
             f->node);
  return out;
}

std::set<std::string> called_names(const Formula& f) {
  std::set<std::string> out;
  std::visit(Overloaded{
                 [&](const FormulaNode::Call& c) { out.insert(c.name); },
                 [&](const FormulaNode::Not& n) { out = called_names(n.operand); },
                 [&](const FormulaNode::Binary& b) {
                   out = called_names(b.lhs);
                   out.merge(called_names(b.rhs));
                 },
                 [&](const FormulaNode::Exists& q) { out = called_names(q.body); },
                 [&](const FormulaNode::Forall& q) { out = called_names(q.body); },
                 [&](const auto&) {},
             },
             f->node);
  return out;
}

std::string to_string(const Term& t) {
  return std::visit(Overloaded{
                        [](const TermNode::Var& v) { return v.name; },
                        [](const TermNode::Const& c) { return std::to_string(c.value); },
                        [](const TermNode::Sum& s) {
                          return "(" + to_string(s.lhs) + "+" + to_string(s.rhs) + ")";
                        },
                        [](const TermNode::Mul& m) {
                          return std::to_string(m.factor) + "*" + to_string(m.operand);
                        },
                    },
                    t->node);
}

std::string to_string(const Formula& f) {
  return std::visit(
      Overloaded{
          [](const FormulaNode::Compare& c) {
            return to_string(c.lhs) + relop_text(c.op) + to_string(c.rhs);
          },
          [](const FormulaNode::SeqCompare& c) {
            return c.lhs_seq + "[" + to_string(c.lhs_index) + "]" + (c.equal ? "=" : "!=") +
                   c.rhs_seq + "[" + to_string(c.rhs_index) + "]";
          },
          [](const FormulaNode::SeqConst& c) {
            return c.seq + "[" + to_string(c.index) + "]" + (c.equal ? "=" : "!=") +
                   std::to_string(c.bit);
          },
          [](const FormulaNode::Call& c) {
            std::string out = "$" + c.name + "(";
            for (std::size_t i = 0; i < c.args.size(); ++i) {
              if (i > 0) out += ",";
              out += to_string(c.args[i]);
            }
            return out + ")";
          },
          [](const FormulaNode::Not& n) { return "~" + to_string(n.operand); },
          [](const FormulaNode::Binary& b) {
            return "(" + to_string(b.lhs) + " " + boolop_text(b.op) + " " + to_string(b.rhs) + ")";
          },
          [](const FormulaNode::Exists& q) { return "E" + q.var + " " + to_string(q.body); },
          [](const FormulaNode::Forall& q) { return "A" + q.var + " " + to_string(q.body); },
      },
      f->node);
}

}  // namespace zeckit
