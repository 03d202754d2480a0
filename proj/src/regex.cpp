#include "zeckit/regex.hpp"

#include <algorithm>

namespace zeckit {

RegexSyntaxError::RegexSyntaxError(const std::string& message, std::size_t position)
    : std::runtime_error("regex syntax error at " + std::to_string(position) + ": " + message),
      position_(position) {}

namespace {

RegexAst make(RegexNode::Kind kind, std::vector<RegexAst> children, int symbol = 0) {
  auto node = std::make_shared<RegexNode>();
  node->kind = kind;
  node->symbol = symbol;
  node->children = std::move(children);
  return node;
}

class RegexParser {
 public:
  explicit RegexParser(std::string_view text) : text_(text) {}

  RegexAst parse() {
    skip_space();
    RegexAst ast = alternation();
    if (pos_ < text_.size()) {
      if (text_[pos_] == ')') throw RegexSyntaxError("unbalanced ')'", pos_);
      throw RegexSyntaxError("unexpected character", pos_);
    }
    return ast;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  RegexAst alternation() {
    std::vector<RegexAst> branches{concatenation()};
    while (!at_end() && peek() == '|') {
      ++pos_;
      skip_space();
      branches.push_back(concatenation());
    }
    if (branches.size() == 1) return branches.front();
    return make(RegexNode::Kind::Union, std::move(branches));
  }

  RegexAst concatenation() {
    std::vector<RegexAst> parts;
    while (!at_end() && peek() != '|' && peek() != ')') parts.push_back(repetition());
    if (parts.empty()) throw RegexSyntaxError("empty alternative", pos_);
    if (parts.size() == 1) return parts.front();
    return make(RegexNode::Kind::Concat, std::move(parts));
  }

  RegexAst repetition() {
    RegexAst atom_ast = atom();
    while (!at_end() && peek() == '*') {
      ++pos_;
      skip_space();
      atom_ast = make(RegexNode::Kind::Star, {atom_ast});
    }
    return atom_ast;
  }

  RegexAst atom() {
    const std::size_t start = pos_;
    const char c = peek();
    if (c == '0' || c == '1') {
      ++pos_;
      skip_space();
      return make(RegexNode::Kind::Symbol, {}, c - '0');
    }
    if (c == '(') {
      ++pos_;
      skip_space();
      RegexAst inner = alternation();
      if (at_end() || peek() != ')') throw RegexSyntaxError("unbalanced '('", start);
      ++pos_;
      skip_space();
      return inner;
    }
    if (c == '*') throw RegexSyntaxError("dangling '*'", pos_);
    throw RegexSyntaxError(std::string("unexpected character '") + c + "'", pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// Thompson construction with epsilon edges, flattened afterwards.
struct EpsilonNfa {
  struct Edge {
    int symbol;  // -1 for epsilon
    State to;
  };
  std::vector<std::vector<Edge>> edges;

  State add_state() {
    edges.emplace_back();
    return static_cast<State>(edges.size() - 1);
  }

  // Returns (entry, exit) of the fragment for `ast`.
  std::pair<State, State> build(const RegexAst& ast) {
    switch (ast->kind) {
      case RegexNode::Kind::Symbol: {
        const State s = add_state();
        const State t = add_state();
        edges[s].push_back({ast->symbol, t});
        return {s, t};
      }
      case RegexNode::Kind::Concat: {
        auto [entry, exit] = build(ast->children.front());
        for (std::size_t i = 1; i < ast->children.size(); ++i) {
          auto [s, t] = build(ast->children[i]);
          edges[exit].push_back({-1, s});
          exit = t;
        }
        return {entry, exit};
      }
      case RegexNode::Kind::Union: {
        const State s = add_state();
        const State t = add_state();
        for (const auto& child : ast->children) {
          auto [cs, ct] = build(child);
          edges[s].push_back({-1, cs});
          edges[ct].push_back({-1, t});
        }
        return {s, t};
      }
      case RegexNode::Kind::Star: {
        const State s = add_state();
        const State t = add_state();
        auto [cs, ct] = build(ast->children.front());
        edges[s].push_back({-1, cs});
        edges[s].push_back({-1, t});
        edges[ct].push_back({-1, cs});
        edges[ct].push_back({-1, t});
        return {s, t};
      }
    }
    return {0, 0};
  }

  std::vector<State> closure(State q) const {
    std::vector<State> out{q};
    std::vector<bool> seen(edges.size(), false);
    seen[q] = true;
    for (std::size_t k = 0; k < out.size(); ++k) {
      for (const Edge& e : edges[out[k]]) {
        if (e.symbol < 0 && !seen[e.to]) {
          seen[e.to] = true;
          out.push_back(e.to);
        }
      }
    }
    return out;
  }
};

}  // namespace

RegexAst regex_parse(std::string_view text) { return RegexParser(text).parse(); }

std::string regex_to_string(const RegexAst& ast) {
  switch (ast->kind) {
    case RegexNode::Kind::Symbol:
      return std::to_string(ast->symbol);
    case RegexNode::Kind::Star:
      return "star(" + regex_to_string(ast->children.front()) + ")";
    case RegexNode::Kind::Concat:
    case RegexNode::Kind::Union: {
      std::string out = ast->kind == RegexNode::Kind::Concat ? "concat(" : "union(";
      for (std::size_t i = 0; i < ast->children.size(); ++i) {
        if (i > 0) out += ',';
        out += regex_to_string(ast->children[i]);
      }
      return out + ")";
    }
  }
  return {};
}

Dfa regex_to_dfa(const RegexAst& ast, const std::string& track) {
  EpsilonNfa enfa;
  const auto [entry, exit] = enfa.build(ast);

  // q --c--> r in the flat NFA iff some state in closure(q) reads c into r'
  // with r in closure(r'). Acceptance: exit in closure(q).
  const std::size_t n = enfa.edges.size();
  Nfa nfa(TrackSet{track}, n);
  for (State q = 0; q < n; ++q) {
    const auto cl = enfa.closure(q);
    if (std::find(cl.begin(), cl.end(), exit) != cl.end()) nfa.set_accepting(q);
    for (State p : cl) {
      for (const auto& e : enfa.edges[p]) {
        if (e.symbol >= 0) nfa.add_transition(q, static_cast<Column>(e.symbol), e.to);
      }
    }
  }
  nfa.add_initial(entry);
  return determinize(nfa);
}

}  // namespace zeckit
