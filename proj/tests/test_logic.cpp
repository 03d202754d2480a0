#include <doctest.h>

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "zeckit/logic.hpp"
#include "zeckit/sequence_analysis.hpp"

using namespace zeckit;

namespace {

using Assignment = std::map<std::string, Natural>;

// Direct semantics over the integers, with quantifiers truncated at `bound`.
// Only FTM is known as a sequence; it is evaluated through ftm_direct.
struct Interpreter {
  Natural bound = 200;

  Natural term(const Term& t, const Assignment& a) const {
    return std::visit(
        [&](const auto& n) -> Natural {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, TermNode::Var>) return a.at(n.name);
          if constexpr (std::is_same_v<T, TermNode::Const>) return n.value;
          if constexpr (std::is_same_v<T, TermNode::Sum>) return term(n.lhs, a) + term(n.rhs, a);
          if constexpr (std::is_same_v<T, TermNode::Mul>) return n.factor * term(n.operand, a);
        },
        t->node);
  }

  bool eval(const Formula& f, Assignment a) const {
    return std::visit(
        [&](const auto& n) -> bool {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, FormulaNode::Compare>) {
            const Natural l = term(n.lhs, a), r = term(n.rhs, a);
            switch (n.op) {
              case RelOp::Eq: return l == r;
              case RelOp::Ne: return l != r;
              case RelOp::Lt: return l < r;
              case RelOp::Le: return l <= r;
              case RelOp::Gt: return l > r;
              case RelOp::Ge: return l >= r;
            }
            return false;
          } else if constexpr (std::is_same_v<T, FormulaNode::SeqCompare>) {
            return (ftm_direct(term(n.lhs_index, a)) == ftm_direct(term(n.rhs_index, a))) == n.equal;
          } else if constexpr (std::is_same_v<T, FormulaNode::SeqConst>) {
            return (ftm_direct(term(n.index, a)) == n.bit) == n.equal;
          } else if constexpr (std::is_same_v<T, FormulaNode::Call>) {
            throw std::logic_error("calls are not interpreted");
          } else if constexpr (std::is_same_v<T, FormulaNode::Not>) {
            return !eval(n.operand, a);
          } else if constexpr (std::is_same_v<T, FormulaNode::Binary>) {
            return apply(n.op, eval(n.lhs, a), eval(n.rhs, a));
          } else if constexpr (std::is_same_v<T, FormulaNode::Exists>) {
            for (Natural v = 0; v <= bound; ++v) {
              a[n.var] = v;
              if (eval(n.body, a)) return true;
            }
            return false;
          } else {
            for (Natural v = 0; v <= bound; ++v) {
              a[n.var] = v;
              if (!eval(n.body, a)) return false;
            }
            return true;
          }
        },
        f->node);
  }
};

std::set<std::vector<Natural>> interpret_all(const Formula& f, Natural limit, Natural qbound) {
  const auto vars = free_variables(f);
  const std::vector<std::string> names(vars.begin(), vars.end());
  std::set<std::vector<Natural>> out;
  std::vector<Natural> values(names.size(), 0);
  const Interpreter interp{qbound};
  std::function<void(std::size_t)> fill = [&](std::size_t k) {
    if (k == names.size()) {
      Assignment a;
      for (std::size_t i = 0; i < names.size(); ++i) a[names[i]] = values[i];
      if (interp.eval(f, a)) out.insert(values);
      return;
    }
    for (Natural v = 0; v <= limit; ++v) {
      values[k] = v;
      fill(k + 1);
    }
  };
  fill(0);
  return out;
}

std::set<std::vector<Natural>> compiled_all(const Formula& f, const Environment& env, Natural limit) {
  const auto tuples = enumerate_accepted(compile(f, env), limit);
  return {tuples.begin(), tuples.end()};
}

Environment ftm_env() { return Environment{}.with_sequence("FTM", ftm_dfao()); }

}  // namespace

TEST_CASE("compiled formulas agree with direct semantics") {
  struct Case {
    const char* text;
    Natural limit;
    Natural qbound;
  };
  const Case cases[] = {
      {"Ey y=x & y<3", 60, 200},
      {"x=x", 60, 200},
      {"Ez x+z=y", 60, 200},
      {"Ez 2*z=x", 60, 200},
      {"Ez 3*z+1=x", 60, 200},
      {"x+y=z+1", 25, 200},
      {"Ey x<y & y<z", 25, 200},
      {"Ax x<y => x+1<=y", 60, 200},
      {"x+x+x=4*y | x=y+7", 60, 200},
      {"FTM[x]=FTM[x+1]", 60, 200},
      {"FTM[x]=1 & FTM[2*x]=0", 60, 200},
      {"Ei i<n & FTM[i]!=FTM[i+1] & i>=m", 30, 200},
      {"x>=y <=> ~(y>x)", 40, 200},
      {"Ex x=x+y", 60, 200},
  };
  const Environment env = ftm_env();
  for (const auto& c : cases) {
    const Formula f = parse_formula(c.text);
    INFO("formula: ", c.text);
    CHECK(compiled_all(f, env, c.limit) == interpret_all(f, c.limit, c.qbound));
  }
}

TEST_CASE("negation and quantifier duality") {
  const Environment env = ftm_env();
  const char* bodies[] = {"x<y", "Ez x+z=y", "FTM[x]=FTM[y]", "x+y=5"};
  for (const char* body : bodies) {
    const Formula f = parse_formula(body);
    const Formula nn = make_not(make_not(f));
    INFO("formula: ", body);
    CHECK(compiled_all(nn, env, 40) == compiled_all(f, env, 40));
    CHECK(serialize(compile(nn, env)) == serialize(compile(f, env)));
    const Formula all = make_forall("y", f);
    const Formula dual = make_not(make_exists("y", make_not(f)));
    CHECK(compiled_all(all, env, 40) == compiled_all(dual, env, 40));
  }
}

TEST_CASE("deciding sentences") {
  const Environment env;
  CHECK_FALSE(decide(parse_formula("An n>=1"), env));
  CHECK(decide(parse_formula("An n>=0"), env));
  CHECK(decide(parse_formula("Ax Ey y=x+1"), env));
  CHECK_FALSE(decide(parse_formula("Ex Ay y<=x"), env));
  CHECK(decide(parse_formula("Ax,y x+y=y+x"), env));
  CHECK(decide(parse_formula("Ax Ey x=2*y | x=2*y+1"), env));
  CHECK_THROWS_AS(decide(parse_formula("x=1"), env), CompileError);
}

TEST_CASE("compilation errors") {
  const Environment env;
  CHECK_THROWS_AS(compile(parse_formula("$nope(x)"), env), CompileError);
  CHECK_THROWS_AS(compile(parse_formula("T[x]=1"), env), CompileError);
  const Environment e2 = define(env, "lt", parse_formula("x<y"));
  CHECK_THROWS_AS(compile(parse_formula("$lt(x)"), e2), CompileError);
}

TEST_CASE("definitions and calls") {
  Environment env = define_regex({}, "odd1", "0*(10*10*)*10*");
  env = define(env, "zecksum", parse_formula("(n>=0) & $odd1(n)"));
  CHECK_THROWS_AS(define_regex(env, "odd1", "0*"), CompileError);
  CHECK_THROWS_AS(define(env, "bad", parse_formula("$nope(x)")), CompileError);
  CHECK_THROWS_AS(define(env, "self", parse_formula("$self(x)")), CompileError);

  const auto* z = env.relation("zecksum");
  REQUIRE(z != nullptr);
  for (Natural n = 0; n < 300; ++n) {
    REQUIRE(accepts_values(*z->automaton, {n}) == (ftm_direct(n) == 1));
  }

  // Positional renaming, including a repeated argument and a sum.
  env = define(env, "lt", parse_formula("x<y"));
  const auto self = compiled_all(parse_formula("$lt(a,a)"), env, 20);
  CHECK(self.empty());
  const auto shifted = compiled_all(parse_formula("$lt(b+1,a)"), env, 20);
  std::set<std::vector<Natural>> expected;
  for (Natural a = 0; a <= 20; ++a) {
    for (Natural b = 0; b <= 20; ++b) {
      if (b + 1 < a) expected.insert({a, b});
    }
  }
  CHECK(shifted == expected);

  // Explicit parameter order.
  env = define(env, "gt", parse_formula("x<y"), {"y", "x"});
  CHECK(compiled_all(parse_formula("$gt(p,q)"), env, 10) ==
        compiled_all(parse_formula("p>q"), env, 10));
}

TEST_CASE("combining predicates into sequences") {
  const Dfao none = combine_to_dfao(compile(parse_formula("n<0"), {}));
  const Dfao all = combine_to_dfao(compile(parse_formula("n>=0"), {}));
  for (Natural n = 0; n < 200; ++n) {
    REQUIRE(run_dfao(none, zeck_encode(n).str()) == 0);
    REQUIRE(run_dfao(all, zeck_encode(n).str()) == 1);
  }
  CHECK_THROWS_AS(combine_to_dfao(compile(parse_formula("x<y"), {})), CompileError);
}

TEST_CASE("enumerating relations") {
  const auto lt = enumerate_accepted(lt_rel("x", "y"), 3);
  CHECK(lt == std::vector<std::vector<Natural>>{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  CHECK(enumerate_accepted(Dfa::empty(TrackSet{"x"}), 100).empty());
  CHECK(enumerate_accepted(const_rel("x", 1000), 2000) == std::vector<std::vector<Natural>>{{1000}});
}

TEST_CASE("synchronized functions") {
  const Dfa half = compile(parse_formula("2*m=n | 2*m+1=n"), {});
  for (Natural n = 0; n < 500; ++n) REQUIRE(synchronized_apply(half, n) == n / 2);
  const Dfa sqrt_ish = compile(parse_formula("m=7 & n<3"), {});
  CHECK(synchronized_apply(sqrt_ish, 2) == 7);
  CHECK_FALSE(synchronized_apply(sqrt_ish, 3).has_value());
  const Dfa many = compile(parse_formula("m<n"), {});
  CHECK_THROWS_AS(synchronized_apply(many, 5), FunctionalityError);
  CHECK(synchronized_apply(many, 1) == 0);
  const Dfa by_m = compile(parse_formula("2*m=n"), {});
  CHECK(synchronized_apply(by_m, 6, std::string("m")) == 12);
}

TEST_CASE("environment values") {
  Environment a;
  const Environment b = a.with_relation("r", lt_rel("x", "y"));
  CHECK_FALSE(a.contains("r"));
  CHECK(b.contains("r"));
  CHECK(b.names() == std::vector<std::string>{"r"});
  CHECK_THROWS_AS(b.with_relation("r", lt_rel("x", "y")), CompileError);
  CHECK_THROWS_AS(b.with_sequence("r", ftm_dfao()), CompileError);
}
