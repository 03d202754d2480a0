#include "zeckit/logic.hpp"

#include <algorithm>
#include <set>

#include "zeckit/regex.hpp"

namespace zeckit {

// ------------------------------------------------------------ Environment

bool Environment::contains(const std::string& name) const {
  return relations_.count(name) > 0 || sequences_.count(name) > 0;
}

const Environment::Relation* Environment::relation(const std::string& name) const {
  auto it = relations_.find(name);
  return it == relations_.end() ? nullptr : &it->second;
}

const Dfao* Environment::sequence(const std::string& name) const {
  auto it = sequences_.find(name);
  return it == sequences_.end() ? nullptr : it->second.get();
}

void Environment::check_unused(const std::string& name) const {
  if (contains(name)) throw CompileError("'" + name + "' is already defined");
}

Environment Environment::with_relation(const std::string& name, Dfa automaton,
                                       std::vector<std::string> params) const {
  check_unused(name);
  if (params.empty()) {
    params = automaton.tracks().names();
  } else if (TrackSet(params) != automaton.tracks() ||
             TrackSet(params).size() != params.size()) {
    throw CompileError("parameters of '" + name + "' must list each free variable once");
  }
  Environment out = *this;
  out.relations_.emplace(name,
                         Relation{std::move(params), std::make_shared<const Dfa>(std::move(automaton))});
  out.order_.push_back(name);
  return out;
}

Environment Environment::with_sequence(const std::string& name, Dfao sequence) const {
  check_unused(name);
  if (sequence.tracks().size() != 1) {
    throw CompileError("sequence '" + name + "' must read a single track");
  }
  Environment out = *this;
  out.sequences_.emplace(name, std::make_shared<const Dfao>(std::move(sequence)));
  out.order_.push_back(name);
  return out;
}

// --------------------------------------------------------------- compiler

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

// Pairwise comparison of two sequence outputs on tracks a (lhs), b (rhs).
Dfa sequence_pair(const Dfao& lhs, const Dfao& rhs, bool equal) {
  const std::size_t n = lhs.state_count() * rhs.state_count();
  std::vector<State> delta(n * 4);
  std::vector<bool> acc(n);
  for (State p = 0; p < lhs.state_count(); ++p) {
    for (State q = 0; q < rhs.state_count(); ++q) {
      const State s = p * static_cast<State>(rhs.state_count()) + q;
      acc[s] = (lhs.output(p) == rhs.output(q)) == equal;
      for (Column c = 0; c < 4; ++c) {
        delta[s * 4 + c] = lhs.next(p, c & 1U) * static_cast<State>(rhs.state_count()) +
                           rhs.next(q, c >> 1 & 1U);
      }
    }
  }
  const State init = lhs.initial() * static_cast<State>(rhs.state_count()) + rhs.initial();
  return minimize(Dfa(TrackSet{"a", "b"}, n, init, std::move(delta), std::move(acc)));
}

Dfa sequence_value(const Dfao& seq, int bit, bool equal) {
  const std::size_t n = seq.state_count();
  std::vector<State> delta(seq.transitions());
  std::vector<bool> acc(n);
  for (State q = 0; q < n; ++q) acc[q] = (seq.output(q) == bit) == equal;
  return minimize(Dfa(TrackSet{"a"}, n, seq.initial(), std::move(delta), std::move(acc)));
}

class Compiler {
 public:
  explicit Compiler(const Environment& env) : env_(env) {}

  Dfa run(const Formula& f) {
    return std::visit(
        Overloaded{
            [&](const FormulaNode::Compare& c) { return compare(c); },
            [&](const FormulaNode::SeqCompare& c) { return seq_compare(c); },
            [&](const FormulaNode::SeqConst& c) { return seq_const(c); },
            [&](const FormulaNode::Call& c) { return call(c); },
            [&](const FormulaNode::Not& n) { return negate(run(n.operand)); },
            [&](const FormulaNode::Binary& b) {
              Dfa r = product(run(b.lhs), run(b.rhs), b.op);
              return b.op == BoolOp::And ? r : restrict_canonical(r);
            },
            [&](const FormulaNode::Exists& q) {
              std::vector<std::string> vars{q.var};
              const Formula& body = quantifier_block<FormulaNode::Exists>(q.body, vars);
              return eliminate(run(body), vars);
            },
            [&](const FormulaNode::Forall& q) {
              std::vector<std::string> vars{q.var};
              const Formula& body = quantifier_block<FormulaNode::Forall>(q.body, vars);
              return negate(eliminate(negate(run(body)), vars));
            },
        },
        f->node);
  }

 private:
  struct Atom {
    std::vector<Dfa> constraints;
    std::vector<std::string> fresh;
  };

  static Dfa negate(const Dfa& a) { return restrict_canonical(complement(a)); }

  // A run of nested quantifiers of one kind is eliminated by a single
  // projection.
  template <class Quantifier>
  static const Formula& quantifier_block(const Formula& body, std::vector<std::string>& vars) {
    const Formula* inner = &body;
    while (const auto* q = std::get_if<Quantifier>(&(*inner)->node)) {
      vars.push_back(q->var);
      inner = &q->body;
    }
    return *inner;
  }

  static Dfa eliminate(const Dfa& a, const std::vector<std::string>& vars) {
    std::vector<std::string> present;
    for (const auto& v : vars) {
      if (a.tracks().contains(v)) present.push_back(v);
    }
    return present.empty() ? a : project(a, present);
  }

  std::string fresh_name(Atom& atom) {
    atom.fresh.push_back(std::string(kFreshPrefix) + std::to_string(counter_++));
    return atom.fresh.back();
  }

  // Reduces a term to a variable, recording defining constraints.
  std::string normalize(const Term& t, Atom& atom) {
    return std::visit(
        Overloaded{
            [&](const TermNode::Var& v) { return v.name; },
            [&](const TermNode::Const& c) {
              const std::string name = fresh_name(atom);
              atom.constraints.push_back(const_rel(name, c.value));
              return name;
            },
            [&](const TermNode::Sum& s) {
              const std::string lhs = normalize(s.lhs, atom);
              const std::string rhs = normalize(s.rhs, atom);
              const std::string name = fresh_name(atom);
              atom.constraints.push_back(add_rel(lhs, rhs, name));
              return name;
            },
            [&](const TermNode::Mul& m) {
              const std::string operand = normalize(m.operand, atom);
              const std::string name = fresh_name(atom);
              atom.constraints.push_back(const_mul_rel(m.factor, operand, name));
              return name;
            },
        },
        t->node);
  }

  // Conjoins the core with the term constraints, newest first, and projects
  // each fresh variable once nothing left mentions it.
  static Dfa finish(Dfa core, Atom atom) {
    Dfa result = std::move(core);
    for (std::size_t k = atom.constraints.size(); k-- > 0;) {
      result = product(result, atom.constraints[k], BoolOp::And);
      for (const auto& v : atom.fresh) {
        if (!result.tracks().contains(v)) continue;
        const bool used_later = std::any_of(
            atom.constraints.begin(), atom.constraints.begin() + static_cast<std::ptrdiff_t>(k),
            [&](const Dfa& c) { return c.tracks().contains(v); });
        if (!used_later) result = project(result, v);
      }
    }
    return result;
  }

  Dfa compare(const FormulaNode::Compare& c) {
    Atom atom;
    const std::string lhs = normalize(c.lhs, atom);
    const std::string rhs = normalize(c.rhs, atom);
    return finish(compare_rel(lhs, c.op, rhs), std::move(atom));
  }

  const Dfao& sequence(const std::string& name) const {
    const Dfao* seq = env_.sequence(name);
    if (seq == nullptr) throw CompileError("unknown sequence '" + name + "'");
    return *seq;
  }

  Dfa seq_compare(const FormulaNode::SeqCompare& c) {
    const Dfao& lhs_seq = sequence(c.lhs_seq);
    const Dfao& rhs_seq = sequence(c.rhs_seq);
    Atom atom;
    const std::string lhs = normalize(c.lhs_index, atom);
    const std::string rhs = normalize(c.rhs_index, atom);
    Dfa core = restrict_canonical(rename_tracks(sequence_pair(lhs_seq, rhs_seq, c.equal), {lhs, rhs}));
    return finish(std::move(core), std::move(atom));
  }

  Dfa seq_const(const FormulaNode::SeqConst& c) {
    const Dfao& seq = sequence(c.seq);
    Atom atom;
    const std::string index = normalize(c.index, atom);
    Dfa core = restrict_canonical(rename_tracks(sequence_value(seq, c.bit, c.equal), {index}));
    return finish(std::move(core), std::move(atom));
  }

  Dfa call(const FormulaNode::Call& c) {
    const Environment::Relation* rel = env_.relation(c.name);
    if (rel == nullptr) {
      if (env_.sequence(c.name) != nullptr) {
        throw CompileError("'" + c.name + "' is a sequence, not a predicate");
      }
      throw CompileError("unknown predicate '$" + c.name + "'");
    }
    if (c.args.size() != rel->params.size()) {
      throw CompileError("$" + c.name + " expects " + std::to_string(rel->params.size()) +
                         " arguments, got " + std::to_string(c.args.size()));
    }
    Atom atom;
    std::vector<std::string> args;
    for (const auto& t : c.args) args.push_back(normalize(t, atom));

    const TrackSet& tracks = rel->automaton->tracks();
    std::vector<std::string> renamed(tracks.size());
    for (std::size_t i = 0; i < tracks.size(); ++i) {
      const auto it = std::find(rel->params.begin(), rel->params.end(), tracks[i]);
      renamed[i] = args[static_cast<std::size_t>(it - rel->params.begin())];
    }
    Dfa core = restrict_canonical(rename_tracks(*rel->automaton, renamed));
    return finish(std::move(core), std::move(atom));
  }

  const Environment& env_;
  int counter_ = 0;
};

}  // namespace

RelationAutomaton compile(const Formula& f, const Environment& env) {
  Dfa result = Compiler(env).run(f);
  const auto free = free_variables(f);
  const TrackSet expected(std::vector<std::string>(free.begin(), free.end()));
  if (result.tracks() != expected) result = restrict_canonical(cylindrify(result, expected));
  return result;
}

bool decide(const Formula& sentence, const Environment& env) {
  const auto free = free_variables(sentence);
  if (!free.empty()) {
    std::string names;
    for (const auto& v : free) names += (names.empty() ? "" : ", ") + v;
    throw CompileError("sentence has free variables: " + names);
  }
  const Dfa a = compile(sentence, env);
  return a.accepting(a.initial());
}

Environment define_regex(const Environment& env, const std::string& name,
                         const std::string& regex) {
  if (env.contains(name)) throw CompileError("'" + name + "' is already defined");
  return env.with_relation(name, regex_to_dfa(regex_parse(regex), "x"));
}

Environment define(const Environment& env, const std::string& name, const Formula& f,
                   std::vector<std::string> params) {
  if (env.contains(name)) throw CompileError("'" + name + "' is already defined");
  if (called_names(f).count(name) > 0) {
    throw CompileError("definition of '" + name + "' refers to itself");
  }
  return env.with_relation(name, compile(f, env), std::move(params));
}

Dfao combine_to_dfao(const RelationAutomaton& predicate) {
  if (predicate.tracks().size() != 1) {
    throw CompileError("combine needs a one-variable predicate, got " +
                       std::to_string(predicate.tracks().size()));
  }
  std::vector<int> output(predicate.state_count());
  for (State q = 0; q < predicate.state_count(); ++q) output[q] = predicate.accepting(q) ? 1 : 0;
  return minimize(Dfao(predicate.tracks(), predicate.state_count(), predicate.initial(),
                       predicate.transitions(), std::move(output)));
}

std::vector<std::vector<Natural>> enumerate_accepted(const RelationAutomaton& r, Natural bound) {
  const std::size_t k = r.tracks().size();
  const std::size_t len = zeck_encode(bound).size();
  const std::size_t sigma = r.alphabet_size();
  const std::size_t n = r.state_count();

  // live[d][q]: some word of exactly d columns leads q to acceptance.
  std::vector<std::vector<bool>> live(len + 1, std::vector<bool>(n, false));
  for (State q = 0; q < n; ++q) live[0][q] = r.accepting(q);
  for (std::size_t d = 1; d <= len; ++d) {
    for (State q = 0; q < n; ++q) {
      for (Column c = 0; c < sigma && !live[d][q]; ++c) live[d][q] = live[d - 1][r.next(q, c)];
    }
  }

  std::set<std::vector<Natural>> found;
  std::vector<Column> word;
  auto visit = [&](auto&& self, State q) -> void {
    const std::size_t remaining = len - word.size();
    if (!live[remaining][q]) return;
    if (remaining == 0) {
      std::vector<Natural> tuple(k);
      for (std::size_t t = 0; t < k; ++t) {
        std::string digits;
        for (Column c : word) digits.push_back((c >> t & 1U) ? '1' : '0');
        tuple[t] = digits.empty() ? 0 : zeck_decode(digits);
      }
      if (std::all_of(tuple.begin(), tuple.end(), [&](Natural v) { return v <= bound; })) {
        found.insert(std::move(tuple));
      }
      return;
    }
    for (Column c = 0; c < sigma; ++c) {
      word.push_back(c);
      self(self, r.next(q, c));
      word.pop_back();
    }
  };
  visit(visit, r.initial());
  return {found.begin(), found.end()};
}

std::optional<Natural> synchronized_apply(const RelationAutomaton& r, Natural input,
                                          std::optional<std::string> input_track,
                                          std::size_t extra_padding) {
  if (r.tracks().size() != 2) {
    throw CompileError("synchronized_apply needs a two-track relation");
  }
  const int in_pos = input_track ? r.tracks().index_of(*input_track) : 1;
  if (in_pos < 0) throw CompileError("unknown input track '" + *input_track + "'");
  const int out_pos = 1 - in_pos;

  const std::string digits = zeck_encode(input).str();
  std::set<Natural> outputs;
  for (std::size_t len = digits.size(); len <= digits.size() + extra_padding; ++len) {
    const std::string padded = std::string(len - digits.size(), '0') + digits;
    auto column = [&](std::size_t i, Column out_bit) {
      const Column in_bit = padded[i] == '1' ? 1U : 0U;
      return (in_bit << in_pos) | (out_bit << out_pos);
    };
    // feasible[i][q]: from q at position i the rest of the input can be accepted.
    std::vector<std::vector<bool>> feasible(len + 1, std::vector<bool>(r.state_count()));
    for (State q = 0; q < r.state_count(); ++q) feasible[len][q] = r.accepting(q);
    for (std::size_t i = len; i-- > 0;) {
      for (State q = 0; q < r.state_count(); ++q) {
        feasible[i][q] = feasible[i + 1][r.next(q, column(i, 0))] ||
                         feasible[i + 1][r.next(q, column(i, 1))];
      }
    }
    std::string out_digits;
    auto search = [&](auto&& self, State q) -> void {
      const std::size_t i = out_digits.size();
      if (!feasible[i][q]) return;
      if (i == len) {
        outputs.insert(out_digits.empty() ? 0 : zeck_decode(out_digits));
        if (outputs.size() > 1) {
          throw FunctionalityError("relation maps " + std::to_string(input) +
                                   " to more than one value");
        }
        return;
      }
      for (Column b : {Column{0}, Column{1}}) {
        out_digits.push_back(b ? '1' : '0');
        self(self, r.next(q, column(i, b)));
        out_digits.pop_back();
      }
    };
    search(search, r.initial());
  }
  if (outputs.empty()) return std::nullopt;
  return *outputs.begin();
}

}  // namespace zeckit
