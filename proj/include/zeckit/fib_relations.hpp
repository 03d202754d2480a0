#pragma once

#include <string>

#include "zeckit/automata.hpp"
#include "zeckit/numeration.hpp"

namespace zeckit {

/// A relation automaton is a Dfa whose every track carries a canonical
/// Zeckendorf reading, possibly with leading zeros. Acceptance depends only
/// on the tuple of represented values.
using RelationAutomaton = Dfa;

enum class RelOp { Eq, Ne, Lt, Le, Gt, Ge };

/// Bound on the carry coefficients explored by the adder construction.
inline constexpr int kAdderCarryBound = 8;

/// No two adjacent ones on `track` (leading zeros allowed).
RelationAutomaton canonical_rel(const std::string& track);

/// Canonicity of every track in `tracks`.
RelationAutomaton canonical_all(const TrackSet& tracks);

/// Intersects `a` with canonicity of all its tracks and minimizes.
RelationAutomaton restrict_canonical(const Dfa& a);

RelationAutomaton eq_rel(const std::string& x, const std::string& y);
RelationAutomaton lt_rel(const std::string& x, const std::string& y);

/// value(x) op value(y), by msd-first lexicographic comparison.
RelationAutomaton compare_rel(const std::string& x, RelOp op, const std::string& y);

/// value(x) + value(y) = value(z). Tracks may coincide.
RelationAutomaton add_rel(const std::string& x, const std::string& y, const std::string& z);

/// value(x) = c.
RelationAutomaton const_rel(const std::string& x, Natural c);

/// k * value(x) = value(y) for 1 <= k <= 4.
RelationAutomaton const_mul_rel(int k, const std::string& x, const std::string& y);

/// Reading matches 0*1(00)* (x = F_2i for i >= 1).
RelationAutomaton isevenfib_rel(const std::string& x);
/// Reading matches 0*10(00)* (x = F_2i+1 for i >= 1).
RelationAutomaton isoddfib_rel(const std::string& x);

/// (x, y) = (F_{2i-1}, F_{2i}) for some i >= 2.
RelationAutomaton fiboddeven_rel(const std::string& x, const std::string& y);
/// (x, y) = (F_{2i}, F_{2i+1}) for some i >= 1.
RelationAutomaton fibevenodd_rel(const std::string& x, const std::string& y);

/// Existential projection of several tracks, innermost last.
RelationAutomaton exists(RelationAutomaton a, const std::vector<std::string>& tracks);

/// Conjunction.
RelationAutomaton both(const RelationAutomaton& a, const RelationAutomaton& b);

/// Membership of a value tuple given in track order, zero-padded by
/// `extra_zeros` leading columns beyond the longest encoding.
bool accepts_values(const Dfa& a, std::span<const Natural> values, std::size_t extra_zeros = 0);
bool accepts_values(const Dfa& a, std::initializer_list<Natural> values,
                    std::size_t extra_zeros = 0);

}  // namespace zeckit
