#pragma once

// The k-round counting game with grading p between two pointed
// interpretations, plus a concept enumerator for cross-checking it.
//
// One round: the spoiler picks a side, a tuple length m, and n <= p distinct
// m-tuples that start at the current point and share one role type. The
// duplicator answers with n distinct tuples of that role type starting at
// the other current point. The spoiler then picks a coordinate of any chosen
// tuple on either side and the duplicator picks the same coordinate of one
// of the tuples on the other side. Atomic concepts must agree at every
// position.

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "polydl/model.hpp"
#include "polydl/syntax.hpp"

namespace polydl {

/// {(S, sigma) : sigma(tuple) is in S, arity(S) = |tuple|}.
using RoleType = std::set<std::pair<std::string, Permutation>>;

RoleType role_type(const Tuple& tuple, const Interp& interp);
std::string to_string(const RoleType& type);

struct GameResult {
  bool duplicator_wins = false;
  /// A winning first move for the spoiler, or a note that the duplicator
  /// survives.
  std::string trace;
};

/// Exhaustive minimax with memoization. Symbols missing from one side are
/// read as empty; a role with different arities on the two sides is a
/// ValidationError. Requires p >= 1.
GameResult play_game(const Interp& a, Elem w, const Interp& b, Elem w2, std::size_t rounds,
                     std::size_t grading);
bool duplicator_wins(const Interp& a, Elem w, const Interp& b, Elem w2, std::size_t rounds,
                     std::size_t grading);

/// Partition of all elements of all `models` (indexed model by model, in
/// element order) into classes of the duplicator-wins relation at (k, p),
/// computed by refinement: two points are equivalent after r rounds iff
/// their atoms agree and, for each role type, the same choices of n <= p
/// tuples are available, where a choice is described by the set of
/// (r-1)-classes at each coordinate.
std::vector<std::size_t> game_classes(const std::vector<const Interp*>& models, std::size_t rounds,
                                      std::size_t grading);

/// Concepts of modal depth <= k with counts <= p: literals over the concept
/// names, top and bot, conjunctions of two literals over distinct names,
/// and, per extra level, every restriction >=j R^w.(...) with j <= p, one
/// word per distinct permutation and fillers from the level below, together
/// with its negation. Throws BudgetExceeded past `budget` concepts.
std::vector<Concept> enumerate_concepts(const Signature& sig, std::size_t depth,
                                        std::size_t grading, std::size_t budget = 100'000);

}  // namespace polydl
