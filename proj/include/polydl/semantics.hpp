#pragma once

// Model checking and a bounded satisfiability oracle.

#include <cstddef>
#include <cstdint>
#include <optional>

#include "polydl/model.hpp"
#include "polydl/syntax.hpp"

namespace polydl {

/// Extension of C in I. Shorthands are expanded first. Counting is over
/// distinct tuples (x,u2,..,un) of the permuted role relation.
/// Throws ValidationError for symbols missing from I or arity mismatches.
ElemSet check_concept(const Concept& c, const Interp& interp);

/// Extension of an ALCQI concept; every role used must be binary in I.
ElemSet check_alcqi(const AlcqiConcept& c, const Interp& interp);

struct OracleOptions {
  /// Search nodes before BudgetExceeded is thrown.
  std::uint64_t node_budget = 20'000'000;
  /// Retry sizes 1, 2, ... once a model is known to exist, so that the
  /// returned witness has the least possible domain.
  bool minimize = true;
};

struct OracleResult {
  bool sat = false;
  /// Domain d0..d{n-1}; C holds at d0. Interprets exactly the symbols of C.
  std::optional<Interp> witness;
  std::uint64_t nodes = 0;
};

/// Decides whether C holds at some element of some interpretation with at
/// most `max_domain` elements. Sound and complete for that bound: the
/// search builds only the tuples demanded by at-least restrictions, branches
/// on every truth value that a model could choose, and breaks symmetry by
/// introducing unused elements in a fixed order. Every returned witness is
/// re-checked with check_concept.
OracleResult oracle_sat(const Concept& c, std::size_t max_domain, const OracleOptions& opts = {});

/// Size of a tree model that suffices for C: 1 + b + ... + b^depth, where b
/// is the largest total of k*(arity-1) over the restrictions at any one
/// level (positive or not). Saturates at SIZE_MAX.
std::size_t domain_bound(const Concept& c);

}  // namespace polydl
