#pragma once

// Relation operators over a finite domain and bottom-up evaluation of
// algebra terms.

#include <cstddef>

#include "polydl/model.hpp"
#include "polydl/syntax.hpp"

namespace polydl {

ArityRel apply_p(const ArityRel& r);
ArityRel apply_s(const ArityRel& r);
ArityRel apply_I(const ArityRel& r);
/// A^k minus r. Throws BudgetExceeded when |A|^k exceeds `budget`.
ArityRel complement(const ArityRel& r, std::size_t domain_size, std::size_t budget = 1'000'000);
ArityRel join(const ArityRel& r, const ArityRel& s);
/// The existential operator: drops the last coordinate.
ArityRel project(const ArityRel& r);
ArityRel equality_rel(std::size_t domain_size);
/// Tuples of arity max(k,l) whose length-k suffix is in r and whose
/// length-l suffix is in s.
/// Never enumerates the domain: the result is a subset of the longer operand.
ArityRel suffix_intersect(const ArityRel& r, const ArityRel& s, std::size_t domain_size);
ArityRel project1(const ArityRel& r);
ArityRel cap1(const ArityRel& r, const ArityRel& s, std::size_t domain_size);
ArityRel neg1(const ArityRel& r, std::size_t domain_size);

/// The unary relation holding the members of `s`.
ArityRel unary_rel(const ElemSet& s);
/// Members of a unary relation.
ElemSet elem_set(const ArityRel& r, std::size_t domain_size);

struct EvalEnv {
  const Interp* interp = nullptr;
  Signature signature;
  /// Upper bound on the size of any materialized intermediate relation.
  std::size_t tuple_budget = 1'000'000;

  explicit EvalEnv(const Interp& i, std::size_t budget = 1'000'000)
      : interp(&i), signature(i.signature()), tuple_budget(budget) {}
};

/// Throws ValidationError for atoms the interpretation does not interpret,
/// BudgetExceeded when an intermediate result would exceed the budget.
ArityRel eval_term(const GraTerm& t, const EvalEnv& env);

}  // namespace polydl
