#pragma once

// Tableau decision procedure for ALCQI concept satisfiability (no TBox)
// and the polyadic pipeline on top of it.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "polydl/model.hpp"
#include "polydl/syntax.hpp"

namespace polydl {

enum class NnfKind { Top, Bot, Atom, NegAtom, And, Or, AtLeast, AtMost };

/// ALCQI concept in negation normal form. AtMost k means "not >= k+1".
class NnfConcept {
 public:
  static NnfConcept constant(NnfKind kind);
  static NnfConcept atom(std::string name, bool negated);
  static NnfConcept binary(NnfKind kind, NnfConcept l, NnfConcept r);
  static NnfConcept restriction(NnfKind kind, Count k, BinRole role, NnfConcept filler);

  NnfKind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  const Count& count() const { return node_->count; }
  const BinRole& role() const { return node_->role; }
  const std::vector<NnfConcept>& children() const { return node_->children; }

  friend bool operator==(const NnfConcept& a, const NnfConcept& b);

 private:
  struct Node {
    NnfKind kind = NnfKind::Top;
    std::string name;
    Count count{0};
    BinRole role;
    std::vector<NnfConcept> children;
  };
  explicit NnfConcept(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

NnfConcept nnf(const AlcqiConcept& c);
/// The same concept with Or and AtMost spelled through negation.
AlcqiConcept from_nnf(const NnfConcept& c);
std::string to_string(const NnfConcept& c);

struct TableauOptions {
  /// Largest at-least count the procedure will materialize.
  std::uint64_t k_cap = 64;
  /// Rule applications (over all branches) before BudgetExceeded.
  std::uint64_t step_budget = 5'000'000;
  /// 0 keeps the fixed rule order; other values shuffle the choice among
  /// applicable rules of the same priority.
  std::uint64_t seed = 0;
};

struct AlcqiResult {
  bool sat = false;
  /// Completion tree with elements n0 (root), n1, ...; interprets every
  /// symbol of the input concept.
  std::optional<Interp> witness;
  std::uint64_t steps = 0;
};

/// Throws BudgetExceeded when a count exceeds the k-cap or the step budget
/// runs out. Every witness is re-checked with check_alcqi.
AlcqiResult alcqi_sat(const AlcqiConcept& c, const TableauOptions& opts = {});

struct AlcqpResult {
  bool sat = false;
  /// Polyadic witness; C holds at `root`.
  std::optional<Interp> witness;
  std::string root;
  /// The ALCQI witness it was extracted from.
  std::optional<Interp> binary_witness;
  std::uint64_t steps = 0;
};

/// Decides C through @dom and translate(C); a sat verdict is unravelled at
/// the tableau root to the modal depth of the translation and extracted
/// back to a polyadic model, which is re-checked against C.
AlcqpResult alcqp_sat(const Concept& c, const TableauOptions& opts = {});

}  // namespace polydl
