#pragma once

// Abstract syntax, concrete grammar and printers for the three term
// languages handled by the toolkit:
//
//   * ALCQP(p,s) concepts   (Concept, roles are RoleExpr: name^word)
//   * ALCQI concepts        (AlcqiConcept, roles are BinRole: F or F^-)
//   * relation-algebra terms (GraTerm)
//
// Concepts share one node layout (BasicConcept<Role>). Sugared forms
// (E, A, <k, =k) are kept in the tree so that printing a parsed concept
// reproduces it; expand_shorthand() lowers them to the core constructors.

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "polydl/count.hpp"

namespace polydl {

// ---------------------------------------------------------------------------
// Signatures

/// Concept names plus role names with their arities. Concept names double as
/// unary relation symbols when evaluating algebra terms.
struct Signature {
  std::set<std::string> concepts;
  std::map<std::string, std::size_t> roles;

  /// Arity of a relation symbol: 1 for concept names, the declared arity for
  /// roles, nullopt when undeclared.
  std::optional<std::size_t> arity_of(const std::string& symbol) const;

  /// Union; throws ValidationError on a role declared with two arities or a
  /// name used both as concept and role.
  void merge(const Signature& other);

  friend bool operator==(const Signature&, const Signature&) = default;
};

bool is_identifier(std::string_view name);
bool is_generated_name(std::string_view name);

// ---------------------------------------------------------------------------
// Permutation words

/// A word over {p, s}, applied left to right to a role.
struct PermWord {
  std::string ops;

  PermWord() = default;
  explicit PermWord(std::string word);

  bool empty() const { return ops.empty(); }
  std::size_t size() const { return ops.size(); }
  PermWord then(const PermWord& next) const { return PermWord(ops + next.ops); }

  friend bool operator==(const PermWord&, const PermWord&) = default;
  friend auto operator<=>(const PermWord&, const PermWord&) = default;
};

/// Coordinate map of a rearrangement of n-tuples. source(i) is the input
/// coordinate (0-based) that lands at output position i.
class Permutation {
 public:
  Permutation() = default;
  static Permutation identity(std::size_t n);
  /// Throws std::invalid_argument unless `sources` is a bijection on 0..n-1.
  static Permutation from_sources(std::vector<std::size_t> sources);

  std::size_t size() const { return source_.size(); }
  std::size_t source(std::size_t output) const { return source_[output]; }
  const std::vector<std::size_t>& sources() const { return source_; }

  /// out[i] = in[source(i)].
  template <class Tuple>
  Tuple apply(const Tuple& in) const {
    Tuple out(in.size());
    for (std::size_t i = 0; i < source_.size(); ++i) out[i] = in[source_[i]];
    return out;
  }

  /// The rearrangement that first applies *this and then `next`.
  Permutation then(const Permutation& next) const;
  Permutation inverse() const;
  bool is_identity() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  explicit Permutation(std::vector<std::size_t> s) : source_(std::move(s)) {}
  std::vector<std::size_t> source_;
};

/// Coordinate map realized by applying `word` to an n-ary relation. Both
/// operators are the identity when n < 2.
Permutation perm_of_word(const PermWord& word, std::size_t n);

/// Some word realizing `perm`: a shortest one, preferring s over p at
/// each position.
PermWord word_of_perm(const Permutation& perm);

// ---------------------------------------------------------------------------
// Roles

/// Polyadic role: a role name of arity >= 2 followed by a permutation word.
struct RoleExpr {
  std::string name;
  std::size_t arity = 2;
  PermWord word;

  Permutation permutation() const { return perm_of_word(word, arity); }

  friend bool operator==(const RoleExpr&, const RoleExpr&) = default;
  friend auto operator<=>(const RoleExpr&, const RoleExpr&) = default;
};

/// Binary role or its inverse.
struct BinRole {
  std::string name;
  bool inverse = false;

  BinRole flipped() const { return {name, !inverse}; }

  friend bool operator==(const BinRole&, const BinRole&) = default;
  friend auto operator<=>(const BinRole&, const BinRole&) = default;
};

// ---------------------------------------------------------------------------
// Concepts

enum class ConceptKind {
  Top,
  Bot,
  Atomic,
  Not,
  And,
  AtLeast,  // >=k R.(C2,...,Cn)
  // shorthands
  Exists,   // E R.(...)   == >=1
  Less,     // <k R.(...)  == not >=k
  Forall,   // A R.(...)   == not >=1 R.(not C2, ..., not Cn)
  Exactly,  // =k R.(...)  == >=k and not >=k+1
};

template <class Role>
class BasicConcept {
 public:
  using role_type = Role;

  static BasicConcept top() { return make(ConceptKind::Top); }
  static BasicConcept bot() { return make(ConceptKind::Bot); }
  static BasicConcept atomic(std::string name) {
    Node n;
    n.kind = ConceptKind::Atomic;
    n.name = std::move(name);
    return BasicConcept(std::make_shared<const Node>(std::move(n)));
  }
  static BasicConcept negation(BasicConcept c) {
    Node n;
    n.kind = ConceptKind::Not;
    n.children.push_back(std::move(c));
    return BasicConcept(std::make_shared<const Node>(std::move(n)));
  }
  static BasicConcept conjunction(BasicConcept l, BasicConcept r) {
    Node n;
    n.kind = ConceptKind::And;
    n.children.push_back(std::move(l));
    n.children.push_back(std::move(r));
    return BasicConcept(std::make_shared<const Node>(std::move(n)));
  }
  /// Left-nested conjunction of a nonempty list.
  static BasicConcept conjunction(const std::vector<BasicConcept>& parts) {
    BasicConcept acc = parts.at(0);
    for (std::size_t i = 1; i < parts.size(); ++i) acc = conjunction(acc, parts[i]);
    return acc;
  }
  /// Any of the five restriction kinds. The count is ignored (stored as 1)
  /// for Exists and Forall.
  static BasicConcept restriction(ConceptKind kind, Count k, Role role,
                                  std::vector<BasicConcept> args) {
    Node n;
    n.kind = kind;
    n.count = (kind == ConceptKind::Exists || kind == ConceptKind::Forall) ? Count(1) : std::move(k);
    n.role = std::move(role);
    n.children = std::move(args);
    return BasicConcept(std::make_shared<const Node>(std::move(n)));
  }
  static BasicConcept at_least(Count k, Role role, std::vector<BasicConcept> args) {
    return restriction(ConceptKind::AtLeast, std::move(k), std::move(role), std::move(args));
  }

  ConceptKind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  const BasicConcept& operand() const { return node_->children.at(0); }
  const BasicConcept& lhs() const { return node_->children.at(0); }
  const BasicConcept& rhs() const { return node_->children.at(1); }
  const Count& count() const { return node_->count; }
  const Role& role() const { return node_->role; }
  const std::vector<BasicConcept>& args() const { return node_->children; }
  bool is_restriction() const { return node_->kind >= ConceptKind::AtLeast; }

  /// Identity of the shared node, for memoization.
  const void* id() const { return node_.get(); }

  friend bool operator==(const BasicConcept& a, const BasicConcept& b) {
    if (a.node_ == b.node_) return true;
    const Node& x = *a.node_;
    const Node& y = *b.node_;
    return x.kind == y.kind && x.name == y.name && x.count == y.count && x.role == y.role &&
           x.children == y.children;
  }

 private:
  struct Node {
    ConceptKind kind = ConceptKind::Top;
    std::string name;
    Count count{1};
    Role role{};
    std::vector<BasicConcept> children;
  };

  static BasicConcept make(ConceptKind kind) {
    Node n;
    n.kind = kind;
    return BasicConcept(std::make_shared<const Node>(std::move(n)));
  }
  explicit BasicConcept(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

using Concept = BasicConcept<RoleExpr>;
using AlcqiConcept = BasicConcept<BinRole>;

/// Number of AST nodes (roles and counts are not counted separately).
template <class Role>
std::size_t concept_size(const BasicConcept<Role>& c) {
  std::size_t n = 1;
  for (const auto& child : c.args()) n += concept_size(child);
  return n;
}

/// Maximal nesting of restrictions.
template <class Role>
std::size_t modal_depth(const BasicConcept<Role>& c) {
  std::size_t inner = 0;
  for (const auto& child : c.args()) inner = std::max(inner, modal_depth(child));
  return inner + (c.is_restriction() ? 1 : 0);
}

/// True when only Top, Bot, Atomic, Not, And and AtLeast occur.
template <class Role>
bool is_core(const BasicConcept<Role>& c) {
  switch (c.kind()) {
    case ConceptKind::Exists:
    case ConceptKind::Less:
    case ConceptKind::Forall:
    case ConceptKind::Exactly:
      return false;
    default:
      break;
  }
  for (const auto& child : c.args()) {
    if (!is_core(child)) return false;
  }
  return true;
}

/// Rewrites E, <k, A and =k into core constructors.
template <class Role>
BasicConcept<Role> expand_shorthand(const BasicConcept<Role>& c) {
  using C = BasicConcept<Role>;
  switch (c.kind()) {
    case ConceptKind::Top:
    case ConceptKind::Bot:
    case ConceptKind::Atomic:
      return c;
    case ConceptKind::Not:
      return C::negation(expand_shorthand(c.operand()));
    case ConceptKind::And:
      return C::conjunction(expand_shorthand(c.lhs()), expand_shorthand(c.rhs()));
    default:
      break;
  }
  std::vector<C> args;
  args.reserve(c.args().size());
  for (const auto& a : c.args()) args.push_back(expand_shorthand(a));
  switch (c.kind()) {
    case ConceptKind::AtLeast:
      return C::at_least(c.count(), c.role(), std::move(args));
    case ConceptKind::Exists:
      return C::at_least(Count(1), c.role(), std::move(args));
    case ConceptKind::Less:
      return C::negation(C::at_least(c.count(), c.role(), std::move(args)));
    case ConceptKind::Forall: {
      for (auto& a : args) a = C::negation(a);
      return C::negation(C::at_least(Count(1), c.role(), std::move(args)));
    }
    case ConceptKind::Exactly: {
      C lower = C::at_least(c.count(), c.role(), args);
      C upper = C::negation(C::at_least(c.count().succ(), c.role(), std::move(args)));
      return C::conjunction(lower, upper);
    }
    default:
      return c;
  }
}

/// Concept names and roles (with arities) occurring in a concept.
Signature signature_of(const Concept& c);
/// Concept names and binary role names occurring in an ALCQI concept.
Signature signature_of(const AlcqiConcept& c);

/// Parses ALCQP(p,s) text. With a signature, every role must be declared
/// with arity |args| + 1; without one, arities are inferred and must agree
/// across occurrences. Names starting with '@' are rejected.
Concept parse_concept(std::string_view text, const Signature* signature = nullptr);
/// Parses ALCQI text; roles are `F` or `F^-`, each restriction takes one
/// argument, and generated '@' names are accepted.
AlcqiConcept parse_alcqi(std::string_view text);

std::string to_string(const Concept& c);
std::string to_string(const AlcqiConcept& c);
std::string to_string(const RoleExpr& r);
std::string to_string(const BinRole& r);

// ---------------------------------------------------------------------------
// Relation-algebra terms

enum class TermKind {
  Atom,
  Top,    // built-in unary: whole domain
  Bot,    // built-in unary: empty
  Eq,     // e
  P,      // cyclic permutation
  S,      // swap
  I,      // identification
  Neg,    // complement
  Join,   // cartesian product
  Ex,     // projection of the last coordinate
  DotCap, // suffix intersection
  Ex1,    // one-dimensional projection
  Cap1,   // unary intersection
  Neg1,   // unary negation
};

class GraTerm {
 public:
  static GraTerm atom(std::string name);
  static GraTerm top();
  static GraTerm bot();
  static GraTerm eq();
  static GraTerm unary(TermKind kind, GraTerm operand);
  static GraTerm binary(TermKind kind, GraTerm lhs, GraTerm rhs);

  TermKind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  const std::vector<GraTerm>& operands() const { return node_->operands; }
  const GraTerm& operand(std::size_t i = 0) const { return node_->operands.at(i); }

  friend bool operator==(const GraTerm& a, const GraTerm& b);

 private:
  struct Node {
    TermKind kind = TermKind::Atom;
    std::string name;
    std::vector<GraTerm> operands;
  };
  explicit GraTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Number of AST nodes.
std::size_t term_size(const GraTerm& t);

/// Static arity. Throws ValidationError for atoms missing from `signature`.
std::size_t arity_of_term(const GraTerm& t, const Signature& signature);

/// Parses term text (`e`, `top`, `bot`, `p(t)`, `s(t)`, `I(t)`, `neg(t)`,
/// `join(t,t)`, `ex(t)`, `dotcap(t,t)`, `ex1(t)`, `cap1(t,t)`, `neg1(t)`,
/// atom names). With a signature, atoms must be declared.
GraTerm parse_term(std::string_view text, const Signature* signature = nullptr);

std::string to_string(const GraTerm& t);

}  // namespace polydl
