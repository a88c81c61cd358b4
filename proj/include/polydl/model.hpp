#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "polydl/syntax.hpp"

namespace polydl {

/// Index of a domain element inside one Interp.
using Elem = std::uint32_t;
using Tuple = std::vector<Elem>;

/// Relation with an explicit arity: the empty binary and the empty ternary
/// relation are different values.
class ArityRel {
 public:
  explicit ArityRel(std::size_t arity = 0) : arity_(arity) {}
  ArityRel(std::size_t arity, std::set<Tuple> tuples);

  std::size_t arity() const { return arity_; }
  const std::set<Tuple>& tuples() const { return tuples_; }
  std::size_t size() const { return tuples_.size(); }
  bool empty() const { return tuples_.empty(); }
  bool contains(const Tuple& t) const { return tuples_.count(t) != 0; }

  /// Throws std::invalid_argument if the tuple length differs from arity().
  void insert(Tuple t);
  void erase(const Tuple& t) { tuples_.erase(t); }

  auto begin() const { return tuples_.begin(); }
  auto end() const { return tuples_.end(); }

  friend bool operator==(const ArityRel&, const ArityRel&) = default;

 private:
  std::size_t arity_;
  std::set<Tuple> tuples_;
};

/// Subset of a domain {0..n-1}.
class ElemSet {
 public:
  ElemSet() = default;
  explicit ElemSet(std::size_t domain_size, bool full = false) : bits_(domain_size, full) {}

  std::size_t domain_size() const { return bits_.size(); }
  bool contains(Elem e) const { return e < bits_.size() && bits_[e]; }
  void insert(Elem e) { bits_.at(e) = true; }
  void erase(Elem e) { bits_.at(e) = false; }
  std::size_t count() const;
  bool empty() const { return count() == 0; }
  std::vector<Elem> elements() const;

  ElemSet complement() const;
  ElemSet operator&(const ElemSet& o) const;
  ElemSet operator|(const ElemSet& o) const;
  bool subset_of(const ElemSet& o) const;

  friend bool operator==(const ElemSet&, const ElemSet&) = default;

 private:
  std::vector<bool> bits_;
};

/// Finite interpretation. Element ids are opaque names; their order is the
/// insertion order and only matters for printing. Top and bottom are built
/// in and never stored.
class Interp {
 public:
  Interp() = default;

  std::size_t domain_size() const { return names_.size(); }
  const std::vector<std::string>& element_names() const { return names_; }
  const std::string& name(Elem e) const { return names_.at(e); }
  std::optional<Elem> find(const std::string& name) const;
  /// Throws ValidationError when `name` is already present.
  Elem add_element(const std::string& name);

  bool has_concept(const std::string& name) const { return concepts_.count(name) != 0; }
  bool has_role(const std::string& name) const { return roles_.count(name) != 0; }
  /// Throws ValidationError when not interpreted.
  const ElemSet& concept_ext(const std::string& name) const;
  const ArityRel& role_ext(const std::string& name) const;

  /// Declares (or replaces) a concept / role extension.
  void set_concept(const std::string& name, ElemSet ext);
  void set_role(const std::string& name, ArityRel ext);
  /// Empty extensions for every symbol of `sig` not yet interpreted.
  void declare(const Signature& sig);

  void add_to_concept(const std::string& name, Elem e);
  void add_tuple(const std::string& role, Tuple t);

  const std::map<std::string, ElemSet>& concepts() const { return concepts_; }
  const std::map<std::string, ArityRel>& roles() const { return roles_; }
  Signature signature() const;

  /// Checks every structural invariant; throws ValidationError.
  void validate() const;

  /// Same interpretation restricted to the symbols of `sig` (domain kept).
  Interp restricted_to(const Signature& sig) const;

  friend bool operator==(const Interp&, const Interp&) = default;

 private:
  std::vector<std::string> names_;
  std::map<std::string, Elem> index_;
  std::map<std::string, ElemSet> concepts_;
  std::map<std::string, ArityRel> roles_;
};

/// True when both interpretations have the same element names and the same
/// symbol extensions, irrespective of element order.
bool same_structure(const Interp& a, const Interp& b);

/// Renames elements: `g[e]` is the new position of element e. Names follow
/// their elements, so the result differs from the input only in order.
Interp permute_elements(const Interp& in, const std::vector<Elem>& g);

// --- JSON

Interp interp_from_json(const std::string& text);
std::string interp_to_json(const Interp& interp, int indent = 2);
Interp load_interp(const std::filesystem::path& path);
void save_interp(const Interp& interp, const std::filesystem::path& path);

// --- random structures for property tests

/// Domain d0..d{size-1}; each concept membership and each candidate tuple of
/// every role in `sig` is included independently with probability `density`.
/// Deterministic for a fixed seed.
Interp random_interp(std::uint64_t seed, std::size_t domain_size, const Signature& sig,
                     double density);

}  // namespace polydl
