#pragma once

// Reification of polyadic roles: the concept translation into ALCQI and
// the two model transformations that go with it. Each n-tuple of a role R
// becomes a lantern element labelled @L_R whose @F1..@Fn successors are the
// tuple's coordinates; @dom marks the original domain.

#include <cstddef>
#include <map>
#include <set>
#include <string>

#include "polydl/model.hpp"
#include "polydl/syntax.hpp"

namespace polydl {

struct ReifySignature {
  /// Source roles with their arities.
  std::map<std::string, std::size_t> roles;
  /// Source concept names.
  std::set<std::string> concepts;
  std::size_t max_arity = 0;

  static ReifySignature of(const Signature& sig);
  static ReifySignature of(const Concept& c) { return of(signature_of(c)); }

  static std::string dom() { return "@dom"; }
  static std::string label(const std::string& role) { return "@L_" + role; }
  /// 1-based.
  static std::string f(std::size_t i) { return "@F" + std::to_string(i); }

  /// The binary signature of reified models.
  Signature target() const;
};

/// (=1 @F1.top and ... and =1 @Fn.top) and (A @F1.@dom and ... and A @Fn.@dom),
/// with the shorthands expanded. Throws std::invalid_argument for n < 2.
AlcqiConcept build_outdeg(std::size_t n);

/// @L_R and not @L_S for every other source role S, in name order.
/// Throws ValidationError when R is not a source role.
AlcqiConcept build_chi(const std::string& role, const ReifySignature& sig);

/// The translation. Shorthands in C are expanded first. Every restriction,
/// binary ones included, goes through a lantern. Callers conjoin @dom.
AlcqiConcept translate(const Concept& c, const ReifySignature& sig);
AlcqiConcept translate(const Concept& c);

/// @dom and translate(c).
AlcqiConcept translate_with_dom(const Concept& c);

/// One fresh lantern per role tuple, named "@R(a,b,...)". Concept names of
/// I are copied; the source roles are replaced by @F1..@Fm.
Interp lanternize(const Interp& interp, const ReifySignature& sig);

/// Inverse direction: domain @dom, concepts restricted to @dom, and
/// (u1..un) in R iff some lantern in (not @dom and chi_R and Outdeg_n) has
/// @Fi-successor ui for every i. Element names are kept.
/// Throws ValidationError when @dom is empty.
Interp extract_polyadic(const Interp& binary, const ReifySignature& sig);

}  // namespace polydl
