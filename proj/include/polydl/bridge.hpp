#pragma once

// Translations between ALC (binary roles, counts 1) and the algebra
// fragment built from atoms of arity <= 2 with unary negation and unary
// intersection.

#include <string>

#include "polydl/syntax.hpp"

namespace polydl {

/// Throws ValidationError for counts other than 1, permutation words, or
/// roles that are not binary. Shorthands are expanded first.
GraTerm to_gra(const Concept& c);
/// An atomic role translates to itself.
GraTerm to_gra_role(const std::string& role);

/// S either yields a concept or, for a bare binary atom, a role.
struct AlcTranslation {
  bool is_role = false;
  Concept value = Concept::top();  // when !is_role
  std::string role;                // when is_role
};

/// Throws ValidationError for operators other than neg1/cap1, atoms of
/// arity 0 or > 2, or atoms missing from `sig`.
AlcTranslation to_alc(const GraTerm& t, const Signature& sig);

}  // namespace polydl
