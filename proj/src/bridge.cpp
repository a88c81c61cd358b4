#include "polydl/bridge.hpp"

#include "polydl/error.hpp"

namespace polydl {
namespace {

GraTerm to_gra_core(const Concept& c) {
  switch (c.kind()) {
    case ConceptKind::Top:
      return GraTerm::top();
    case ConceptKind::Bot:
      return GraTerm::bot();
    case ConceptKind::Atomic:
      return GraTerm::atom(c.name());
    case ConceptKind::Not:
      return GraTerm::unary(TermKind::Neg1, to_gra_core(c.operand()));
    case ConceptKind::And:
      return GraTerm::binary(TermKind::Cap1, to_gra_core(c.lhs()), to_gra_core(c.rhs()));
    case ConceptKind::AtLeast:
      break;
    default:
      throw std::logic_error("shorthand reached to_gra");
  }
  if (c.count() != Count(1)) throw ValidationError("not ALC: count " + c.count().str());
  if (c.role().arity != 2) throw ValidationError("not ALC: role '" + c.role().name + "' is not binary");
  if (!c.role().word.empty()) throw ValidationError("not ALC: permutation word on '" + c.role().name + "'");
  return GraTerm::binary(TermKind::Cap1, GraTerm::atom(c.role().name), to_gra_core(c.args()[0]));
}

std::size_t atom_arity(const GraTerm& t, const Signature& sig) {
  const std::size_t n = arity_of_term(t, sig);
  if (n == 0 || n > 2) {
    throw ValidationError("atom '" + t.name() + "' has arity " + std::to_string(n) +
                          "; only arities 1 and 2 are allowed");
  }
  return n;
}

// Arity inside the fragment: 1 or 2.
std::size_t frag_arity(const GraTerm& t, const Signature& sig) {
  switch (t.kind()) {
    case TermKind::Atom:
      return atom_arity(t, sig);
    case TermKind::Top:
    case TermKind::Bot:
    case TermKind::Neg1:
    case TermKind::Cap1:
      return 1;
    default:
      throw ValidationError("operator outside neg1/cap1 in '" + to_string(t) + "'");
  }
}

}  // namespace

GraTerm to_gra(const Concept& c) { return to_gra_core(is_core(c) ? c : expand_shorthand(c)); }

GraTerm to_gra_role(const std::string& role) { return GraTerm::atom(role); }

AlcTranslation to_alc(const GraTerm& t, const Signature& sig) {
  AlcTranslation out;
  auto concept_of = [&](const GraTerm& sub) {
    AlcTranslation r = to_alc(sub, sig);
    if (r.is_role) throw std::logic_error("binary term where a unary one was expected");
    return r.value;
  };
  switch (t.kind()) {
    case TermKind::Atom:
      if (atom_arity(t, sig) == 2) {
        out.is_role = true;
        out.role = t.name();
      } else {
        out.value = Concept::atomic(t.name());
      }
      return out;
    case TermKind::Top:
      out.value = Concept::top();
      return out;
    case TermKind::Bot:
      out.value = Concept::bot();
      return out;
    case TermKind::Neg1:
      out.value = frag_arity(t.operand(), sig) == 1 ? Concept::negation(concept_of(t.operand()))
                                                    : Concept::bot();
      return out;
    case TermKind::Cap1: {
      const GraTerm& a = t.operand(0);
      const GraTerm& b = t.operand(1);
      const std::size_t na = frag_arity(a, sig), nb = frag_arity(b, sig);
      if (na == 1 && nb == 1) {
        out.value = Concept::conjunction(concept_of(a), concept_of(b));
      } else if (na == 2 && nb == 2) {
        out.value = Concept::bot();
      } else {
        const GraTerm& role = na == 2 ? a : b;
        const GraTerm& filler = na == 2 ? b : a;
        // Every binary term of the fragment is an atom.
        if (role.kind() != TermKind::Atom) throw std::logic_error("binary operand is not an atom");
        out.value = Concept::restriction(ConceptKind::Exists, Count(1), RoleExpr{role.name(), 2, {}},
                                         {concept_of(filler)});
      }
      return out;
    }
    default:
      throw ValidationError("operator outside neg1/cap1 in '" + to_string(t) + "'");
  }
}

}  // namespace polydl
