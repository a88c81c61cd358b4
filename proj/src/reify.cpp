#include "polydl/reify.hpp"

#include <stdexcept>

#include "polydl/error.hpp"
#include "polydl/semantics.hpp"

namespace polydl {

using AC = AlcqiConcept;

ReifySignature ReifySignature::of(const Signature& sig) {
  ReifySignature out;
  out.roles = sig.roles;
  out.concepts = sig.concepts;
  for (const auto& [_, n] : sig.roles) out.max_arity = std::max(out.max_arity, n);
  return out;
}

Signature ReifySignature::target() const {
  Signature out;
  out.concepts = concepts;
  out.concepts.insert(dom());
  for (const auto& [r, _] : roles) out.concepts.insert(label(r));
  for (std::size_t i = 1; i <= max_arity; ++i) out.roles.emplace(f(i), 2);
  return out;
}

AlcqiConcept build_outdeg(std::size_t n) {
  if (n < 2) throw std::invalid_argument("Outdeg needs n >= 2");
  std::vector<AC> exactly, into_dom;
  for (std::size_t i = 1; i <= n; ++i) {
    const BinRole fi{ReifySignature::f(i), false};
    exactly.push_back(AC::restriction(ConceptKind::Exactly, Count(1), fi, {AC::top()}));
    into_dom.push_back(
        AC::restriction(ConceptKind::Forall, Count(1), fi, {AC::atomic(ReifySignature::dom())}));
  }
  return expand_shorthand(AC::conjunction(AC::conjunction(exactly), AC::conjunction(into_dom)));
}

AlcqiConcept build_chi(const std::string& role, const ReifySignature& sig) {
  if (!sig.roles.count(role)) throw ValidationError("role '" + role + "' is not a source role");
  std::vector<AC> parts{AC::atomic(ReifySignature::label(role))};
  for (const auto& [other, _] : sig.roles) {
    if (other != role) parts.push_back(AC::negation(AC::atomic(ReifySignature::label(other))));
  }
  return AC::conjunction(parts);
}

namespace {

AC translate_core(const Concept& c, const ReifySignature& sig) {
  switch (c.kind()) {
    case ConceptKind::Top:
      return AC::top();
    case ConceptKind::Bot:
      return AC::bot();
    case ConceptKind::Atomic:
      return AC::atomic(c.name());
    case ConceptKind::Not:
      return AC::negation(translate_core(c.operand(), sig));
    case ConceptKind::And:
      return AC::conjunction(translate_core(c.lhs(), sig), translate_core(c.rhs(), sig));
    case ConceptKind::AtLeast:
      break;
    default:
      throw std::logic_error("shorthand reached the translation");
  }
  const RoleExpr& role = c.role();
  const Permutation pi = role.permutation();
  std::vector<AC> parts{AC::negation(AC::atomic(ReifySignature::dom())), build_chi(role.name, sig),
                        build_outdeg(role.arity)};
  for (std::size_t i = 1; i < role.arity; ++i) {
    const BinRole f{ReifySignature::f(pi.source(i) + 1), false};
    parts.push_back(AC::at_least(Count(1), f, {translate_core(c.args()[i - 1], sig)}));
  }
  const BinRole back{ReifySignature::f(pi.source(0) + 1), true};
  return AC::at_least(c.count(), back, {AC::conjunction(parts)});
}

}  // namespace

AlcqiConcept translate(const Concept& c, const ReifySignature& sig) {
  return translate_core(is_core(c) ? c : expand_shorthand(c), sig);
}

AlcqiConcept translate(const Concept& c) { return translate(c, ReifySignature::of(c)); }

AlcqiConcept translate_with_dom(const Concept& c) {
  return AC::conjunction(AC::atomic(ReifySignature::dom()), translate(c));
}

Interp lanternize(const Interp& interp, const ReifySignature& sig) {
  Interp out;
  for (const auto& name : interp.element_names()) out.add_element(name);
  out.declare(sig.target());
  for (const auto& [c, ext] : interp.concepts()) out.set_concept(c, ext);
  for (Elem e = 0; e < interp.domain_size(); ++e) out.add_to_concept(ReifySignature::dom(), e);
  for (const auto& [role, arity] : sig.roles) {
    const ArityRel& rel = interp.role_ext(role);
    if (rel.arity() != arity) throw ValidationError("arity mismatch for role '" + role + "'");
    for (const auto& t : rel) {
      std::string name = "@" + role + "(";
      for (std::size_t i = 0; i < t.size(); ++i) name += (i ? "," : "") + interp.name(t[i]);
      name += ")";
      while (out.find(name)) name += "'";
      const Elem lantern = out.add_element(name);
      out.add_to_concept(ReifySignature::label(role), lantern);
      for (std::size_t i = 0; i < t.size(); ++i) out.add_tuple(ReifySignature::f(i + 1), {lantern, t[i]});
    }
  }
  return out;
}

Interp extract_polyadic(const Interp& binary, const ReifySignature& sig) {
  // Symbols a witness never mentions are read as empty.
  Interp J = binary;
  J.declare(sig.target());
  const ElemSet dom = J.concept_ext(ReifySignature::dom());
  if (dom.empty()) throw ValidationError("@dom is empty; nothing to extract");

  Interp out;
  std::vector<Elem> to_out(J.domain_size(), 0);
  for (Elem e : dom.elements()) to_out[e] = out.add_element(J.name(e));
  for (const auto& c : sig.concepts) {
    ElemSet ext(out.domain_size());
    for (Elem e : (J.concept_ext(c) & dom).elements()) ext.insert(to_out[e]);
    out.set_concept(c, ext);
  }
  for (const auto& [role, arity] : sig.roles) {
    ArityRel rel(arity);
    const AC lantern = AC::conjunction({AC::negation(AC::atomic(ReifySignature::dom())),
                                        build_chi(role, sig), build_outdeg(arity)});
    const ElemSet lanterns = check_alcqi(lantern, J);
    for (Elem l : lanterns.elements()) {
      Tuple t(arity);
      for (std::size_t i = 0; i < arity; ++i) {
        for (const auto& edge : J.role_ext(ReifySignature::f(i + 1))) {
          if (edge[0] == l) t[i] = to_out[edge[1]];
        }
      }
      rel.insert(std::move(t));
    }
    out.set_role(role, std::move(rel));
  }
  return out;
}

}  // namespace polydl
