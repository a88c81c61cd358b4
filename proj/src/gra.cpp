#include "polydl/gra.hpp"

#include <algorithm>
#include <stdexcept>

#include "polydl/error.hpp"

namespace polydl {
namespace {

// |A|^k, saturating at budget + 1.
std::size_t power_capped(std::size_t base, std::size_t exp, std::size_t budget) {
  std::size_t acc = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && acc > (budget + 1) / base) return budget + 1;
    acc *= base;
    if (acc > budget) return budget + 1;
  }
  return acc;
}

void check_budget(std::size_t domain_size, std::size_t arity, std::size_t budget,
                  const char* op) {
  if (power_capped(domain_size, arity, budget) > budget) {
    throw BudgetExceeded(std::string(op) + ": " + std::to_string(domain_size) + "^" +
                         std::to_string(arity) + " tuples exceed the budget of " +
                         std::to_string(budget));
  }
}

template <class F>
ArityRel map_tuples(const ArityRel& r, std::size_t arity, F f) {
  ArityRel out(arity);
  for (const auto& t : r) {
    if (auto u = f(t)) out.insert(std::move(*u));
  }
  return out;
}

// Calls f on every tuple of A^n in lexicographic order.
template <class F>
void for_each_tuple(std::size_t domain_size, std::size_t n, F f) {
  if (domain_size == 0 && n > 0) return;
  Tuple t(n, 0);
  while (true) {
    f(t);
    std::size_t i = n;
    while (i > 0 && ++t[i - 1] == domain_size) t[--i] = 0;
    if (i == 0) return;
  }
}

}  // namespace

ArityRel apply_p(const ArityRel& r) {
  if (r.arity() < 2) return r;
  return map_tuples(r, r.arity(), [](const Tuple& t) -> std::optional<Tuple> {
    Tuple u(t.size());
    u[0] = t.back();
    std::copy(t.begin(), t.end() - 1, u.begin() + 1);
    return u;
  });
}

ArityRel apply_s(const ArityRel& r) {
  if (r.arity() < 2) return r;
  return map_tuples(r, r.arity(), [](const Tuple& t) -> std::optional<Tuple> {
    Tuple u = t;
    std::swap(u[u.size() - 1], u[u.size() - 2]);
    return u;
  });
}

ArityRel apply_I(const ArityRel& r) {
  if (r.arity() < 2) return r;
  return map_tuples(r, r.arity() - 1, [](const Tuple& t) -> std::optional<Tuple> {
    if (t[t.size() - 1] != t[t.size() - 2]) return std::nullopt;
    return Tuple(t.begin(), t.end() - 1);
  });
}

ArityRel complement(const ArityRel& r, std::size_t domain_size, std::size_t budget) {
  check_budget(domain_size, r.arity(), budget, "complement");
  ArityRel out(r.arity());
  for_each_tuple(domain_size, r.arity(), [&](const Tuple& t) {
    if (!r.contains(t)) out.insert(t);
  });
  return out;
}

ArityRel join(const ArityRel& r, const ArityRel& s) {
  ArityRel out(r.arity() + s.arity());
  for (const auto& a : r) {
    for (const auto& b : s) {
      Tuple t = a;
      t.insert(t.end(), b.begin(), b.end());
      out.insert(std::move(t));
    }
  }
  return out;
}

ArityRel project(const ArityRel& r) {
  if (r.arity() == 0) return r;
  return map_tuples(r, r.arity() - 1, [](const Tuple& t) -> std::optional<Tuple> {
    return Tuple(t.begin(), t.end() - 1);
  });
}

ArityRel equality_rel(std::size_t domain_size) {
  ArityRel out(2);
  for (Elem a = 0; a < domain_size; ++a) out.insert({a, a});
  return out;
}

ArityRel suffix_intersect(const ArityRel& r, const ArityRel& s, std::size_t /*domain_size*/) {
  // The longer operand fixes the result tuples; the shorter one only
  // filters by suffix.
  const ArityRel& longer = r.arity() >= s.arity() ? r : s;
  const ArityRel& shorter = r.arity() >= s.arity() ? s : r;
  const std::size_t l = shorter.arity();
  ArityRel out(longer.arity());
  for (const auto& t : longer) {
    Tuple suffix(t.end() - static_cast<std::ptrdiff_t>(l), t.end());
    if (shorter.contains(suffix)) out.insert(t);
  }
  return out;
}

ArityRel project1(const ArityRel& r) {
  if (r.arity() <= 1) return r;
  return map_tuples(r, 1, [](const Tuple& t) -> std::optional<Tuple> { return Tuple{t[0]}; });
}

ArityRel cap1(const ArityRel& r, const ArityRel& s, std::size_t domain_size) {
  if (std::min(r.arity(), s.arity()) > 1) return ArityRel(1);
  return project1(suffix_intersect(r, s, domain_size));
}

ArityRel neg1(const ArityRel& r, std::size_t domain_size) {
  if (r.arity() > 1) return ArityRel(1);
  return complement(r, domain_size, domain_size + 1);
}

ArityRel unary_rel(const ElemSet& s) {
  ArityRel out(1);
  for (Elem e : s.elements()) out.insert({e});
  return out;
}

ElemSet elem_set(const ArityRel& r, std::size_t domain_size) {
  if (r.arity() != 1) throw std::invalid_argument("elem_set needs a unary relation");
  ElemSet out(domain_size);
  for (const auto& t : r) out.insert(t[0]);
  return out;
}

ArityRel eval_term(const GraTerm& t, const EvalEnv& env) {
  const Interp& I = *env.interp;
  const std::size_t n = I.domain_size();
  auto sub = [&](std::size_t i) { return eval_term(t.operand(i), env); };
  switch (t.kind()) {
    case TermKind::Atom:
      if (I.has_concept(t.name())) return unary_rel(I.concept_ext(t.name()));
      if (I.has_role(t.name())) return I.role_ext(t.name());
      throw ValidationError("relation symbol '" + t.name() + "' not interpreted");
    case TermKind::Top:
      return unary_rel(ElemSet(n, true));
    case TermKind::Bot:
      return ArityRel(1);
    case TermKind::Eq:
      return equality_rel(n);
    case TermKind::P:
      return apply_p(sub(0));
    case TermKind::S:
      return apply_s(sub(0));
    case TermKind::I:
      return apply_I(sub(0));
    case TermKind::Neg:
      return complement(sub(0), n, env.tuple_budget);
    case TermKind::Join: {
      ArityRel a = sub(0), b = sub(1);
      if (b.size() != 0 && a.size() > env.tuple_budget / b.size()) {
        throw BudgetExceeded("join result exceeds the budget of " +
                             std::to_string(env.tuple_budget) + " tuples");
      }
      return join(a, b);
    }
    case TermKind::Ex:
      return project(sub(0));
    case TermKind::DotCap:
      return suffix_intersect(sub(0), sub(1), n);
    case TermKind::Ex1:
      return project1(sub(0));
    case TermKind::Cap1:
      return cap1(sub(0), sub(1), n);
    case TermKind::Neg1:
      return neg1(sub(0), n);
  }
  throw std::logic_error("unhandled term kind");
}

}  // namespace polydl
