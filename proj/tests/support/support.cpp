#include "support.hpp"

#include <functional>
#include <set>
#include <stdexcept>
#include <string>

#include "polydl/semantics.hpp"

namespace polydl::testing {

std::size_t pick(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

namespace {

template <class T>
const T& choose(Rng& rng, const std::vector<T>& xs) {
  return xs.at(pick(rng, xs.size()));
}

Concept random_literal(Rng& rng, const std::vector<std::string>& atoms) {
  const std::size_t r = pick(rng, atoms.size() + 2);
  if (r == atoms.size()) return Concept::top();
  if (r == atoms.size() + 1) return Concept::bot();
  Concept a = Concept::atomic(atoms[r]);
  return pick(rng, 2) ? a : Concept::negation(a);
}

PermWord random_word(Rng& rng) {
  std::string w;
  for (std::size_t n = pick(rng, 3); n > 0; --n) w += pick(rng, 2) ? 'p' : 's';
  return PermWord(w);
}

}  // namespace

namespace {

Concept grow_concept(Rng& rng, const Signature& sig, std::size_t depth, std::size_t max_k, bool sugar,
                     std::size_t& budget) {
  const std::vector<std::string> atoms(sig.concepts.begin(), sig.concepts.end());
  std::vector<std::pair<std::string, std::size_t>> roles(sig.roles.begin(), sig.roles.end());
  if (budget > 0) --budget;
  const std::size_t choice = budget == 0 ? 0 : pick(rng, depth > 0 && !roles.empty() ? 6 : 3);
  switch (choice) {
    case 0:
      return random_literal(rng, atoms);
    case 1:
      return Concept::negation(grow_concept(rng, sig, depth, max_k, sugar, budget));
    case 2: {
      Concept l = grow_concept(rng, sig, depth, max_k, sugar, budget);
      return Concept::conjunction(l, grow_concept(rng, sig, depth, max_k, sugar, budget));
    }
    default:
      break;
  }
  const auto& [name, arity] = choose(rng, roles);
  std::vector<Concept> args;
  for (std::size_t i = 1; i < arity; ++i) {
    args.push_back(grow_concept(rng, sig, depth - 1, max_k, sugar, budget));
  }
  const Count k(1 + pick(rng, max_k));
  RoleExpr role{name, arity, random_word(rng)};
  if (!sugar) return Concept::at_least(k, std::move(role), std::move(args));
  static const ConceptKind kinds[] = {ConceptKind::AtLeast, ConceptKind::Exists, ConceptKind::Less,
                                      ConceptKind::Forall, ConceptKind::Exactly};
  return Concept::restriction(kinds[pick(rng, 5)], k, std::move(role), std::move(args));
}

AlcqiConcept grow_alcqi(Rng& rng, const Signature& sig, std::size_t depth, std::size_t max_k,
                        std::size_t& budget) {
  std::vector<std::string> atoms(sig.concepts.begin(), sig.concepts.end());
  std::vector<std::string> roles;
  for (const auto& [r, n] : sig.roles) {
    if (n == 2) roles.push_back(r);
  }
  if (budget > 0) --budget;
  const std::size_t choice = budget == 0 ? 0 : pick(rng, depth > 0 && !roles.empty() ? 6 : 3);
  if (choice == 0) {
    const std::size_t r = pick(rng, atoms.size() + 2);
    if (r == atoms.size()) return AlcqiConcept::top();
    if (r == atoms.size() + 1) return AlcqiConcept::bot();
    AlcqiConcept a = AlcqiConcept::atomic(atoms[r]);
    return pick(rng, 2) ? a : AlcqiConcept::negation(a);
  }
  if (choice == 1) return AlcqiConcept::negation(grow_alcqi(rng, sig, depth, max_k, budget));
  if (choice == 2) {
    AlcqiConcept l = grow_alcqi(rng, sig, depth, max_k, budget);
    return AlcqiConcept::conjunction(l, grow_alcqi(rng, sig, depth, max_k, budget));
  }
  BinRole role{choose(rng, roles), pick(rng, 2) == 1};
  const Count k(1 + pick(rng, max_k));
  return AlcqiConcept::at_least(k, role, {grow_alcqi(rng, sig, depth - 1, max_k, budget)});
}

}  // namespace

Concept random_concept(Rng& rng, const Signature& sig, std::size_t depth, std::size_t max_k,
                       bool sugar, std::size_t max_nodes) {
  return grow_concept(rng, sig, depth, max_k, sugar, max_nodes);
}

AlcqiConcept random_alcqi(Rng& rng, const Signature& sig, std::size_t depth, std::size_t max_k,
                          std::size_t max_nodes) {
  return grow_alcqi(rng, sig, depth, max_k, max_nodes);
}

std::vector<Concept> all_alc_concepts(const Signature& sig, std::size_t max_size,
                                      std::size_t max_depth) {
  std::vector<std::string> roles;
  for (const auto& [r, n] : sig.roles) {
    if (n == 2) roles.push_back(r);
  }
  // by_size[s] holds every concept with exactly s nodes.
  std::vector<std::vector<Concept>> by_size(max_size + 1);
  if (max_size >= 1) {
    by_size[1] = {Concept::top(), Concept::bot()};
    for (const auto& a : sig.concepts) by_size[1].push_back(Concept::atomic(a));
  }
  for (std::size_t s = 2; s <= max_size; ++s) {
    for (const auto& c : by_size[s - 1]) {
      by_size[s].push_back(Concept::negation(c));
      if (modal_depth(c) < max_depth) {
        for (const auto& r : roles) {
          by_size[s].push_back(Concept::restriction(ConceptKind::Exists, Count(1), RoleExpr{r, 2, {}}, {c}));
        }
      }
    }
    for (std::size_t l = 1; l + 1 < s; ++l) {
      for (const auto& a : by_size[l]) {
        for (const auto& b : by_size[s - 1 - l]) by_size[s].push_back(Concept::conjunction(a, b));
      }
    }
  }
  std::vector<Concept> out;
  for (const auto& level : by_size) out.insert(out.end(), level.begin(), level.end());
  return out;
}

std::vector<GraTerm> all_gra2_terms(const Signature& sig, std::size_t max_size) {
  std::vector<std::vector<GraTerm>> by_size(max_size + 1);
  if (max_size >= 1) {
    by_size[1] = {GraTerm::top(), GraTerm::bot()};
    for (const auto& a : sig.concepts) by_size[1].push_back(GraTerm::atom(a));
    for (const auto& [r, n] : sig.roles) {
      if (n == 2) by_size[1].push_back(GraTerm::atom(r));
    }
  }
  for (std::size_t s = 2; s <= max_size; ++s) {
    for (const auto& t : by_size[s - 1]) by_size[s].push_back(GraTerm::unary(TermKind::Neg1, t));
    for (std::size_t l = 1; l + 1 < s; ++l) {
      for (const auto& a : by_size[l]) {
        for (const auto& b : by_size[s - 1 - l]) by_size[s].push_back(GraTerm::binary(TermKind::Cap1, a, b));
      }
    }
  }
  std::vector<GraTerm> out;
  for (const auto& level : by_size) out.insert(out.end(), level.begin(), level.end());
  return out;
}

std::vector<Concept> sat_corpus(std::size_t size, std::uint64_t seed) {
  std::vector<Concept> out;
  std::set<std::string> seen;
  auto add = [&](const Concept& c) {
    if (out.size() < size && seen.insert(to_string(c)).second) out.push_back(c);
  };
  const Concept A = Concept::atomic("A");
  const Concept nA = Concept::negation(A);
  const Concept top = Concept::top();
  auto neg = [](const Concept& c) { return Concept::negation(c); };
  auto conj = [](const Concept& a, const Concept& b) { return Concept::conjunction(a, b); };
  auto at = [](std::size_t k, const std::string& r, std::size_t n, const std::string& w,
               std::vector<Concept> args) {
    return Concept::at_least(Count(k), RoleExpr{r, n, PermWord(w)}, std::move(args));
  };

  // Counting against upper bounds, across permutations of the same role.
  const std::vector<std::string> binary_words = {"", "s"};
  const std::vector<std::string> ternary_words = {"", "p", "pp", "s", "ps", "sp"};
  const std::vector<Concept> fillers = {top, A, nA, Concept::bot()};
  for (std::size_t k = 1; k <= 3; ++k) {
    for (std::size_t j = 1; j <= 3; ++j) {
      for (const auto& w : binary_words) {
        for (const auto& w2 : binary_words) {
          for (const auto& f : fillers) {
            add(conj(at(k, "R", 2, w, {f}), neg(at(j, "R", 2, w2, {top}))));
          }
        }
      }
      for (const auto& w : ternary_words) {
        for (std::size_t a = 0; a < 3; ++a) {
          add(conj(at(k, "T", 3, w, {fillers[a], fillers[(a + 1) % 3]}),
                   neg(at(j, "T", 3, "", {top, A}))));
        }
      }
    }
  }
  // Clashes and boxes one level down.
  for (const auto& w : ternary_words) {
    add(at(1, "T", 3, w, {conj(A, nA), top}));
    add(conj(at(2, "T", 3, w, {A, nA}), neg(at(1, "T", 3, w, {A, top}))));
    add(conj(at(2, "T", 3, w, {A, nA}), neg(at(1, "T", 3, w, {top, A}))));
    add(conj(neg(at(1, "T", 3, w, {Concept::bot(), Concept::bot()})), at(1, "T", 3, "", {top, top})));
    add(conj(at(1, "T", 3, w, {at(2, "R", 2, "", {A}), top}), neg(at(1, "T", 3, "", {top, top}))));
  }
  for (const auto& w : binary_words) {
    add(conj(at(1, "R", 2, w, {at(2, "R", 2, "s", {A})}), neg(at(1, "R", 2, "", {neg(at(1, "R", 2, "s", {A}))}))));
    add(conj(at(3, "R", 2, w, {A}), neg(at(2, "R", 2, w, {top}))));
    add(conj(at(2, "R", 2, w, {at(1, "T", 3, "p", {A, A})}), neg(at(1, "R", 2, w, {at(1, "T", 3, "", {top, A})}))));
  }

  Rng rng(seed);
  Signature sig;
  sig.concepts = {"A", "B"};
  sig.roles = {{"R", 2}, {"T", 3}};
  while (out.size() < size) {
    const Concept c = random_concept(rng, sig, 1 + pick(rng, 2), 3);
    if (modal_depth(c) >= 1) add(c);
  }
  return out;
}

bool for_each_interp(const Signature& sig, std::size_t n, const std::function<bool(Interp&)>& f) {
  std::size_t bits = sig.concepts.size() * n;
  std::vector<std::pair<std::string, std::vector<Tuple>>> slots;
  for (const auto& [r, arity] : sig.roles) {
    std::vector<Tuple> all;
    Tuple t(arity, 0);
    while (true) {
      all.push_back(t);
      std::size_t i = arity;
      while (i > 0 && ++t[i - 1] == n) t[--i] = 0;
      if (i == 0) break;
    }
    bits += all.size();
    slots.emplace_back(r, std::move(all));
  }
  if (bits > 24) throw std::invalid_argument("signature too large for exhaustive enumeration");
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
    Interp I;
    for (std::size_t i = 0; i < n; ++i) I.add_element("d" + std::to_string(i));
    std::size_t bit = 0;
    for (const auto& c : sig.concepts) {
      ElemSet ext(n);
      for (Elem e = 0; e < n; ++e, ++bit) {
        if (mask >> bit & 1) ext.insert(e);
      }
      I.set_concept(c, std::move(ext));
    }
    for (const auto& [r, tuples] : slots) {
      ArityRel rel(tuples.front().size());
      for (const auto& t : tuples) {
        if (mask >> bit++ & 1) rel.insert(t);
      }
      I.set_role(r, std::move(rel));
    }
    if (f(I)) return true;
  }
  return false;
}

std::vector<Interp> all_interps(const Signature& sig, std::size_t n) {
  std::vector<Interp> out;
  for_each_interp(sig, n, [&](Interp& I) {
    out.push_back(std::move(I));
    return false;
  });
  return out;
}

std::optional<Interp> brute_force_sat(const Concept& c, std::size_t max_domain) {
  const Concept core = expand_shorthand(c);
  const Signature sig = signature_of(core);
  std::optional<Interp> found;
  for (std::size_t n = 1; n <= max_domain && !found; ++n) {
    for_each_interp(sig, n, [&](Interp& I) {
      if (check_concept(core, I).count() == 0) return false;
      found = std::move(I);
      return true;
    });
  }
  return found;
}

}  // namespace polydl::testing
