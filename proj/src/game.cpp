#include "polydl/game.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

#include "polydl/error.hpp"

namespace polydl {
namespace {

std::vector<Permutation> all_permutations(std::size_t m) {
  std::vector<std::size_t> s(m);
  for (std::size_t i = 0; i < m; ++i) s[i] = i;
  std::vector<Permutation> out;
  do {
    out.push_back(Permutation::from_sources(s));
  } while (std::next_permutation(s.begin(), s.end()));
  return out;
}

// Calls f on each n-subset of {0..size-1} (as sorted index vectors) until
// f returns true; returns whether it did.
template <class F>
bool any_subset(std::size_t size, std::size_t n, F f) {
  if (n > size) return false;
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  while (true) {
    if (f(idx)) return true;
    std::size_t i = n;
    while (i > 0 && idx[i - 1] == size - n + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Symbols of several interpretations taken together.
struct Vocabulary {
  std::vector<std::string> concepts;
  std::vector<std::pair<std::string, std::size_t>> roles;
  std::map<std::size_t, std::vector<Permutation>> perms;  // per tuple length

  explicit Vocabulary(const std::vector<const Interp*>& models) {
    Signature sig;
    for (const Interp* I : models) {
      for (const auto& [c, _] : I->concepts()) sig.concepts.insert(c);
      for (const auto& [r, ext] : I->roles()) {
        auto [it, fresh] = sig.roles.emplace(r, ext.arity());
        if (!fresh && it->second != ext.arity()) {
          throw ValidationError("role '" + r + "' has different arities in the two models");
        }
      }
    }
    concepts.assign(sig.concepts.begin(), sig.concepts.end());
    roles.assign(sig.roles.begin(), sig.roles.end());
    for (const auto& [_, n] : roles) {
      if (!perms.count(n)) perms.emplace(n, all_permutations(n));
    }
  }

  std::string atoms(const Interp& I, Elem e) const {
    std::string out;
    for (const auto& c : concepts) out += I.has_concept(c) && I.concept_ext(c).contains(e) ? '1' : '0';
    return out;
  }

  std::string type_key(const Interp& I, const Tuple& t) const {
    std::string key;
    const auto& ps = perms.at(t.size());
    for (std::size_t r = 0; r < roles.size(); ++r) {
      if (roles[r].second != t.size() || !I.has_role(roles[r].first)) continue;
      const ArityRel& rel = I.role_ext(roles[r].first);
      for (std::size_t s = 0; s < ps.size(); ++s) {
        if (rel.contains(ps[s].apply(t))) key += std::to_string(r) + "." + std::to_string(s) + ";";
      }
    }
    return key;
  }

  // m-tuples starting at x, grouped by role type.
  std::map<std::string, std::vector<Tuple>> groups(const Interp& I, Elem x, std::size_t m) const {
    std::map<std::string, std::vector<Tuple>> out;
    const std::size_t n = I.domain_size();
    Tuple t(m, 0);
    t[0] = x;
    while (true) {
      out[type_key(I, t)].push_back(t);
      std::size_t i = m;
      while (i > 1 && ++t[i - 1] == n) t[--i] = 0;
      if (i <= 1) break;
    }
    return out;
  }
};

std::string tuple_text(const Interp& I, const Tuple& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) out += (i ? "," : "") + I.name(t[i]);
  return out + ")";
}

class Minimax {
 public:
  Minimax(const Interp& a, const Interp& b, std::size_t p)
      : A_(a), B_(b), p_(p), voc_({&a, &b}) {}

  bool win(Elem w, Elem w2, std::size_t r, std::string* trace) {
    const auto key = std::make_tuple(w, w2, r);
    if (!trace) {
      auto it = memo_.find(key);
      if (it != memo_.end()) return it->second;
    }
    const bool out = compute(w, w2, r, trace);
    memo_[key] = out;
    return out;
  }

 private:
  const std::map<std::string, std::vector<Tuple>>& groups(int side, Elem x, std::size_t m) {
    auto key = std::make_tuple(side, x, m);
    auto it = groups_.find(key);
    if (it == groups_.end()) it = groups_.emplace(key, voc_.groups(side ? B_ : A_, x, m)).first;
    return it->second;
  }

  bool compute(Elem w, Elem w2, std::size_t r, std::string* trace) {
    if (voc_.atoms(A_, w) != voc_.atoms(B_, w2)) {
      if (trace) *trace = "atomic concepts differ at " + A_.name(w) + " and " + B_.name(w2);
      return false;
    }
    if (r == 0) return true;
    for (int side = 0; side < 2; ++side) {
      const Interp& X = side ? B_ : A_;
      const Elem x = side ? w2 : w;
      const Elem y = side ? w : w2;
      for (const auto& [m, _] : voc_.perms) {
        const auto& mine = groups(side, x, m);
        const auto& theirs = groups(1 - side, y, m);
        for (const auto& [type, L] : mine) {
          static const std::vector<Tuple> none;
          auto found = theirs.find(type);
          const std::vector<Tuple>& L2 = found == theirs.end() ? none : found->second;
          for (std::size_t n = 1; n <= std::min(p_, L.size()); ++n) {
            std::vector<std::size_t> winning;
            const bool spoiler = any_subset(L.size(), n, [&](const std::vector<std::size_t>& S) {
              if (!spoiler_wins_with(side, L, S, L2, r)) return false;
              winning = S;
              return true;
            });
            if (spoiler) {
              if (trace) {
                *trace = "spoiler picks in model " + std::string(side ? "B" : "A") + " the " +
                         std::to_string(n) + " tuple(s)";
                for (std::size_t i : winning) *trace += " " + tuple_text(X, L[i]);
                *trace += L2.size() < n ? "; the other side has too few tuples of that role type"
                                        : "; every answer leaves an unmatched coordinate";
              }
              return false;
            }
          }
        }
      }
    }
    if (trace) *trace = "duplicator survives " + std::to_string(r) + " round(s)";
    return true;
  }

  bool spoiler_wins_with(int side, const std::vector<Tuple>& L, const std::vector<std::size_t>& S,
                         const std::vector<Tuple>& L2, std::size_t r) {
    const std::size_t n = S.size();
    const std::size_t m = L[S[0]].size();
    auto ok = [&](Elem mine, Elem theirs) {
      return side == 0 ? win(mine, theirs, r - 1, nullptr) : win(theirs, mine, r - 1, nullptr);
    };
    // The duplicator survives with D unless some chosen point has no
    // counterpart at the same index on the other side.
    const bool duplicator = any_subset(L2.size(), n, [&](const std::vector<std::size_t>& D) {
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t s : S) {
          bool matched = false;
          for (std::size_t d : D) matched = matched || ok(L[s][i], L2[d][i]);
          if (!matched) return false;
        }
        for (std::size_t d : D) {
          bool matched = false;
          for (std::size_t s : S) matched = matched || ok(L[s][i], L2[d][i]);
          if (!matched) return false;
        }
      }
      return true;
    });
    return !duplicator;
  }

  const Interp& A_;
  const Interp& B_;
  std::size_t p_;
  Vocabulary voc_;
  std::map<std::tuple<Elem, Elem, std::size_t>, bool> memo_;
  std::map<std::tuple<int, Elem, std::size_t>, std::map<std::string, std::vector<Tuple>>> groups_;
};

}  // namespace

RoleType role_type(const Tuple& tuple, const Interp& interp) {
  RoleType out;
  const auto perms = all_permutations(tuple.size());
  for (const auto& [name, rel] : interp.roles()) {
    if (rel.arity() != tuple.size()) continue;
    for (const auto& sigma : perms) {
      if (rel.contains(sigma.apply(tuple))) out.emplace(name, sigma);
    }
  }
  return out;
}

std::string to_string(const RoleType& type) {
  std::string out = "{";
  bool first = true;
  for (const auto& [name, sigma] : type) {
    out += first ? "" : ", ";
    first = false;
    out += "(" + name + ", [";
    for (std::size_t i = 0; i < sigma.size(); ++i) out += (i ? " " : "") + std::to_string(sigma.source(i) + 1);
    out += "])";
  }
  return out + "}";
}

GameResult play_game(const Interp& a, Elem w, const Interp& b, Elem w2, std::size_t rounds,
                     std::size_t grading) {
  if (grading == 0) throw std::invalid_argument("grading must be at least 1");
  if (w >= a.domain_size() || w2 >= b.domain_size()) throw ValidationError("point outside the domain");
  Minimax game(a, b, grading);
  GameResult out;
  out.duplicator_wins = game.win(w, w2, rounds, &out.trace);
  return out;
}

bool duplicator_wins(const Interp& a, Elem w, const Interp& b, Elem w2, std::size_t rounds,
                     std::size_t grading) {
  if (grading == 0) throw std::invalid_argument("grading must be at least 1");
  if (w >= a.domain_size() || w2 >= b.domain_size()) throw ValidationError("point outside the domain");
  return Minimax(a, b, grading).win(w, w2, rounds, nullptr);
}

std::vector<std::size_t> game_classes(const std::vector<const Interp*>& models, std::size_t rounds,
                                      std::size_t grading) {
  if (grading == 0) throw std::invalid_argument("grading must be at least 1");
  const Vocabulary voc(models);
  std::vector<std::size_t> offset;
  std::size_t total = 0;
  for (const Interp* I : models) {
    offset.push_back(total);
    total += I->domain_size();
  }

  auto renumber = [](const std::vector<std::string>& keys) {
    std::map<std::string, std::size_t> ids;
    std::vector<std::size_t> out;
    for (const auto& k : keys) out.push_back(ids.emplace(k, ids.size()).first->second);
    return out;
  };

  std::vector<std::string> keys;
  for (const Interp* I : models) {
    for (Elem e = 0; e < I->domain_size(); ++e) keys.push_back(voc.atoms(*I, e));
  }
  std::vector<std::size_t> cls = renumber(keys);

  // Role-type groups do not change between rounds.
  std::vector<std::vector<std::map<std::string, std::vector<Tuple>>>> groups(total);
  for (std::size_t mi = 0; mi < models.size(); ++mi) {
    for (Elem e = 0; e < models[mi]->domain_size(); ++e) {
      for (const auto& [m, _] : voc.perms) groups[offset[mi] + e].push_back(voc.groups(*models[mi], e, m));
    }
  }

  for (std::size_t r = 1; r <= rounds; ++r) {
    std::size_t flat = 0;
    for (std::size_t mi = 0; mi < models.size(); ++mi) {
      for (Elem e = 0; e < models[mi]->domain_size(); ++e, ++flat) {
        std::string key = keys[flat] + "|";
        for (const auto& by_type : groups[flat]) {
          for (const auto& [type, L] : by_type) {
            std::set<std::string> choices;
            for (std::size_t n = 1; n <= std::min(grading, L.size()); ++n) {
              any_subset(L.size(), n, [&](const std::vector<std::size_t>& S) {
                std::string sig = std::to_string(n);
                for (std::size_t i = 0; i < L[S[0]].size(); ++i) {
                  std::set<std::size_t> at;
                  for (std::size_t s : S) at.insert(cls[offset[mi] + L[s][i]]);
                  sig += "/";
                  for (std::size_t c : at) sig += std::to_string(c) + ",";
                }
                choices.insert(std::move(sig));
                return false;
              });
            }
            key += "[" + type + "]";
            for (const auto& c : choices) key += c + " ";
          }
          key += "#";
        }
        keys[flat] = std::move(key);
      }
    }
    cls = renumber(keys);
    // Keep keys short: the class id subsumes everything above.
    for (std::size_t i = 0; i < total; ++i) keys[i] = std::to_string(cls[i]);
  }
  return cls;
}

std::vector<Concept> enumerate_concepts(const Signature& sig, std::size_t depth,
                                        std::size_t grading, std::size_t budget) {
  std::vector<Concept> level;
  std::set<std::string> seen;
  auto add = [&](std::vector<Concept>& into, Concept c) {
    if (!seen.insert(to_string(c)).second) return;
    if (seen.size() > budget) {
      throw BudgetExceeded("concept enumeration exceeds " + std::to_string(budget) + " concepts");
    }
    into.push_back(std::move(c));
  };

  add(level, Concept::top());
  add(level, Concept::bot());
  std::vector<std::vector<Concept>> literals;
  for (const auto& a : sig.concepts) {
    literals.push_back({Concept::atomic(a), Concept::negation(Concept::atomic(a))});
    for (const auto& l : literals.back()) add(level, l);
  }
  for (std::size_t i = 0; i < literals.size(); ++i) {
    for (std::size_t j = i + 1; j < literals.size(); ++j) {
      for (const auto& x : literals[i]) {
        for (const auto& y : literals[j]) add(level, Concept::conjunction(x, y));
      }
    }
  }

  for (std::size_t d = 1; d <= depth; ++d) {
    std::vector<Concept> next = level;
    std::vector<Concept> restrictions;
    for (const auto& [role, n] : sig.roles) {
      std::vector<PermWord> words;
      for (const auto& perm : all_permutations(n)) words.push_back(word_of_perm(perm));
      for (const auto& w : words) {
        for (std::size_t j = 1; j <= grading; ++j) {
          // Every (n-1)-tuple of fillers from the level below.
          std::vector<std::size_t> pick(n - 1, 0);
          while (true) {
            std::vector<Concept> args;
            for (std::size_t i : pick) args.push_back(level[i]);
            add(restrictions, Concept::at_least(Count(j), RoleExpr{role, n, w}, std::move(args)));
            std::size_t i = pick.size();
            while (i > 0 && ++pick[i - 1] == level.size()) pick[--i] = 0;
            if (i == 0) break;
          }
        }
      }
    }
    for (const auto& r : restrictions) {
      next.push_back(r);
      add(next, Concept::negation(r));
    }
    level = std::move(next);
  }
  return level;
}

}  // namespace polydl
