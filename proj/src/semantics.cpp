#include "polydl/semantics.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "polydl/error.hpp"

namespace polydl {
namespace {

constexpr std::uint64_t kInfinite = std::numeric_limits<std::uint64_t>::max();

std::uint64_t count_value(const Count& k) { return k.to_u64().value_or(kInfinite); }

class PolyChecker {
 public:
  explicit PolyChecker(const Interp& i) : I_(i) {}

  ElemSet eval(const Concept& c) {
    auto it = memo_.find(c.id());
    if (it != memo_.end()) return it->second;
    ElemSet out = compute(c);
    memo_.emplace(c.id(), out);
    return out;
  }

 private:
  ElemSet compute(const Concept& c) {
    const std::size_t n = I_.domain_size();
    switch (c.kind()) {
      case ConceptKind::Top:
        return ElemSet(n, true);
      case ConceptKind::Bot:
        return ElemSet(n);
      case ConceptKind::Atomic:
        return I_.concept_ext(c.name());
      case ConceptKind::Not:
        return eval(c.operand()).complement();
      case ConceptKind::And:
        return eval(c.lhs()) & eval(c.rhs());
      case ConceptKind::AtLeast:
        break;
      default:
        throw std::logic_error("shorthand reached the model checker");
    }
    const RoleExpr& role = c.role();
    const ArityRel& rel = I_.role_ext(role.name);
    if (rel.arity() != role.arity || c.args().size() + 1 != rel.arity()) {
      throw ValidationError("arity mismatch: role '" + role.name + "' has arity " +
                            std::to_string(rel.arity()) + " in the interpretation but is used with " +
                            std::to_string(c.args().size()) + " argument(s)");
    }
    std::vector<ElemSet> args;
    for (const auto& a : c.args()) args.push_back(eval(a));
    const Permutation perm = role.permutation();
    std::vector<std::uint64_t> hits(n, 0);
    for (const auto& t : rel) {
      Tuple v = perm.apply(t);
      bool ok = true;
      for (std::size_t i = 1; i < v.size() && ok; ++i) ok = args[i - 1].contains(v[i]);
      if (ok) ++hits[v[0]];
    }
    const std::uint64_t k = count_value(c.count());
    ElemSet out(n);
    for (Elem x = 0; x < n; ++x) {
      if (hits[x] >= k) out.insert(x);
    }
    return out;
  }

  const Interp& I_;
  std::unordered_map<const void*, ElemSet> memo_;
};

class BinChecker {
 public:
  explicit BinChecker(const Interp& i) : I_(i) {}

  ElemSet eval(const AlcqiConcept& c) {
    auto it = memo_.find(c.id());
    if (it != memo_.end()) return it->second;
    ElemSet out = compute(c);
    memo_.emplace(c.id(), out);
    return out;
  }

 private:
  ElemSet compute(const AlcqiConcept& c) {
    const std::size_t n = I_.domain_size();
    switch (c.kind()) {
      case ConceptKind::Top:
        return ElemSet(n, true);
      case ConceptKind::Bot:
        return ElemSet(n);
      case ConceptKind::Atomic:
        return I_.concept_ext(c.name());
      case ConceptKind::Not:
        return eval(c.operand()).complement();
      case ConceptKind::And:
        return eval(c.lhs()) & eval(c.rhs());
      case ConceptKind::AtLeast:
        break;
      default:
        throw std::logic_error("shorthand reached the model checker");
    }
    const BinRole& role = c.role();
    const ArityRel& rel = I_.role_ext(role.name);
    if (rel.arity() != 2) {
      throw ValidationError("role '" + role.name + "' is not binary");
    }
    const ElemSet filler = eval(c.operand());
    std::vector<std::uint64_t> hits(n, 0);
    for (const auto& t : rel) {
      const Elem from = role.inverse ? t[1] : t[0];
      const Elem to = role.inverse ? t[0] : t[1];
      if (filler.contains(to)) ++hits[from];
    }
    const std::uint64_t k = count_value(c.count());
    ElemSet out(n);
    for (Elem x = 0; x < n; ++x) {
      if (hits[x] >= k) out.insert(x);
    }
    return out;
  }

  const Interp& I_;
  std::unordered_map<const void*, ElemSet> memo_;
};

// ---------------------------------------------------------------------------
// Bounded model finder
//
// The concept is compiled to a DAG of Top / Atom / And / AtLeast nodes with
// negation carried on edges. A search state assigns each (element, node) a
// value in {undecided, true, false} and holds the role tuples created so
// far. The invariant that makes leaves models: every decided value is
// justified by decided values below it, so undecided ones can be chosen
// arbitrarily.

struct Lit {
  int node = 0;
  bool neg = false;

  Lit flipped() const { return {node, !neg}; }
  int code() const { return node * 2 + (neg ? 1 : 0); }
};

struct ONode {
  enum Kind { Top, Atom, And, AtLeast } kind = Top;
  std::string name;  // atom or role name
  Lit a, b;
  std::uint64_t k = 0;
  std::size_t arity = 0;
  Permutation perm, inv;
  std::vector<Lit> args;
};

class DagCompiler {
 public:
  std::vector<ONode> nodes;

  Lit compile(const Concept& c) {
    switch (c.kind()) {
      case ConceptKind::Top:
        return {intern("T", [] { return ONode{}; }), false};
      case ConceptKind::Bot:
        return {intern("T", [] { return ONode{}; }), true};
      case ConceptKind::Atomic:
        return {intern("A" + c.name(),
                       [&] {
                         ONode n;
                         n.kind = ONode::Atom;
                         n.name = c.name();
                         return n;
                       }),
                false};
      case ConceptKind::Not:
        return compile(c.operand()).flipped();
      case ConceptKind::And: {
        Lit a = compile(c.lhs()), b = compile(c.rhs());
        const std::string key = "&" + std::to_string(a.code()) + "," + std::to_string(b.code());
        return {intern(key,
                       [&] {
                         ONode n;
                         n.kind = ONode::And;
                         n.a = a;
                         n.b = b;
                         return n;
                       }),
                false};
      }
      case ConceptKind::AtLeast: {
        std::vector<Lit> args;
        std::string key = ">" + c.count().str() + "," + to_string(c.role());
        for (const auto& a : c.args()) {
          args.push_back(compile(a));
          key += "," + std::to_string(args.back().code());
        }
        return {intern(key,
                       [&] {
                         ONode n;
                         n.kind = ONode::AtLeast;
                         n.name = c.role().name;
                         n.k = count_value(c.count());
                         n.arity = c.role().arity;
                         n.perm = c.role().permutation();
                         n.inv = n.perm.inverse();
                         n.args = args;
                         return n;
                       }),
                false};
      }
      default:
        throw std::logic_error("shorthand reached the oracle");
    }
  }

 private:
  template <class Make>
  int intern(const std::string& key, Make make) {
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    nodes.push_back(make());
    const int id = static_cast<int>(nodes.size() - 1);
    index_.emplace(key, id);
    return id;
  }

  std::map<std::string, int> index_;
};

enum : std::int8_t { U = 0, T = 1, F = 2 };

struct State {
  std::size_t used = 0;
  std::vector<std::int8_t> val;  // element * nodes + node
  std::map<std::string, std::set<Tuple>> rel;
};

class Finder {
 public:
  Finder(const DagCompiler& dag, Lit root, std::size_t max_domain, std::uint64_t budget,
         std::uint64_t& nodes)
      : dag_(dag.nodes), root_(root), N_(max_domain), budget_(budget), ticks_(nodes) {}

  std::optional<State> run() {
    State s;
    s.used = 1;
    s.val.assign(N_ * dag_.size(), U);
    for (const auto& n : dag_) {
      if (n.kind == ONode::AtLeast) s.rel.emplace(n.name, std::set<Tuple>{});
    }
    if (!assign(s, 0, root_, true)) return std::nullopt;
    if (search(s)) return result_;
    return std::nullopt;
  }

 private:
  std::int8_t get(const State& s, Elem e, Lit l) const {
    if (dag_[l.node].kind == ONode::Top) return l.neg ? F : T;
    const std::int8_t v = s.val[e * dag_.size() + l.node];
    if (v == U || !l.neg) return v;
    return v == T ? F : T;
  }

  // False on conflict.
  bool assign(State& s, Elem e, Lit l, bool value) {
    const bool node_value = value != l.neg;
    if (dag_[l.node].kind == ONode::Top) return node_value;
    std::int8_t& slot = s.val[e * dag_.size() + l.node];
    const std::int8_t want = node_value ? T : F;
    if (slot == U) {
      slot = want;
      changed_ = true;
      return true;
    }
    return slot == want;
  }

  void tick() {
    if (++ticks_ > budget_) {
      throw BudgetExceeded("oracle search exceeded " + std::to_string(budget_) + " nodes");
    }
  }

  // Calls f(view_tuple) for each tuple of node g's permuted relation that
  // starts at e.
  template <class Fn>
  void for_each_view(const State& s, const ONode& g, Elem e, Fn f) const {
    for (const auto& t : s.rel.at(g.name)) {
      if (t[g.perm.source(0)] != e) continue;
      f(g.perm.apply(t));
    }
  }

  // Number of view tuples whose arguments are all true.
  std::uint64_t counted(const State& s, const ONode& g, Elem e) const {
    std::uint64_t lo = 0;
    for_each_view(s, g, e, [&](const Tuple& v) {
      bool all = true;
      for (std::size_t i = 1; i < v.size() && all; ++i) all = get(s, v[i], g.args[i - 1]) == T;
      lo += all;
    });
    return lo;
  }

  // Forced consequences until fixpoint. False on conflict.
  bool propagate(State& s) {
    do {
      changed_ = false;
      for (Elem e = 0; e < s.used; ++e) {
        for (std::size_t i = 0; i < dag_.size(); ++i) {
          const ONode& n = dag_[i];
          const std::int8_t v = s.val[e * dag_.size() + i];
          if (v == U) continue;
          if (n.kind == ONode::And) {
            if (v == T) {
              if (!assign(s, e, n.a, true) || !assign(s, e, n.b, true)) return false;
            } else {
              const auto va = get(s, e, n.a), vb = get(s, e, n.b);
              if (va == T && vb == T) return false;
              if (va == T && vb == U && !assign(s, e, n.b, false)) return false;
              if (vb == T && va == U && !assign(s, e, n.a, false)) return false;
            }
          } else if (n.kind == ONode::AtLeast) {
            if (v == F) {
              if (n.k != kInfinite && counted(s, n, e) >= n.k) return false;
            } else if (n.k > capacity(n.arity)) {
              return false;
            }
          }
        }
      }
    } while (changed_);
    return true;
  }

  // Distinct tuples (x, u2..un) available over N elements.
  std::uint64_t capacity(std::size_t arity) const {
    std::uint64_t c = 1;
    for (std::size_t i = 1; i < arity; ++i) {
      if (c > kInfinite / N_) return kInfinite;
      c *= N_;
    }
    return c;
  }

  bool search(State s) {
    tick();
    if (!propagate(s)) return false;
    const std::size_t M = dag_.size();

    // Disjunctions hidden in false conjunctions.
    for (Elem e = 0; e < s.used; ++e) {
      for (std::size_t i = 0; i < M; ++i) {
        const ONode& n = dag_[i];
        if (n.kind != ONode::And || s.val[e * M + i] != F) continue;
        if (get(s, e, n.a) != U || get(s, e, n.b) != U) continue;
        State left = s;
        if (assign(left, e, n.a, false) && search(std::move(left))) return true;
        State right = std::move(s);
        return assign(right, e, n.a, true) && assign(right, e, n.b, false) &&
               search(std::move(right));
      }
    }

    // Arguments of tuples that a false at-least restriction must classify.
    for (Elem e = 0; e < s.used; ++e) {
      for (std::size_t i = 0; i < M; ++i) {
        const ONode& n = dag_[i];
        if (n.kind != ONode::AtLeast || s.val[e * M + i] != F) continue;
        std::optional<std::pair<Elem, Lit>> open;
        for_each_view(s, n, e, [&](const Tuple& v) {
          if (open) return;
          std::optional<std::pair<Elem, Lit>> first_u;
          for (std::size_t j = 1; j < v.size(); ++j) {
            const auto x = get(s, v[j], n.args[j - 1]);
            if (x == F) return;
            if (x == U && !first_u) first_u.emplace(v[j], n.args[j - 1]);
          }
          open = first_u;
        });
        if (!open) continue;
        State left = s;
        if (assign(left, open->first, open->second, false) && search(std::move(left))) return true;
        State right = std::move(s);
        return assign(right, open->first, open->second, true) && search(std::move(right));
      }
    }

    // Witnesses for true at-least restrictions.
    for (Elem e = 0; e < s.used; ++e) {
      for (std::size_t i = 0; i < M; ++i) {
        const ONode& n = dag_[i];
        if (n.kind != ONode::AtLeast || s.val[e * M + i] != T) continue;
        const std::uint64_t lo = counted(s, n, e);
        if (lo >= n.k) continue;
        std::set<Tuple> already;
        for_each_view(s, n, e, [&](const Tuple& v) {
          bool all = true;
          for (std::size_t j = 1; j < v.size() && all; ++j) all = get(s, v[j], n.args[j - 1]) == T;
          if (all) already.insert(v);
        });
        return pick(std::move(s), n, e, n.k - lo, Tuple{}, already);
      }
    }

    result_ = std::move(s);
    return true;
  }

  // Chooses `remaining` new witness tuples for node n at e, as a
  // lexicographically increasing sequence of view tuples. Unused elements
  // enter in order of first appearance, which loses no model up to
  // renaming of the new elements.
  bool pick(State s, const ONode& n, Elem e, std::uint64_t remaining, const Tuple& last,
            const std::set<Tuple>& already) {
    tick();
    if (remaining == 0) return search(std::move(s));
    Tuple v(n.arity);
    v[0] = e;
    return pick_coords(s, n, e, remaining, last, already, v, 1, s.used);
  }

  bool pick_coords(const State& s, const ONode& n, Elem e, std::uint64_t remaining,
                   const Tuple& last, const std::set<Tuple>& already, Tuple& v, std::size_t pos,
                   std::size_t next_fresh) {
    if (pos == v.size()) {
      if (!last.empty() && !(last < v)) return false;
      if (already.count(v)) return false;
      for (std::size_t j = 1; j < v.size(); ++j) {
        if (v[j] < s.used && get(s, v[j], n.args[j - 1]) == F) return false;
      }
      State t = s;
      t.used = next_fresh;
      t.rel[n.name].insert(n.inv.apply(v));
      for (std::size_t j = 1; j < v.size(); ++j) {
        if (!assign(t, v[j], n.args[j - 1], true)) return false;
      }
      if (!propagate(t)) return false;
      return pick(std::move(t), n, e, remaining - 1, v, already);
    }
    const std::size_t limit = std::min(next_fresh + 1, N_);
    for (std::size_t c = 0; c < limit; ++c) {
      // Prune prefixes that cannot exceed `last`.
      v[pos] = static_cast<Elem>(c);
      if (!last.empty() && std::lexicographical_compare(v.begin(), v.begin() + pos + 1, last.begin(),
                                                        last.begin() + pos + 1)) {
        continue;
      }
      const std::size_t nf = c == next_fresh ? next_fresh + 1 : next_fresh;
      if (pick_coords(s, n, e, remaining, last, already, v, pos + 1, nf)) return true;
    }
    return false;
  }

  const std::vector<ONode>& dag_;
  Lit root_;
  std::size_t N_;
  std::uint64_t budget_;
  std::uint64_t& ticks_;
  bool changed_ = false;
  State result_;
};

Interp build_witness(const State& s, const std::vector<ONode>& dag, const Signature& sig) {
  Interp I;
  for (std::size_t e = 0; e < s.used; ++e) I.add_element("d" + std::to_string(e));
  I.declare(sig);
  for (std::size_t i = 0; i < dag.size(); ++i) {
    if (dag[i].kind != ONode::Atom) continue;
    for (Elem e = 0; e < s.used; ++e) {
      if (s.val[e * dag.size() + i] == T) I.add_to_concept(dag[i].name, e);
    }
  }
  for (const auto& [name, tuples] : s.rel) {
    for (const auto& t : tuples) I.add_tuple(name, t);
  }
  return I;
}

}  // namespace

ElemSet check_concept(const Concept& c, const Interp& interp) {
  const Concept core = is_core(c) ? c : expand_shorthand(c);
  return PolyChecker(interp).eval(core);
}

ElemSet check_alcqi(const AlcqiConcept& c, const Interp& interp) {
  const AlcqiConcept core = is_core(c) ? c : expand_shorthand(c);
  return BinChecker(interp).eval(core);
}

OracleResult oracle_sat(const Concept& c, std::size_t max_domain, const OracleOptions& opts) {
  if (max_domain == 0) throw std::invalid_argument("max_domain must be at least 1");
  const Concept core = is_core(c) ? c : expand_shorthand(c);
  const Signature sig = signature_of(core);
  DagCompiler dag;
  const Lit root = dag.compile(core);

  OracleResult out;
  auto attempt = [&](std::size_t bound) {
    return Finder(dag, root, bound, opts.node_budget, out.nodes).run();
  };
  // Doubling bounds first: small models are found without wandering
  // through the dead ends that a large bound leaves open. Each attempt is
  // complete for its bound, so a failed bound also bounds the minimum.
  std::optional<State> found;
  std::size_t refuted = 0;
  for (std::size_t bound = 1; bound < max_domain && !found; bound *= 2) {
    found = attempt(bound);
    if (!found) refuted = bound;
  }
  if (!found) found = attempt(max_domain);
  if (!found) return out;
  if (opts.minimize) {
    for (std::size_t n = refuted + 1; n < found->used; ++n) {
      if (auto smaller = attempt(n)) {
        found = std::move(smaller);
        break;
      }
    }
  }
  Interp witness = build_witness(*found, dag.nodes, sig);
  if (!check_concept(core, witness).contains(0)) {
    throw std::logic_error("oracle produced a witness that fails to model-check");
  }
  out.sat = true;
  out.witness = std::move(witness);
  return out;
}

namespace {

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kInfinite - b ? kInfinite : a + b; }
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  return a != 0 && b > kInfinite / a ? kInfinite : a * b;
}

// Fan-out of the restrictions at this level; `widest` collects the maximum
// over all levels.
std::uint64_t fan_out(const Concept& c, std::uint64_t& widest) {
  if (c.is_restriction()) {
    std::uint64_t inner = 0;
    for (const auto& a : c.args()) inner = sat_add(inner, fan_out(a, widest));
    widest = std::max(widest, inner);
    return sat_mul(count_value(c.count()), c.role().arity - 1);
  }
  std::uint64_t here = 0;
  for (const auto& a : c.args()) here = sat_add(here, fan_out(a, widest));
  return here;
}

}  // namespace

std::size_t domain_bound(const Concept& c) {
  const Concept core = expand_shorthand(c);
  std::uint64_t b = 0;
  const std::uint64_t root = fan_out(core, b);
  b = std::max(b, root);
  std::uint64_t total = 1;
  std::uint64_t layer = 1;
  for (std::size_t d = modal_depth(core); d > 0; --d) {
    layer = sat_mul(layer, b);
    total = sat_add(total, layer);
  }
  if (total > std::numeric_limits<std::size_t>::max()) return std::numeric_limits<std::size_t>::max();
  return static_cast<std::size_t>(total);
}

}  // namespace polydl
