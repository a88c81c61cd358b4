#include "polydl/tableau.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

#include "polydl/error.hpp"
#include "polydl/reify.hpp"
#include "polydl/semantics.hpp"
#include "polydl/unravel.hpp"

namespace polydl {

// ---------------------------------------------------------------------------
// NNF

NnfConcept NnfConcept::constant(NnfKind kind) {
  Node n;
  n.kind = kind;
  return NnfConcept(std::make_shared<const Node>(std::move(n)));
}

NnfConcept NnfConcept::atom(std::string name, bool negated) {
  Node n;
  n.kind = negated ? NnfKind::NegAtom : NnfKind::Atom;
  n.name = std::move(name);
  return NnfConcept(std::make_shared<const Node>(std::move(n)));
}

NnfConcept NnfConcept::binary(NnfKind kind, NnfConcept l, NnfConcept r) {
  Node n;
  n.kind = kind;
  n.children = {std::move(l), std::move(r)};
  return NnfConcept(std::make_shared<const Node>(std::move(n)));
}

NnfConcept NnfConcept::restriction(NnfKind kind, Count k, BinRole role, NnfConcept filler) {
  Node n;
  n.kind = kind;
  n.count = std::move(k);
  n.role = std::move(role);
  n.children = {std::move(filler)};
  return NnfConcept(std::make_shared<const Node>(std::move(n)));
}

bool operator==(const NnfConcept& a, const NnfConcept& b) {
  if (a.node_ == b.node_) return true;
  return a.kind() == b.kind() && a.name() == b.name() && a.count() == b.count() &&
         a.role() == b.role() && a.children() == b.children();
}

namespace {

NnfConcept nnf_of(const AlcqiConcept& c, bool positive) {
  switch (c.kind()) {
    case ConceptKind::Top:
      return NnfConcept::constant(positive ? NnfKind::Top : NnfKind::Bot);
    case ConceptKind::Bot:
      return NnfConcept::constant(positive ? NnfKind::Bot : NnfKind::Top);
    case ConceptKind::Atomic:
      return NnfConcept::atom(c.name(), !positive);
    case ConceptKind::Not:
      return nnf_of(c.operand(), !positive);
    case ConceptKind::And:
      return NnfConcept::binary(positive ? NnfKind::And : NnfKind::Or, nnf_of(c.lhs(), positive),
                                nnf_of(c.rhs(), positive));
    case ConceptKind::AtLeast:
      if (positive) {
        return NnfConcept::restriction(NnfKind::AtLeast, c.count(), c.role(), nnf_of(c.operand(), true));
      }
      return NnfConcept::restriction(NnfKind::AtMost, c.count().pred(), c.role(),
                                     nnf_of(c.operand(), true));
    default:
      throw std::logic_error("shorthand reached nnf");
  }
}

}  // namespace

NnfConcept nnf(const AlcqiConcept& c) { return nnf_of(is_core(c) ? c : expand_shorthand(c), true); }

AlcqiConcept from_nnf(const NnfConcept& c) {
  using AC = AlcqiConcept;
  switch (c.kind()) {
    case NnfKind::Top:
      return AC::top();
    case NnfKind::Bot:
      return AC::bot();
    case NnfKind::Atom:
      return AC::atomic(c.name());
    case NnfKind::NegAtom:
      return AC::negation(AC::atomic(c.name()));
    case NnfKind::And:
      return AC::conjunction(from_nnf(c.children()[0]), from_nnf(c.children()[1]));
    case NnfKind::Or:
      return AC::negation(AC::conjunction(AC::negation(from_nnf(c.children()[0])),
                                          AC::negation(from_nnf(c.children()[1]))));
    case NnfKind::AtLeast:
      return AC::at_least(c.count(), c.role(), {from_nnf(c.children()[0])});
    case NnfKind::AtMost:
      return AC::negation(AC::at_least(c.count().succ(), c.role(), {from_nnf(c.children()[0])}));
  }
  throw std::logic_error("unhandled nnf kind");
}

std::string to_string(const NnfConcept& c) {
  auto wrap = [](const NnfConcept& x) {
    const bool compound = x.kind() == NnfKind::And || x.kind() == NnfKind::Or;
    return compound ? "(" + to_string(x) + ")" : to_string(x);
  };
  switch (c.kind()) {
    case NnfKind::Top:
      return "top";
    case NnfKind::Bot:
      return "bot";
    case NnfKind::Atom:
      return c.name();
    case NnfKind::NegAtom:
      return "not " + c.name();
    case NnfKind::And:
      return wrap(c.children()[0]) + " and " + wrap(c.children()[1]);
    case NnfKind::Or:
      return wrap(c.children()[0]) + " or " + wrap(c.children()[1]);
    case NnfKind::AtLeast:
    case NnfKind::AtMost:
      return std::string(c.kind() == NnfKind::AtLeast ? ">=" : "<=") + c.count().str() + " " +
             to_string(c.role()) + ".(" + to_string(c.children()[0]) + ")";
  }
  throw std::logic_error("unhandled nnf kind");
}

// ---------------------------------------------------------------------------
// Completion trees

namespace {

constexpr std::uint64_t kUnbounded = std::numeric_limits<std::uint64_t>::max();

struct Item {
  NnfKind kind = NnfKind::Top;
  std::string name;
  std::uint64_t k = 0;
  BinRole role;
  int a = -1, b = -1;
};

// Interned NNF concepts; ids are stable for one run.
class Table {
 public:
  explicit Table(std::uint64_t k_cap) : k_cap_(k_cap) {}

  int intern(const NnfConcept& c) {
    Item it;
    it.kind = c.kind();
    it.name = c.name();
    it.role = c.role();
    switch (c.kind()) {
      case NnfKind::And:
      case NnfKind::Or:
        it.a = intern(c.children()[0]);
        it.b = intern(c.children()[1]);
        break;
      case NnfKind::AtLeast:
      case NnfKind::AtMost:
        it.a = intern(c.children()[0]);
        it.k = c.count().to_u64().value_or(kUnbounded);
        break;
      default:
        break;
    }
    return add(std::move(it));
  }

  int negate(int id) {
    auto found = neg_.find(id);
    if (found != neg_.end()) return found->second;
    Item it = items_[id];
    switch (it.kind) {
      case NnfKind::Top: it.kind = NnfKind::Bot; break;
      case NnfKind::Bot: it.kind = NnfKind::Top; break;
      case NnfKind::Atom: it.kind = NnfKind::NegAtom; break;
      case NnfKind::NegAtom: it.kind = NnfKind::Atom; break;
      case NnfKind::And:
      case NnfKind::Or:
        it.kind = it.kind == NnfKind::And ? NnfKind::Or : NnfKind::And;
        it.a = negate(it.a);
        it.b = negate(it.b);
        break;
      case NnfKind::AtLeast:
        it.kind = NnfKind::AtMost;
        it.k -= 1;
        break;
      case NnfKind::AtMost:
        it.kind = NnfKind::AtLeast;
        it.k = it.k == kUnbounded ? kUnbounded : it.k + 1;
        break;
    }
    const int out = add(std::move(it));
    neg_[id] = out;
    neg_[out] = id;
    return out;
  }

  const Item& operator[](int id) const { return items_[id]; }
  int top() { return add(Item{}); }

 private:
  int add(Item it) {
    if (it.kind == NnfKind::AtLeast && it.k > k_cap_) {
      throw BudgetExceeded("count " + (it.k == kUnbounded ? std::string("beyond 2^64") : std::to_string(it.k)) +
                           " exceeds the k-cap of " + std::to_string(k_cap_));
    }
    std::string key = std::to_string(static_cast<int>(it.kind)) + "|" + it.name + "|" +
                      std::to_string(it.k) + "|" + to_string(it.role) + "|" +
                      std::to_string(it.a) + "|" + std::to_string(it.b);
    auto found = index_.find(key);
    if (found != index_.end()) return found->second;
    items_.push_back(std::move(it));
    const int id = static_cast<int>(items_.size() - 1);
    index_.emplace(std::move(key), id);
    return id;
  }

  std::uint64_t k_cap_;
  std::vector<Item> items_;
  std::map<std::string, int> index_;
  std::map<int, int> neg_;
};

struct TNode {
  int parent = -1;
  std::set<BinRole> edge;  // roles linking parent to this node, seen from the parent
  std::set<int> label;
  std::vector<int> children;
  bool alive = true;
};

struct TState {
  std::vector<TNode> nodes;
  std::set<std::pair<int, int>> neq;

  bool distinct(int a, int b) const { return neq.count({std::min(a, b), std::max(a, b)}) != 0; }
};

enum RuleClass { kAnd = 0, kOr, kChoose, kMerge, kGe, kClasses };

struct Rule {
  int x = -1;
  int item = -1;
  int y = -1;  // choose: the neighbour
};

class Tableau {
 public:
  Tableau(Table& table, const TableauOptions& opts) : T_(table), opts_(opts), rng_(opts.seed) {
    top_ = T_.top();
  }

  std::optional<TState> run(int root_concept) {
    TState st;
    st.nodes.emplace_back();
    st.nodes[0].label.insert(root_concept);
    if (expand(std::move(st))) return result_;
    return std::nullopt;
  }

  std::uint64_t steps() const { return steps_; }

 private:
  bool has(const TState& st, int y, int c) const {
    return c == top_ || st.nodes[y].label.count(c) != 0;
  }

  std::vector<int> neighbours(const TState& st, int x, const BinRole& s) const {
    std::vector<int> out;
    const TNode& n = st.nodes[x];
    if (n.parent >= 0 && n.edge.count(s.flipped())) out.push_back(n.parent);
    for (int c : n.children) {
      if (st.nodes[c].alive && st.nodes[c].edge.count(s)) out.push_back(c);
    }
    return out;
  }

  std::vector<int> with_concept(const TState& st, const std::vector<int>& ns, int c) const {
    std::vector<int> out;
    for (int y : ns) {
      if (has(st, y, c)) out.push_back(y);
    }
    return out;
  }

  // Is there a set of m pairwise distinct nodes among `cands`?
  bool clique(const TState& st, const std::vector<int>& cands, std::uint64_t m) const {
    if (m == 0) return true;
    if (cands.size() < m) return false;
    std::vector<int> chosen;
    auto grow = [&](auto& self, std::size_t from) -> bool {
      if (chosen.size() == m) return true;
      for (std::size_t i = from; i < cands.size(); ++i) {
        if (cands.size() - i < m - chosen.size()) return false;
        bool ok = true;
        for (int c : chosen) ok = ok && st.distinct(c, cands[i]);
        if (!ok) continue;
        chosen.push_back(cands[i]);
        if (self(self, i + 1)) return true;
        chosen.pop_back();
      }
      return false;
    };
    return grow(grow, 0);
  }

  void step() {
    if (++steps_ > opts_.step_budget) {
      throw BudgetExceeded("tableau exceeded " + std::to_string(opts_.step_budget) + " steps");
    }
  }

  bool clash(const TState& st) const {
    for (std::size_t x = 0; x < st.nodes.size(); ++x) {
      const TNode& n = st.nodes[x];
      if (!n.alive) continue;
      for (int c : n.label) {
        const Item& it = T_[c];
        if (it.kind == NnfKind::Bot) return true;
        if (it.kind == NnfKind::Atom) {
          for (int d : n.label) {
            const Item& jt = T_[d];
            if (jt.kind == NnfKind::NegAtom && jt.name == it.name) return true;
          }
        }
        if (it.kind == NnfKind::AtMost && it.k != kUnbounded) {
          auto ns = with_concept(st, neighbours(st, static_cast<int>(x), it.role), it.a);
          if (ns.size() > it.k && clique(st, ns, it.k + 1)) return true;
        }
      }
    }
    return false;
  }

  // Applicable rules of the most urgent class.
  std::pair<int, std::vector<Rule>> applicable(const TState& st) const {
    std::vector<Rule> found[kClasses];
    const bool all = opts_.seed != 0;
    for (int cls = 0; cls < kClasses; ++cls) {
      for (std::size_t x = 0; x < st.nodes.size(); ++x) {
        const TNode& n = st.nodes[x];
        if (!n.alive) continue;
        const int xi = static_cast<int>(x);
        for (int c : n.label) {
          const Item& it = T_[c];
          switch (cls) {
            case kAnd:
              if (it.kind == NnfKind::And && (!has(st, xi, it.a) || !has(st, xi, it.b))) {
                found[cls].push_back({xi, c, -1});
              }
              break;
            case kOr:
              if (it.kind == NnfKind::Or && !has(st, xi, it.a) && !has(st, xi, it.b)) {
                found[cls].push_back({xi, c, -1});
              }
              break;
            case kChoose:
              if (it.kind == NnfKind::AtMost && it.a != top_) {
                const int neg = T_.negate(it.a);
                for (int y : neighbours(st, xi, it.role)) {
                  if (!has(st, y, it.a) && !has(st, y, neg)) found[cls].push_back({xi, c, y});
                }
              }
              break;
            case kMerge:
              if (it.kind == NnfKind::AtMost && it.k != kUnbounded &&
                  with_concept(st, neighbours(st, xi, it.role), it.a).size() > it.k) {
                found[cls].push_back({xi, c, -1});
              }
              break;
            case kGe:
              if (it.kind == NnfKind::AtLeast &&
                  !clique(st, with_concept(st, neighbours(st, xi, it.role), it.a), it.k)) {
                found[cls].push_back({xi, c, -1});
              }
              break;
          }
          if (!all && !found[cls].empty()) return {cls, std::move(found[cls])};
        }
      }
      if (!found[cls].empty()) return {cls, std::move(found[cls])};
    }
    return {-1, {}};
  }

  void prune(TState& st, int y) {
    st.nodes[y].alive = false;
    for (int c : st.nodes[y].children) {
      if (st.nodes[c].alive) prune(st, c);
    }
  }

  // Merges `from` into `into`; `from` is a child of x, `into` is a child of
  // x or x's parent.
  void merge(TState& st, int x, int from, int into) {
    TNode& dst = st.nodes[into];
    const TNode& src = st.nodes[from];
    dst.label.insert(src.label.begin(), src.label.end());
    if (into == st.nodes[x].parent) {
      for (const auto& r : src.edge) st.nodes[x].edge.insert(r.flipped());
    } else {
      dst.edge.insert(src.edge.begin(), src.edge.end());
    }
    std::set<std::pair<int, int>> neq;
    for (auto [a, b] : st.neq) {
      if (a == from) a = into;
      if (b == from) b = into;
      neq.insert({std::min(a, b), std::max(a, b)});
    }
    st.neq = std::move(neq);
    prune(st, from);
  }

  int add_child(TState& st, int x, const BinRole& r, int c) {
    TNode n;
    n.parent = x;
    n.edge.insert(r);
    n.label.insert(c);
    st.nodes.push_back(std::move(n));
    const int id = static_cast<int>(st.nodes.size() - 1);
    st.nodes[x].children.push_back(id);
    return id;
  }

  bool expand(TState st) {
    while (true) {
      step();
      if (clash(st)) return false;
      auto [cls, rules] = applicable(st);
      if (cls < 0) {
        result_ = std::move(st);
        return true;
      }
      Rule r = rules.front();
      if (opts_.seed != 0) {
        std::uniform_int_distribution<std::size_t> pick(0, rules.size() - 1);
        r = rules[pick(rng_)];
      }
      const Item it = T_[r.item];
      switch (cls) {
        case kAnd:
          st.nodes[r.x].label.insert(it.a);
          st.nodes[r.x].label.insert(it.b);
          break;
        case kOr: {
          int first = it.a, second = it.b;
          if (opts_.seed != 0 && std::bernoulli_distribution(0.5)(rng_)) std::swap(first, second);
          TState left = st;
          left.nodes[r.x].label.insert(first);
          if (expand(std::move(left))) return true;
          st.nodes[r.x].label.insert(second);
          break;
        }
        case kChoose: {
          const int neg = T_.negate(it.a);
          int first = it.a, second = neg;
          if (opts_.seed != 0 && std::bernoulli_distribution(0.5)(rng_)) std::swap(first, second);
          TState left = st;
          left.nodes[r.y].label.insert(first);
          if (expand(std::move(left))) return true;
          st.nodes[r.y].label.insert(second);
          break;
        }
        case kMerge: {
          auto ns = with_concept(st, neighbours(st, r.x, it.role), it.a);
          std::vector<std::pair<int, int>> pairs;
          for (std::size_t i = 0; i < ns.size(); ++i) {
            for (std::size_t j = i + 1; j < ns.size(); ++j) {
              if (!st.distinct(ns[i], ns[j])) pairs.push_back({ns[i], ns[j]});
            }
          }
          if (opts_.seed != 0) std::shuffle(pairs.begin(), pairs.end(), rng_);
          const int parent = st.nodes[r.x].parent;
          for (auto [y, z] : pairs) {
            TState next = st;
            if (y == parent) {
              merge(next, r.x, z, y);
            } else if (z == parent) {
              merge(next, r.x, y, z);
            } else {
              merge(next, r.x, std::max(y, z), std::min(y, z));
            }
            if (expand(std::move(next))) return true;
          }
          return false;
        }
        case kGe: {
          std::vector<int> fresh;
          for (std::uint64_t i = 0; i < it.k; ++i) fresh.push_back(add_child(st, r.x, it.role, it.a));
          for (std::size_t i = 0; i < fresh.size(); ++i) {
            for (std::size_t j = i + 1; j < fresh.size(); ++j) st.neq.insert({fresh[i], fresh[j]});
          }
          break;
        }
      }
    }
  }

  Table& T_;
  TableauOptions opts_;
  std::mt19937_64 rng_;
  int top_ = -1;
  std::uint64_t steps_ = 0;
  TState result_;
};

Interp witness_of(const TState& st, const Table& table, const Signature& sig) {
  Interp I;
  std::vector<Elem> id(st.nodes.size(), 0);
  for (std::size_t x = 0; x < st.nodes.size(); ++x) {
    if (st.nodes[x].alive) id[x] = I.add_element("n" + std::to_string(I.domain_size()));
  }
  I.declare(sig);
  for (std::size_t x = 0; x < st.nodes.size(); ++x) {
    const TNode& n = st.nodes[x];
    if (!n.alive) continue;
    for (int c : n.label) {
      if (table[c].kind == NnfKind::Atom) I.add_to_concept(table[c].name, id[x]);
    }
    if (n.parent < 0) continue;
    for (const auto& r : n.edge) {
      if (r.inverse) {
        I.add_tuple(r.name, {id[x], id[n.parent]});
      } else {
        I.add_tuple(r.name, {id[n.parent], id[x]});
      }
    }
  }
  return I;
}

}  // namespace

AlcqiResult alcqi_sat(const AlcqiConcept& c, const TableauOptions& opts) {
  const AlcqiConcept core = is_core(c) ? c : expand_shorthand(c);
  Table table(opts.k_cap);
  const int root = table.intern(nnf(core));
  Tableau tab(table, opts);
  AlcqiResult out;
  std::optional<TState> st = tab.run(root);
  out.steps = tab.steps();
  if (!st) return out;
  Signature sig = signature_of(core);
  Interp w = witness_of(*st, table, sig);
  if (!check_alcqi(core, w).contains(0)) {
    throw std::logic_error("tableau produced a witness that fails to model-check");
  }
  out.sat = true;
  out.witness = std::move(w);
  return out;
}

AlcqpResult alcqp_sat(const Concept& c, const TableauOptions& opts) {
  const Concept core = is_core(c) ? c : expand_shorthand(c);
  const ReifySignature sig = ReifySignature::of(core);
  const AlcqiConcept target =
      AlcqiConcept::conjunction(AlcqiConcept::atomic(ReifySignature::dom()), translate(core, sig));
  AlcqiResult bin = alcqi_sat(target, opts);
  AlcqpResult out;
  out.steps = bin.steps;
  if (!bin.sat) return out;
  Interp binary = *bin.witness;
  binary.declare(sig.target());
  const UnravelResult tree = g_unravel(binary, 0, modal_depth(target));
  Interp poly = extract_polyadic(tree.tree, sig);
  poly.declare(signature_of(core));
  const std::string root = tree.tree.name(0);
  if (!check_concept(core, poly).contains(*poly.find(root))) {
    throw std::logic_error("extracted polyadic witness fails to model-check");
  }
  out.sat = true;
  out.witness = std::move(poly);
  out.root = root;
  out.binary_witness = std::move(bin.witness);
  return out;
}

}  // namespace polydl
