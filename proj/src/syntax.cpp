#include "polydl/syntax.hpp"

#include <deque>
#include <numeric>
#include <stdexcept>

#include "polydl/error.hpp"

namespace polydl {

// ---------------------------------------------------------------------------
// Signature

std::optional<std::size_t> Signature::arity_of(const std::string& symbol) const {
  if (concepts.count(symbol)) return 1;
  auto it = roles.find(symbol);
  if (it != roles.end()) return it->second;
  return std::nullopt;
}

void Signature::merge(const Signature& other) {
  for (const auto& c : other.concepts) {
    if (roles.count(c)) throw ValidationError("name '" + c + "' used both as concept and role");
    concepts.insert(c);
  }
  for (const auto& [name, arity] : other.roles) {
    if (concepts.count(name)) {
      throw ValidationError("name '" + name + "' used both as concept and role");
    }
    auto [it, inserted] = roles.emplace(name, arity);
    if (!inserted && it->second != arity) {
      throw ValidationError("arity mismatch for role '" + name + "': " +
                            std::to_string(it->second) + " vs " + std::to_string(arity));
    }
  }
}

bool is_identifier(std::string_view name) {
  if (name.empty()) return false;
  auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); };
  auto alnum = [&](char c) { return alpha(c) || (c >= '0' && c <= '9') || c == '_'; };
  std::size_t i = 0;
  if (name[0] == '@') {
    i = 1;
    if (name.size() == 1) return false;
  }
  if (!alpha(name[i])) return false;
  for (++i; i < name.size(); ++i) {
    if (!alnum(name[i])) return false;
  }
  return true;
}

bool is_generated_name(std::string_view name) { return !name.empty() && name[0] == '@'; }

// ---------------------------------------------------------------------------
// Permutations

PermWord::PermWord(std::string word) : ops(std::move(word)) {
  for (char c : ops) {
    if (c != 'p' && c != 's') throw std::invalid_argument("permutation word over {p,s} expected");
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> s(n);
  std::iota(s.begin(), s.end(), 0);
  return Permutation(std::move(s));
}

Permutation Permutation::from_sources(std::vector<std::size_t> sources) {
  std::vector<bool> seen(sources.size(), false);
  for (std::size_t v : sources) {
    if (v >= sources.size() || seen[v]) throw std::invalid_argument("not a permutation");
    seen[v] = true;
  }
  return Permutation(std::move(sources));
}

Permutation Permutation::then(const Permutation& next) const {
  if (next.size() != size()) throw std::invalid_argument("permutation sizes differ");
  std::vector<std::size_t> s(size());
  for (std::size_t i = 0; i < size(); ++i) s[i] = source_[next.source_[i]];
  return Permutation(std::move(s));
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> s(size());
  for (std::size_t i = 0; i < size(); ++i) s[source_[i]] = i;
  return Permutation(std::move(s));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < size(); ++i) {
    if (source_[i] != i) return false;
  }
  return true;
}

namespace {

Permutation cyclic_shift(std::size_t n) {
  if (n < 2) return Permutation::identity(n);
  std::vector<std::size_t> s(n);
  s[0] = n - 1;
  for (std::size_t i = 1; i < n; ++i) s[i] = i - 1;
  return Permutation::from_sources(std::move(s));
}

Permutation last_swap(std::size_t n) {
  Permutation id = Permutation::identity(n);
  if (n < 2) return id;
  std::vector<std::size_t> s = id.sources();
  std::swap(s[n - 2], s[n - 1]);
  return Permutation::from_sources(std::move(s));
}

}  // namespace

Permutation perm_of_word(const PermWord& word, std::size_t n) {
  Permutation cur = Permutation::identity(n);
  if (n < 2) return cur;
  const Permutation p = cyclic_shift(n);
  const Permutation s = last_swap(n);
  for (char op : word.ops) cur = cur.then(op == 'p' ? p : s);
  return cur;
}

PermWord word_of_perm(const Permutation& perm) {
  const std::size_t n = perm.size();
  const Permutation id = Permutation::identity(n);
  if (perm == id) return PermWord();
  const Permutation gens[2] = {last_swap(n), cyclic_shift(n)};
  const char names[2] = {'s', 'p'};
  std::map<Permutation, std::string> seen{{id, ""}};
  std::deque<Permutation> queue{id};
  while (!queue.empty()) {
    Permutation cur = queue.front();
    queue.pop_front();
    const std::string w = seen[cur];
    for (int g = 0; g < 2; ++g) {
      Permutation next = cur.then(gens[g]);
      if (seen.count(next)) continue;
      std::string nw = w + names[g];
      if (next == perm) return PermWord(nw);
      seen.emplace(next, nw);
      queue.push_back(next);
    }
  }
  throw std::logic_error("permutation not generated by p and s");
}

// ---------------------------------------------------------------------------
// Signatures of concepts

namespace {

void collect(const Concept& c, Signature& sig) {
  if (c.kind() == ConceptKind::Atomic) {
    Signature one;
    one.concepts.insert(c.name());
    sig.merge(one);
  }
  if (c.is_restriction()) {
    Signature one;
    one.roles.emplace(c.role().name, c.role().arity);
    sig.merge(one);
  }
  for (const auto& a : c.args()) collect(a, sig);
}

void collect(const AlcqiConcept& c, Signature& sig) {
  if (c.kind() == ConceptKind::Atomic) {
    Signature one;
    one.concepts.insert(c.name());
    sig.merge(one);
  }
  if (c.is_restriction()) {
    Signature one;
    one.roles.emplace(c.role().name, 2);
    sig.merge(one);
  }
  for (const auto& a : c.args()) collect(a, sig);
}

}  // namespace

Signature signature_of(const Concept& c) {
  Signature sig;
  collect(c, sig);
  return sig;
}

Signature signature_of(const AlcqiConcept& c) {
  Signature sig;
  collect(c, sig);
  return sig;
}

// ---------------------------------------------------------------------------
// Printing concepts

std::string to_string(const RoleExpr& r) {
  return r.word.empty() ? r.name : r.name + "^" + r.word.ops;
}

std::string to_string(const BinRole& r) { return r.inverse ? r.name + "^-" : r.name; }

namespace {

template <class Role>
void print(const BasicConcept<Role>& c, std::string& out) {
  auto grouped = [&out](const BasicConcept<Role>& sub) {
    if (sub.kind() == ConceptKind::And) {
      out += '(';
      print(sub, out);
      out += ')';
    } else {
      print(sub, out);
    }
  };
  switch (c.kind()) {
    case ConceptKind::Top:
      out += "top";
      return;
    case ConceptKind::Bot:
      out += "bot";
      return;
    case ConceptKind::Atomic:
      out += c.name();
      return;
    case ConceptKind::Not:
      out += "not ";
      grouped(c.operand());
      return;
    case ConceptKind::And:
      print(c.lhs(), out);
      out += " and ";
      grouped(c.rhs());
      return;
    case ConceptKind::AtLeast:
      out += ">=" + c.count().str() + " ";
      break;
    case ConceptKind::Less:
      out += "<" + c.count().str() + " ";
      break;
    case ConceptKind::Exactly:
      out += "=" + c.count().str() + " ";
      break;
    case ConceptKind::Exists:
      out += "E ";
      break;
    case ConceptKind::Forall:
      out += "A ";
      break;
  }
  out += to_string(c.role());
  out += ".(";
  for (std::size_t i = 0; i < c.args().size(); ++i) {
    if (i) out += ", ";
    print(c.args()[i], out);
  }
  out += ')';
}

}  // namespace

std::string to_string(const Concept& c) {
  std::string out;
  print(c, out);
  return out;
}

std::string to_string(const AlcqiConcept& c) {
  std::string out;
  print(c, out);
  return out;
}

// ---------------------------------------------------------------------------
// Algebra terms

GraTerm GraTerm::atom(std::string name) {
  Node n;
  n.kind = TermKind::Atom;
  n.name = std::move(name);
  return GraTerm(std::make_shared<const Node>(std::move(n)));
}

GraTerm GraTerm::top() {
  Node n;
  n.kind = TermKind::Top;
  return GraTerm(std::make_shared<const Node>(std::move(n)));
}

GraTerm GraTerm::bot() {
  Node n;
  n.kind = TermKind::Bot;
  return GraTerm(std::make_shared<const Node>(std::move(n)));
}

GraTerm GraTerm::eq() {
  Node n;
  n.kind = TermKind::Eq;
  return GraTerm(std::make_shared<const Node>(std::move(n)));
}

GraTerm GraTerm::unary(TermKind kind, GraTerm operand) {
  switch (kind) {
    case TermKind::P:
    case TermKind::S:
    case TermKind::I:
    case TermKind::Neg:
    case TermKind::Ex:
    case TermKind::Ex1:
    case TermKind::Neg1:
      break;
    default:
      throw std::invalid_argument("not a unary term operator");
  }
  Node n;
  n.kind = kind;
  n.operands.push_back(std::move(operand));
  return GraTerm(std::make_shared<const Node>(std::move(n)));
}

GraTerm GraTerm::binary(TermKind kind, GraTerm lhs, GraTerm rhs) {
  if (kind != TermKind::Join && kind != TermKind::DotCap && kind != TermKind::Cap1) {
    throw std::invalid_argument("not a binary term operator");
  }
  Node n;
  n.kind = kind;
  n.operands.push_back(std::move(lhs));
  n.operands.push_back(std::move(rhs));
  return GraTerm(std::make_shared<const Node>(std::move(n)));
}

bool operator==(const GraTerm& a, const GraTerm& b) {
  if (a.node_ == b.node_) return true;
  return a.node_->kind == b.node_->kind && a.node_->name == b.node_->name &&
         a.node_->operands == b.node_->operands;
}

std::size_t term_size(const GraTerm& t) {
  std::size_t n = 1;
  for (const auto& o : t.operands()) n += term_size(o);
  return n;
}

std::size_t arity_of_term(const GraTerm& t, const Signature& signature) {
  auto arity = [&](std::size_t i) { return arity_of_term(t.operand(i), signature); };
  switch (t.kind()) {
    case TermKind::Atom: {
      auto a = signature.arity_of(t.name());
      if (!a) throw ValidationError("undeclared relation symbol '" + t.name() + "'");
      return *a;
    }
    case TermKind::Top:
    case TermKind::Bot:
      return 1;
    case TermKind::Eq:
      return 2;
    case TermKind::P:
    case TermKind::S:
    case TermKind::Neg:
      return arity(0);
    case TermKind::I: {
      std::size_t n = arity(0);
      return n >= 2 ? n - 1 : n;
    }
    case TermKind::Ex: {
      std::size_t n = arity(0);
      return n >= 1 ? n - 1 : 0;
    }
    case TermKind::Join:
      return arity(0) + arity(1);
    case TermKind::DotCap:
      return std::max(arity(0), arity(1));
    case TermKind::Ex1:
      return std::min<std::size_t>(arity(0), 1);
    case TermKind::Cap1: {
      std::size_t a = arity(0), b = arity(1);
      if (std::min(a, b) <= 1) return std::min<std::size_t>(std::max(a, b), 1);
      return 1;
    }
    case TermKind::Neg1: {
      std::size_t n = arity(0);
      return n <= 1 ? n : 1;
    }
  }
  throw std::logic_error("unhandled term kind");
}

namespace {

const char* operator_name(TermKind k) {
  switch (k) {
    case TermKind::P: return "p";
    case TermKind::S: return "s";
    case TermKind::I: return "I";
    case TermKind::Neg: return "neg";
    case TermKind::Join: return "join";
    case TermKind::Ex: return "ex";
    case TermKind::DotCap: return "dotcap";
    case TermKind::Ex1: return "ex1";
    case TermKind::Cap1: return "cap1";
    case TermKind::Neg1: return "neg1";
    default: return "";
  }
}

void print(const GraTerm& t, std::string& out) {
  switch (t.kind()) {
    case TermKind::Atom:
      out += t.name();
      return;
    case TermKind::Top:
      out += "top";
      return;
    case TermKind::Bot:
      out += "bot";
      return;
    case TermKind::Eq:
      out += "e";
      return;
    default:
      break;
  }
  out += operator_name(t.kind());
  out += '(';
  for (std::size_t i = 0; i < t.operands().size(); ++i) {
    if (i) out += ", ";
    print(t.operands()[i], out);
  }
  out += ')';
}

}  // namespace

std::string to_string(const GraTerm& t) {
  std::string out;
  print(t, out);
  return out;
}

}  // namespace polydl
