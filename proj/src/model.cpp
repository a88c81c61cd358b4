#include "polydl/model.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "polydl/error.hpp"

namespace polydl {

using nlohmann::json;

// ---------------------------------------------------------------------------
// ArityRel / ElemSet

ArityRel::ArityRel(std::size_t arity, std::set<Tuple> tuples) : arity_(arity) {
  for (auto& t : tuples) insert(t);
}

void ArityRel::insert(Tuple t) {
  if (t.size() != arity_) {
    throw std::invalid_argument("tuple of length " + std::to_string(t.size()) +
                                " in relation of arity " + std::to_string(arity_));
  }
  tuples_.insert(std::move(t));
}

std::size_t ElemSet::count() const {
  std::size_t n = 0;
  for (bool b : bits_) n += b;
  return n;
}

std::vector<Elem> ElemSet::elements() const {
  std::vector<Elem> out;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out.push_back(static_cast<Elem>(i));
  }
  return out;
}

ElemSet ElemSet::complement() const {
  ElemSet out = *this;
  out.bits_.flip();
  return out;
}

ElemSet ElemSet::operator&(const ElemSet& o) const {
  ElemSet out(bits_.size());
  for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] = bits_[i] && o.contains(static_cast<Elem>(i));
  return out;
}

ElemSet ElemSet::operator|(const ElemSet& o) const {
  ElemSet out(bits_.size());
  for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] = bits_[i] || o.contains(static_cast<Elem>(i));
  return out;
}

bool ElemSet::subset_of(const ElemSet& o) const {
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] && !o.contains(static_cast<Elem>(i))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Interp

std::optional<Elem> Interp::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Elem Interp::add_element(const std::string& name) {
  if (index_.count(name)) throw ValidationError("duplicate element '" + name + "'");
  const Elem e = static_cast<Elem>(names_.size());
  names_.push_back(name);
  index_.emplace(name, e);
  // Existing concept extensions grow with the domain.
  for (auto& [_, ext] : concepts_) {
    ElemSet grown(names_.size());
    for (Elem x : ext.elements()) grown.insert(x);
    ext = std::move(grown);
  }
  return e;
}

const ElemSet& Interp::concept_ext(const std::string& name) const {
  auto it = concepts_.find(name);
  if (it == concepts_.end()) throw ValidationError("concept name '" + name + "' not interpreted");
  return it->second;
}

const ArityRel& Interp::role_ext(const std::string& name) const {
  auto it = roles_.find(name);
  if (it == roles_.end()) throw ValidationError("role '" + name + "' not interpreted");
  return it->second;
}

void Interp::set_concept(const std::string& name, ElemSet ext) {
  if (ext.domain_size() != names_.size()) {
    throw ValidationError("extension of '" + name + "' has wrong domain size");
  }
  concepts_[name] = std::move(ext);
}

void Interp::set_role(const std::string& name, ArityRel ext) { roles_[name] = std::move(ext); }

void Interp::declare(const Signature& sig) {
  for (const auto& c : sig.concepts) {
    if (!concepts_.count(c)) concepts_.emplace(c, ElemSet(names_.size()));
  }
  for (const auto& [r, arity] : sig.roles) {
    auto it = roles_.find(r);
    if (it == roles_.end()) {
      roles_.emplace(r, ArityRel(arity));
    } else if (it->second.arity() != arity) {
      throw ValidationError("arity mismatch for role '" + r + "'");
    }
  }
}

void Interp::add_to_concept(const std::string& name, Elem e) {
  auto it = concepts_.find(name);
  if (it == concepts_.end()) it = concepts_.emplace(name, ElemSet(names_.size())).first;
  it->second.insert(e);
}

void Interp::add_tuple(const std::string& role, Tuple t) {
  auto it = roles_.find(role);
  if (it == roles_.end()) it = roles_.emplace(role, ArityRel(t.size())).first;
  it->second.insert(std::move(t));
}

Signature Interp::signature() const {
  Signature sig;
  for (const auto& [c, _] : concepts_) sig.concepts.insert(c);
  for (const auto& [r, ext] : roles_) sig.roles.emplace(r, ext.arity());
  return sig;
}

void Interp::validate() const {
  if (names_.empty()) throw ValidationError("empty domain");
  for (const auto& [c, ext] : concepts_) {
    if (!is_identifier(c)) throw ValidationError("invalid concept name '" + c + "'");
    if (ext.domain_size() != names_.size()) {
      throw ValidationError("extension of '" + c + "' has wrong domain size");
    }
    if (roles_.count(c)) throw ValidationError("name '" + c + "' used both as concept and role");
  }
  for (const auto& [r, ext] : roles_) {
    if (!is_identifier(r)) throw ValidationError("invalid role name '" + r + "'");
    for (const auto& t : ext) {
      if (t.size() != ext.arity()) throw ValidationError("tuple arity mismatch in role '" + r + "'");
      for (Elem e : t) {
        if (e >= names_.size()) throw ValidationError("tuple element outside domain in '" + r + "'");
      }
    }
  }
}

Interp Interp::restricted_to(const Signature& sig) const {
  Interp out;
  out.names_ = names_;
  out.index_ = index_;
  for (const auto& c : sig.concepts) {
    auto it = concepts_.find(c);
    out.concepts_.emplace(c, it == concepts_.end() ? ElemSet(names_.size()) : it->second);
  }
  for (const auto& [r, arity] : sig.roles) {
    auto it = roles_.find(r);
    out.roles_.emplace(r, it == roles_.end() ? ArityRel(arity) : it->second);
  }
  return out;
}

namespace {

std::set<std::string> names_of(const Interp& I, const ElemSet& s) {
  std::set<std::string> out;
  for (Elem e : s.elements()) out.insert(I.name(e));
  return out;
}

std::set<std::vector<std::string>> names_of(const Interp& I, const ArityRel& r) {
  std::set<std::vector<std::string>> out;
  for (const auto& t : r) {
    std::vector<std::string> v;
    for (Elem e : t) v.push_back(I.name(e));
    out.insert(std::move(v));
  }
  return out;
}

}  // namespace

bool same_structure(const Interp& a, const Interp& b) {
  if (std::set<std::string>(a.element_names().begin(), a.element_names().end()) !=
      std::set<std::string>(b.element_names().begin(), b.element_names().end())) {
    return false;
  }
  if (a.signature() != b.signature()) return false;
  for (const auto& [c, ext] : a.concepts()) {
    if (names_of(a, ext) != names_of(b, b.concept_ext(c))) return false;
  }
  for (const auto& [r, ext] : a.roles()) {
    if (names_of(a, ext) != names_of(b, b.role_ext(r))) return false;
  }
  return true;
}

Interp permute_elements(const Interp& in, const std::vector<Elem>& g) {
  const std::size_t n = in.domain_size();
  std::vector<std::string> names(n);
  for (Elem e = 0; e < n; ++e) names.at(g.at(e)) = in.name(e);
  Interp out;
  for (const auto& name : names) out.add_element(name);
  for (const auto& [c, ext] : in.concepts()) {
    ElemSet moved(n);
    for (Elem e : ext.elements()) moved.insert(g[e]);
    out.set_concept(c, moved);
  }
  for (const auto& [r, ext] : in.roles()) {
    ArityRel moved(ext.arity());
    for (const auto& t : ext) {
      Tuple u(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) u[i] = g[t[i]];
      moved.insert(std::move(u));
    }
    out.set_role(r, std::move(moved));
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

[[noreturn]] void schema_error(const std::string& what) {
  throw ValidationError("schema violation: " + what);
}

Elem lookup(const Interp& I, const json& v, const std::string& where) {
  if (!v.is_string()) schema_error("element ids must be strings in " + where);
  auto e = I.find(v.get<std::string>());
  if (!e) throw ValidationError("element '" + v.get<std::string>() + "' outside domain in " + where);
  return *e;
}

}  // namespace

Interp interp_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) schema_error("top level must be an object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "domain" && key != "concepts" && key != "roles") schema_error("unknown key '" + key + "'");
  }
  if (!doc.contains("domain") || !doc["domain"].is_array()) schema_error("'domain' must be an array");

  Interp I;
  for (const auto& v : doc["domain"]) {
    if (!v.is_string()) schema_error("element ids must be strings");
    I.add_element(v.get<std::string>());
  }
  if (I.domain_size() == 0) throw ValidationError("empty domain");

  if (doc.contains("concepts")) {
    if (!doc["concepts"].is_object()) schema_error("'concepts' must be an object");
    for (const auto& [name, members] : doc["concepts"].items()) {
      if (!members.is_array()) schema_error("concept '" + name + "' must map to an array");
      ElemSet ext(I.domain_size());
      for (const auto& m : members) ext.insert(lookup(I, m, "concept '" + name + "'"));
      I.set_concept(name, std::move(ext));
    }
  }
  if (doc.contains("roles")) {
    if (!doc["roles"].is_object()) schema_error("'roles' must be an object");
    for (const auto& [name, entry] : doc["roles"].items()) {
      if (!entry.is_object()) schema_error("role '" + name + "' must map to an object");
      for (const auto& [key, _] : entry.items()) {
        if (key != "arity" && key != "tuples") schema_error("unknown key '" + key + "' in role '" + name + "'");
      }
      if (!entry.contains("arity") || !entry["arity"].is_number_integer() || entry["arity"].get<long long>() < 0) {
        schema_error("role '" + name + "' needs a non-negative integer 'arity'");
      }
      if (!entry.contains("tuples") || !entry["tuples"].is_array()) {
        schema_error("role '" + name + "' needs a 'tuples' array");
      }
      const auto arity = static_cast<std::size_t>(entry["arity"].get<long long>());
      ArityRel ext(arity);
      for (const auto& tv : entry["tuples"]) {
        if (!tv.is_array()) schema_error("tuples of '" + name + "' must be arrays");
        if (tv.size() != arity) {
          throw ValidationError("arity mismatch: role '" + name + "' declared with arity " +
                                std::to_string(arity) + " has a tuple of length " +
                                std::to_string(tv.size()));
        }
        Tuple t;
        for (const auto& v : tv) t.push_back(lookup(I, v, "role '" + name + "'"));
        ext.insert(std::move(t));
      }
      I.set_role(name, std::move(ext));
    }
  }
  I.validate();
  return I;
}

std::string interp_to_json(const Interp& I, int indent) {
  json doc;
  doc["domain"] = I.element_names();
  json concepts = json::object();
  for (const auto& [c, ext] : I.concepts()) {
    json members = json::array();
    for (Elem e : ext.elements()) members.push_back(I.name(e));
    concepts[c] = std::move(members);
  }
  doc["concepts"] = std::move(concepts);
  json roles = json::object();
  for (const auto& [r, ext] : I.roles()) {
    json tuples = json::array();
    for (const auto& t : ext) {
      json tv = json::array();
      for (Elem e : t) tv.push_back(I.name(e));
      tuples.push_back(std::move(tv));
    }
    roles[r] = {{"arity", ext.arity()}, {"tuples", std::move(tuples)}};
  }
  doc["roles"] = std::move(roles);
  return doc.dump(indent);
}

Interp load_interp(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return interp_from_json(ss.str());
}

void save_interp(const Interp& interp, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write '" + path.string() + "'");
  out << interp_to_json(interp) << '\n';
}

// ---------------------------------------------------------------------------
// Random structures

Interp random_interp(std::uint64_t seed, std::size_t domain_size, const Signature& sig,
                     double density) {
  if (domain_size == 0) throw std::invalid_argument("domain size must be positive");
  if (!(density >= 0.0 && density <= 1.0)) throw std::invalid_argument("density outside [0,1]");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(density);
  Interp I;
  for (std::size_t i = 0; i < domain_size; ++i) I.add_element("d" + std::to_string(i));
  for (const auto& c : sig.concepts) {
    ElemSet ext(domain_size);
    for (Elem e = 0; e < domain_size; ++e) {
      if (coin(rng)) ext.insert(e);
    }
    I.set_concept(c, std::move(ext));
  }
  for (const auto& [r, arity] : sig.roles) {
    ArityRel ext(arity);
    Tuple t(arity, 0);
    while (true) {
      if (coin(rng)) ext.insert(t);
      std::size_t i = arity;
      while (i > 0 && ++t[i - 1] == domain_size) t[--i] = 0;
      if (i == 0) break;
    }
    I.set_role(r, std::move(ext));
  }
  return I;
}

}  // namespace polydl
