#include "polydl/cli.hpp"

#include <fstream>
#include <iterator>

#include "CLI11.hpp"
#include "json.hpp"
#include "polydl/bridge.hpp"
#include "polydl/error.hpp"
#include "polydl/game.hpp"
#include "polydl/gra.hpp"
#include "polydl/model.hpp"
#include "polydl/reify.hpp"
#include "polydl/semantics.hpp"
#include "polydl/tableau.hpp"
#include "polydl/unravel.hpp"

namespace polydl {
namespace {

using json = nlohmann::json;

enum Exit { kOk = 0, kUnsat = 1, kUsage = 2, kBudget = 3 };

class Io {
 public:
  explicit Io(std::istream& in) : in_(in) {}

  std::string read(const std::string& path) {
    if (path == "-") {
      if (stdin_used_) throw ValidationError("stdin can be read only once");
      stdin_used_ = true;
      return {std::istreambuf_iterator<char>(in_), std::istreambuf_iterator<char>()};
    }
    std::ifstream f(path);
    if (!f) throw ValidationError("cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
  }

  Interp model(const std::string& path) { return interp_from_json(read(path)); }

 private:
  std::istream& in_;
  bool stdin_used_ = false;
};

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool looks_binary(const std::string& text) {
  return text.find('@') != std::string::npos || text.find("^-") != std::string::npos;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw ValidationError("cannot write '" + path + "'");
  f << text << '\n';
}

json names_of(const Interp& I, const ElemSet& s) {
  json out = json::array();
  for (Elem e : s.elements()) out.push_back(I.name(e));
  return out;
}

std::string braces(const json& names) {
  std::string out = "{";
  for (std::size_t i = 0; i < names.size(); ++i) out += (i ? ", " : "") + names[i].get<std::string>();
  return out + "}";
}

Elem element(const Interp& I, const std::string& name) {
  auto e = I.find(name);
  if (!e) throw ValidationError("element '" + name + "' is not in the domain");
  return *e;
}

struct Options {
  bool json = false;

  // check / eval-gra
  std::string model;
  std::string text;

  // reify / sat / oracle-sat
  std::string concept_file;
  bool with_dom = false;
  std::string witness;
  std::string logic = "auto";
  std::uint64_t seed = 0;
  std::uint64_t k_cap = TableauOptions{}.k_cap;
  std::uint64_t step_budget = TableauOptions{}.step_budget;
  std::size_t max_domain = 0;
  std::uint64_t node_budget = OracleOptions{}.node_budget;
  bool no_minimize = false;

  // unravel
  std::string root;
  std::size_t depth = 0;
  std::size_t unravel_budget = 1'000'000;

  // bridge
  std::string to_gra;
  std::string to_alc;
  std::vector<std::string> roles;

  // game
  std::string model_b;
  std::string point_a;
  std::string point_b;
  std::size_t rounds = 1;
  std::size_t grading = 1;
  bool trace = false;
};

int run_check(const Options& o, Io& io, std::ostream& out) {
  const Interp I = io.model(o.model);
  ElemSet s;
  if (looks_binary(o.text)) {
    s = check_alcqi(parse_alcqi(o.text), I);
  } else {
    const Signature sig = I.signature();
    s = check_concept(parse_concept(o.text, &sig), I);
  }
  const json names = names_of(I, s);
  if (o.json) {
    out << json{{"elements", names}}.dump() << '\n';
  } else {
    out << braces(names) << '\n';
  }
  return kOk;
}

int run_eval(const Options& o, Io& io, std::ostream& out) {
  const Interp I = io.model(o.model);
  const Signature sig = I.signature();
  const ArityRel r = eval_term(parse_term(o.text, &sig), EvalEnv(I));
  json tuples = json::array();
  for (const Tuple& t : r.tuples()) {
    json row = json::array();
    for (Elem e : t) row.push_back(I.name(e));
    tuples.push_back(row);
  }
  if (o.json) {
    out << json{{"arity", r.arity()}, {"tuples", tuples}}.dump() << '\n';
  } else {
    out << "arity " << r.arity() << '\n';
    for (const auto& row : tuples) {
      std::string line = "(";
      for (std::size_t i = 0; i < row.size(); ++i) line += (i ? "," : "") + row[i].get<std::string>();
      out << line << ")\n";
    }
  }
  return kOk;
}

int run_reify(const Options& o, Io& io, std::ostream& out) {
  const Concept c = parse_concept(trim(io.read(o.concept_file)));
  const AlcqiConcept t = o.with_dom ? translate_with_dom(c) : translate(c);
  if (o.json) {
    out << json{{"concept", to_string(t)}, {"size", concept_size(t)}}.dump() << '\n';
  } else {
    out << to_string(t) << '\n';
  }
  return kOk;
}

int run_sat(const Options& o, Io& io, std::ostream& out) {
  const std::string text = trim(io.read(o.concept_file));
  TableauOptions opts;
  opts.seed = o.seed;
  opts.k_cap = o.k_cap;
  opts.step_budget = o.step_budget;
  const bool binary = o.logic == "alcqi" || (o.logic == "auto" && looks_binary(text));
  bool sat = false;
  std::uint64_t steps = 0;
  std::string root;
  std::optional<Interp> witness;
  if (binary) {
    AlcqiResult r = alcqi_sat(parse_alcqi(text), opts);
    sat = r.sat;
    steps = r.steps;
    witness = std::move(r.witness);
    if (sat) root = witness->name(0);
  } else {
    AlcqpResult r = alcqp_sat(parse_concept(text), opts);
    sat = r.sat;
    steps = r.steps;
    witness = std::move(r.witness);
    root = r.root;
  }
  if (sat && !o.witness.empty()) write_file(o.witness, interp_to_json(*witness));
  if (o.json) {
    json j{{"sat", sat}, {"logic", binary ? "alcqi" : "alcqp"}, {"steps", steps}};
    if (sat) j["root"] = root;
    out << j.dump() << '\n';
  } else {
    out << (sat ? "sat" : "unsat") << '\n';
  }
  return sat ? kOk : kUnsat;
}

int run_oracle(const Options& o, Io& io, std::ostream& out) {
  const Concept c = parse_concept(trim(io.read(o.concept_file)));
  const std::size_t bound = o.max_domain ? o.max_domain : domain_bound(c);
  OracleOptions opts;
  opts.node_budget = o.node_budget;
  opts.minimize = !o.no_minimize;
  const OracleResult r = oracle_sat(c, bound, opts);
  if (r.sat && !o.witness.empty()) write_file(o.witness, interp_to_json(*r.witness));
  if (o.json) {
    json j{{"sat", r.sat}, {"max_domain", bound}, {"nodes", r.nodes}};
    if (r.sat) j["domain_size"] = r.witness->domain_size();
    out << j.dump() << '\n';
  } else if (r.sat) {
    out << "sat (domain size " << r.witness->domain_size() << ")\n";
  } else {
    out << "unsat (domain size <= " << bound << ")\n";
  }
  return r.sat ? kOk : kUnsat;
}

int run_unravel(const Options& o, Io& io, std::ostream& out) {
  const Interp I = io.model(o.model);
  const UnravelResult r = g_unravel(I, o.root, o.depth, o.unravel_budget);
  json j = json::parse(interp_to_json(r.tree));
  json canon = json::object();
  for (Elem e = 0; e < r.tree.domain_size(); ++e) canon[r.tree.name(e)] = I.name(r.canon[e]);
  j["canon"] = canon;
  out << (o.json ? j.dump() : j.dump(2)) << '\n';
  return kOk;
}

int run_bridge(const Options& o, std::ostream& out) {
  if (o.to_gra.empty() == o.to_alc.empty()) {
    throw CLI::ValidationError("bridge", "give exactly one of --to-gra and --to-alc");
  }
  std::string result;
  std::string kind;
  if (!o.to_gra.empty()) {
    result = to_string(to_gra(parse_concept(o.to_gra)));
    kind = "term";
  } else {
    const GraTerm t = parse_term(o.to_alc);
    Signature sig;
    for (const auto& r : o.roles) sig.roles.emplace(r, 2);
    // Atoms not declared as roles are read as concept names.
    std::vector<GraTerm> stack{t};
    while (!stack.empty()) {
      GraTerm cur = stack.back();
      stack.pop_back();
      if (cur.kind() == TermKind::Atom && !sig.roles.count(cur.name())) sig.concepts.insert(cur.name());
      for (const auto& x : cur.operands()) stack.push_back(x);
    }
    const AlcTranslation a = to_alc(t, sig);
    result = a.is_role ? a.role : to_string(a.value);
    kind = a.is_role ? "role" : "concept";
  }
  if (o.json) {
    out << json{{kind, result}}.dump() << '\n';
  } else {
    out << result << '\n';
  }
  return kOk;
}

int run_game(const Options& o, Io& io, std::ostream& out) {
  if (o.grading == 0) throw ValidationError("--grading must be at least 1");
  const Interp A = io.model(o.model);
  const Interp B = io.model(o.model_b);
  const GameResult r = play_game(A, element(A, o.point_a), B, element(B, o.point_b), o.rounds, o.grading);
  const std::string winner = r.duplicator_wins ? "duplicator" : "spoiler";
  if (o.json) {
    json j{{"winner", winner}};
    if (o.trace) j["trace"] = r.trace;
    out << j.dump() << '\n';
  } else {
    out << winner << '\n';
    if (o.trace) out << r.trace << '\n';
  }
  return kOk;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
             std::ostream& err) {
  Options o;
  CLI::App app{"Polyadic description logic toolkit", "polydl"};
  app.require_subcommand(1);
  app.add_flag("--json", o.json, "Machine-readable output");

  auto* check = app.add_subcommand("check", "Extension of a concept in a model");
  check->add_option("model", o.model, "Model JSON file")->required();
  check->add_option("concept", o.text, "Concept text")->required();

  auto* eval = app.add_subcommand("eval-gra", "Evaluate a relation-algebra term");
  eval->add_option("model", o.model, "Model JSON file")->required();
  eval->add_option("term", o.text, "Term text")->required();

  auto* reify = app.add_subcommand("reify", "Translate a polyadic concept to ALCQI");
  reify->add_option("concept-file", o.concept_file, "File holding the concept")->required();
  reify->add_flag("--with-dom", o.with_dom, "Conjoin @dom");

  auto* sat = app.add_subcommand("sat", "Decide satisfiability with the tableau");
  sat->add_option("concept-file", o.concept_file, "File holding the concept")->required();
  sat->add_option("--witness", o.witness, "Write the witness model here");
  sat->add_option("--logic", o.logic, "Input language")
      ->check(CLI::IsMember({"auto", "alcqp", "alcqi"}));
  sat->add_option("--seed", o.seed, "Exploration seed (0 keeps the fixed order)");
  sat->add_option("--k-cap", o.k_cap, "Largest count the tableau instantiates");
  sat->add_option("--step-budget", o.step_budget, "Rule applications before giving up");

  auto* oracle = app.add_subcommand("oracle-sat", "Decide satisfiability by bounded model search");
  oracle->add_option("concept-file", o.concept_file, "File holding the concept")->required();
  oracle->add_option("--max-domain", o.max_domain, "Domain bound (default: tree-model bound)");
  oracle->add_option("--node-budget", o.node_budget, "Search nodes before giving up");
  oracle->add_option("--witness", o.witness, "Write the witness model here");
  oracle->add_flag("--no-minimize", o.no_minimize, "Keep the first witness found");

  auto* unravel = app.add_subcommand("unravel", "Depth-bounded g-unraveling of a binary model");
  unravel->add_option("model", o.model, "Model JSON file")->required();
  unravel->add_option("--root", o.root, "Root element")->required();
  unravel->add_option("--depth", o.depth, "Walk length")->required();
  unravel->add_option("--node-budget", o.unravel_budget, "Largest tree allowed");

  auto* bridge = app.add_subcommand("bridge", "Translate between ALC and the algebra");
  bridge->add_option("--to-gra", o.to_gra, "ALC concept to translate");
  bridge->add_option("--to-alc", o.to_alc, "Term to translate");
  bridge->add_option("--roles", o.roles, "Binary role names (for --to-alc)")->delimiter(',');

  auto* game = app.add_subcommand("game", "Play the counting game on two pointed models");
  game->add_option("modelA", o.model, "First model")->required();
  game->add_option("a", o.point_a, "Point in the first model")->required();
  game->add_option("modelB", o.model_b, "Second model")->required();
  game->add_option("b", o.point_b, "Point in the second model")->required();
  game->add_option("--rounds", o.rounds, "Rounds k");
  game->add_option("--grading", o.grading, "Grading p");
  game->add_flag("--trace", o.trace, "Print a winning first move");

  // Subcommands accept the global flag in any position.
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  Io io(in);
  try {
    if (check->parsed()) return run_check(o, io, out);
    if (eval->parsed()) return run_eval(o, io, out);
    if (reify->parsed()) return run_reify(o, io, out);
    if (sat->parsed()) return run_sat(o, io, out);
    if (oracle->parsed()) return run_oracle(o, io, out);
    if (unravel->parsed()) return run_unravel(o, io, out);
    if (bridge->parsed()) return run_bridge(o, out);
    if (game->parsed()) return run_game(o, io, out);
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace polydl
