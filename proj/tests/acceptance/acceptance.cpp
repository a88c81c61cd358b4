// Acceptance runner: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "polydl/bridge.hpp"
#include "polydl/error.hpp"
#include "polydl/game.hpp"
#include "polydl/gra.hpp"
#include "polydl/reify.hpp"
#include "polydl/semantics.hpp"
#include "polydl/tableau.hpp"
#include "polydl/unravel.hpp"
#include "support/support.hpp"

#ifndef POLYDL_CLI_PATH
#define POLYDL_CLI_PATH "polydl"
#endif

using namespace polydl;
namespace t = polydl::testing;

namespace {

// Pinned limits and tolerances.
constexpr double kLimitPerms = 1.0;
constexpr double kLimitLaws = 30.0;
constexpr double kLimitLantern = 60.0;
constexpr double kLimitPipeline = 600.0;
constexpr double kLimitGame = 300.0;
constexpr std::size_t kCorpusSize = 600;
constexpr std::uint64_t kCorpusSeed = 20261019;
// Largest accepted |T(C)| / (|C| * maxArity) and log-log slope of |T(C)|
// against |C| at fixed arity.
constexpr double kSizeCeiling = 30.0;
constexpr double kSlopeCeiling = 1.10;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(double x, int digits = 2) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(digits);
  s << x;
  return s.str();
}

// Records the first few failures.
class Failures {
 public:
  void add(const std::string& what) {
    if (count_++ < 3) first_ += (first_.empty() ? "" : "; ") + what;
  }
  std::size_t count() const { return count_; }
  std::string summary() const { return count_ == 0 ? "" : " first: " + first_; }

 private:
  std::size_t count_ = 0;
  std::string first_;
};

// ---------------------------------------------------------------------------
// 1

Outcome permutations() {
  Outcome o;
  std::ostringstream detail;
  for (std::size_t n = 2; n <= 4; ++n) {
    std::set<Permutation> brute;
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), 0);
    do brute.insert(Permutation::from_sources(v));
    while (std::next_permutation(v.begin(), v.end()));

    // Every word up to length 12, applied both through perm_of_word and
    // through the relation operators on the identity tuple.
    std::set<Permutation> reached;
    Tuple id(n);
    std::iota(id.begin(), id.end(), 0);
    for (std::size_t len = 0; len <= 12; ++len) {
      for (std::size_t bits = 0; bits < (std::size_t{1} << len); ++bits) {
        std::string w;
        for (std::size_t i = 0; i < len; ++i) w += (bits >> i & 1) ? 's' : 'p';
        const Permutation perm = perm_of_word(PermWord(w), n);
        ArityRel r(n, {id});
        for (char c : w) r = c == 'p' ? apply_p(r) : apply_s(r);
        if (*r.begin() != perm.apply(id)) {
          o.pass = false;
          detail << "word " << w << " disagrees with the operators at n=" << n << "; ";
        }
        reached.insert(perm);
      }
    }
    if (reached != brute) o.pass = false;
    for (const Permutation& p : brute) {
      if (perm_of_word(word_of_perm(p), n) != p) o.pass = false;
    }
    detail << "n=" << n << ": " << reached.size() << "/" << brute.size() << " ";
  }
  o.detail = detail.str();
  return o;
}

// ---------------------------------------------------------------------------
// 2

Outcome operator_laws() {
  Signature sig;
  sig.concepts = {"A", "B"};
  sig.roles = {{"R", 2}, {"T", 3}, {"Q", 4}};
  const std::vector<std::string> terms{"p(T)",  "s(Q)",         "I(Q)",   "neg(T)", "join(A, R)",
                                       "ex(Q)", "e",            "ex1(T)", "neg1(A)", "dotcap(T, R)",
                                       "cap1(R, A)", "neg(E3)", "I(T)"};
  const std::vector<std::string> operands{"A", "B", "R", "T", "Q", "top", "bot", "E2", "E1", "neg(A)"};
  Failures f;
  t::Rng rng(101);
  std::size_t checks = 0;
  for (int i = 0; i < 500; ++i) {
    const std::size_t n = 1 + t::pick(rng, 5);
    Interp I = random_interp(1000 + i, n, sig, i % 7 == 0 ? 0.0 : 0.3);
    for (std::size_t k = 1; k <= 4; ++k) I.set_role("E" + std::to_string(k), ArityRel(k));
    std::vector<ArityRel> rels{ArityRel(0), ArityRel(0, {{}})};
    for (const auto& [_, r] : I.roles()) rels.push_back(r);
    for (const auto& [_, c] : I.concepts()) rels.push_back(unary_rel(c));
    for (const ArityRel& r : rels) {
      ArityRel q = r;
      for (std::size_t k = 0; k < r.arity(); ++k) q = apply_p(q);
      if (q != r) f.add("p^n");
      if (apply_s(apply_s(r)) != r) f.add("ss");
      if (complement(complement(r, n), n) != r) f.add("neg neg at arity " + std::to_string(r.arity()));
      checks += 3;
    }

    std::vector<Elem> g(n);
    std::iota(g.begin(), g.end(), 0);
    std::shuffle(g.begin(), g.end(), rng);
    const Interp J = permute_elements(I, g);
    const EvalEnv ei(I), ej(J);
    const Signature full = I.signature();
    for (const auto& text : terms) {
      const GraTerm term = parse_term(text, &full);
      std::set<Tuple> mapped;
      const ArityRel a = eval_term(term, ei);
      for (Tuple tup : a) {
        for (auto& e : tup) e = g[e];
        mapped.insert(tup);
      }
      if (ArityRel(a.arity(), mapped) != eval_term(term, ej)) f.add("isomorphism on " + text);
      ++checks;
    }

    for (const auto& x : operands) {
      for (const auto& y : operands) {
        const GraTerm tx = parse_term(x, &full), ty = parse_term(y, &full);
        if (std::min(arity_of_term(tx, full), arity_of_term(ty, full)) > 1) continue;
        const ArityRel lhs = eval_term(GraTerm::binary(TermKind::Cap1, tx, ty), ei);
        const ArityRel rhs =
            eval_term(GraTerm::unary(TermKind::Ex1, GraTerm::binary(TermKind::DotCap, tx, ty)), ei);
        if (lhs != rhs) f.add("cap1(" + x + ", " + y + ")");
        ++checks;
      }
    }
  }
  return {f.count() == 0, std::to_string(checks) + " checks, " + std::to_string(f.count()) + " violations" +
                              f.summary()};
}

// ---------------------------------------------------------------------------
// 3 and 4

Signature poly_sig() {
  Signature sig;
  sig.concepts = {"A", "B"};
  sig.roles = {{"R", 2}, {"T", 3}, {"Q", 4}};
  return sig;
}

Outcome lantern_models() {
  t::Rng rng(103);
  Failures f;
  std::size_t triples = 0, modal = 0;
  for (int i = 0; triples < 300; ++i) {
    const Interp I = random_interp(2000 + i, 1 + t::pick(rng, 4), poly_sig(), 0.3);
    const Concept c = t::random_concept(rng, poly_sig(), 2, 3);
    const ElemSet ext = check_concept(c, I);
    if (ext.empty()) continue;
    const ReifySignature sig = ReifySignature::of(I.signature());
    const Interp L = lanternize(I, sig);
    const ElemSet there =
        check_alcqi(AlcqiConcept::conjunction(AlcqiConcept::atomic("@dom"), translate(c, sig)), L);
    for (Elem a : ext.elements()) {
      ++triples;
      modal += modal_depth(c) > 0;
      if (!there.contains(*L.find(I.name(a)))) f.add(to_string(c) + " at " + I.name(a));
    }
  }
  return {f.count() == 0 && modal >= 100,
          std::to_string(triples) + " triples (" + std::to_string(modal) + " with restrictions), " +
              std::to_string(f.count()) + " failures" + f.summary()};
}

// Copies some lanterns of a lantern model, labels and F-edges included.
Interp duplicate_lanterns(const Interp& L, t::Rng& rng) {
  Interp out = L;
  const ElemSet& dom = L.concept_ext("@dom");
  for (Elem l = 0; l < L.domain_size(); ++l) {
    if (dom.contains(l) || t::pick(rng, 2) == 0) continue;
    const std::size_t copies = 1 + t::pick(rng, 2);
    for (std::size_t c = 0; c < copies; ++c) {
      const Elem d = out.add_element(L.name(l) + "#" + std::to_string(c));
      for (const auto& [name, ext] : L.concepts()) {
        if (ext.contains(l)) out.add_to_concept(name, d);
      }
      for (const auto& [name, rel] : L.roles()) {
        for (const auto& tup : rel) {
          if (tup[0] == l) out.add_tuple(name, {d, tup[1]});
        }
      }
    }
  }
  return out;
}

Outcome extraction() {
  t::Rng rng(107);
  Failures f;
  std::size_t round_trips = 0;
  for (int i = 0; i < 300; ++i) {
    const Interp I = random_interp(3000 + i, 1 + t::pick(rng, 4), poly_sig(), 0.3);
    const ReifySignature sig = ReifySignature::of(I.signature());
    const Interp back = extract_polyadic(lanternize(I, sig), sig);
    ++round_trips;
    if (!same_structure(back.restricted_to(I.signature()), I)) f.add("round trip of model " + std::to_string(i));
  }

  // Duplicated lanterns: wherever @dom and T(C) hold, unravelling and
  // extracting gives a polyadic model of C at the root.
  std::size_t checked = 0, inflated = 0;
  for (int i = 0; checked < 300 && i < 5000; ++i) {
    // Unravelling lantern models branches fast; two elements suffice.
    const Interp I = random_interp(4000 + i, 1 + t::pick(rng, 2), poly_sig(), 0.3);
    const ReifySignature sig = ReifySignature::of(I.signature());
    const Interp L = duplicate_lanterns(lanternize(I, sig), rng);
    const Concept c = t::random_concept(rng, poly_sig(), 2, 3);
    const AlcqiConcept tc = AlcqiConcept::conjunction(AlcqiConcept::atomic("@dom"), translate(c, sig));
    const ElemSet holds = check_alcqi(tc, L);
    const ElemSet original = check_concept(c, I);
    for (Elem a : holds.elements()) {
      ++checked;
      if (a < I.domain_size() && !original.contains(a)) ++inflated;
      const UnravelResult u = g_unravel(L, a, modal_depth(tc));
      const Interp P = extract_polyadic(u.tree, sig);
      const auto root = P.find("(" + L.name(a) + ")");
      if (!root || !check_concept(c, P).contains(*root)) f.add(to_string(c) + " at " + L.name(a));
    }
  }
  return {f.count() == 0 && checked >= 200 && inflated > 0,
          std::to_string(round_trips) + " round trips, " + std::to_string(checked) +
              " duplicated-lantern points (" + std::to_string(inflated) + " where duplicates change the verdict), " +
              std::to_string(f.count()) + " failures" + f.summary()};
}

// ---------------------------------------------------------------------------
// 5

Outcome unravelling() {
  Signature sig;
  sig.concepts = {"A", "B"};
  sig.roles = {{"R", 2}, {"S", 2}};
  t::Rng rng(109);
  Failures f;
  std::size_t checks = 0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + t::pick(rng, 4);
    const Interp I = random_interp(5000 + i, n, sig, 0.35);
    const Elem root = t::pick(rng, n);
    const std::size_t d = 1 + t::pick(rng, 3);
    const UnravelResult u = g_unravel(I, root, d);
    for (int j = 0; j < 30; ++j) {
      const AlcqiConcept c = t::random_alcqi(rng, sig, t::pick(rng, d + 1), 3);
      ++checks;
      if (check_alcqi(c, u.tree).contains(0) != check_alcqi(c, I).contains(root)) f.add(to_string(c));
    }
  }
  return {f.count() == 0, std::to_string(checks) + " root checks, " + std::to_string(f.count()) + " disagreements" +
                              f.summary()};
}

// ---------------------------------------------------------------------------
// 6

Outcome pipeline_vs_oracle() {
  const std::vector<Concept> corpus = t::sat_corpus(kCorpusSize, kCorpusSeed);
  Failures f;
  std::size_t sat = 0, unsat = 0;
  for (const Concept& c : corpus) {
    try {
      const OracleResult o = oracle_sat(c, domain_bound(c));
      const AlcqpResult r = alcqp_sat(c);
      if (o.sat != r.sat) {
        f.add("verdicts differ on " + to_string(c));
        continue;
      }
      (r.sat ? sat : unsat) += 1;
      if (!r.sat) continue;
      if (!check_concept(expand_shorthand(c), *r.witness).contains(*r.witness->find(r.root))) {
        f.add("tableau witness fails " + to_string(c));
      }
      if (!check_concept(expand_shorthand(c), *o.witness).contains(0)) f.add("oracle witness fails " + to_string(c));
    } catch (const BudgetExceeded& e) {
      f.add(std::string("budget on ") + to_string(c) + ": " + e.what());
    }
  }
  return {f.count() == 0 && corpus.size() >= 500 && unsat >= 50,
          std::to_string(corpus.size()) + " concepts, " + std::to_string(sat) + " sat, " + std::to_string(unsat) +
              " unsat, " + std::to_string(f.count()) + " failures" + f.summary()};
}

// ---------------------------------------------------------------------------
// 7

double ratio(const Concept& c) {
  const ReifySignature sig = ReifySignature::of(c);
  return static_cast<double>(concept_size(translate(c, sig))) /
         static_cast<double>(concept_size(c) * std::max<std::size_t>(sig.max_arity, 1));
}

// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<std::pair<double, double>>& pts) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : pts) {
    sx += std::log(x);
    sy += std::log(y);
    sxx += std::log(x) * std::log(x);
    sxy += std::log(x) * std::log(y);
  }
  const double n = static_cast<double>(pts.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Outcome translation_size() {
  double c_fit = 0;
  std::size_t measured = 0;
  for (const Concept& c : t::sat_corpus(kCorpusSize, kCorpusSeed)) {
    c_fit = std::max(c_fit, ratio(c));
    ++measured;
  }

  // Growing families over one role of each arity: nesting and wide
  // conjunctions.
  double worst_slope = 0;
  std::ostringstream slopes;
  for (std::size_t n = 2; n <= 4; ++n) {
    const RoleExpr role{"R", n, PermWord(n > 2 ? "ps" : "s")};
    std::vector<Concept> fill(n - 1, Concept::atomic("A"));
    for (int family = 0; family < 2; ++family) {
      std::vector<std::pair<double, double>> pts;
      Concept c = Concept::atomic("B");
      for (int step = 1; step <= 40; ++step) {
        std::vector<Concept> args = fill;
        if (family == 0) {
          args.back() = Concept::negation(c);
          c = Concept::at_least(Count(1 + step % 3), role, args);
        } else {
          c = Concept::conjunction(c, Concept::at_least(Count(1 + step % 3), role, args));
        }
        const double size = static_cast<double>(concept_size(c));
        pts.emplace_back(size, static_cast<double>(concept_size(translate(c))));
        c_fit = std::max(c_fit, ratio(c));
        ++measured;
      }
      const double slope = loglog_slope(pts);
      worst_slope = std::max(worst_slope, slope);
      slopes << (family == 0 ? " nest" : " wide") << n << "=" << fmt(slope, 3);
    }
  }
  return {c_fit <= kSizeCeiling && worst_slope <= kSlopeCeiling,
          "c=" + fmt(c_fit) + " over " + std::to_string(measured) + " concepts; slopes" + slopes.str()};
}

// ---------------------------------------------------------------------------
// 8

Outcome bridge_semantics() {
  Signature sig;
  sig.concepts = {"A", "B"};
  sig.roles = {{"R", 2}, {"S", 2}};
  const std::vector<Concept> concepts = t::all_alc_concepts(sig, 6, 3);
  const std::vector<GraTerm> terms = t::all_gra2_terms(sig, 6);
  std::vector<GraTerm> to_terms;
  for (const Concept& c : concepts) to_terms.push_back(to_gra(c));
  std::vector<AlcTranslation> to_concepts;
  for (const GraTerm& term : terms) to_concepts.push_back(to_alc(term, sig));

  Failures f;
  for (int i = 0; i < 200; ++i) {
    const Interp I = random_interp(6000 + i, 1 + i % 5, sig, 0.4);
    const EvalEnv env(I);
    for (std::size_t j = 0; j < concepts.size(); ++j) {
      if (eval_term(to_terms[j], env) != unary_rel(check_concept(concepts[j], I))) f.add(to_string(concepts[j]));
    }
    for (std::size_t j = 0; j < terms.size(); ++j) {
      const AlcTranslation& s = to_concepts[j];
      const ArityRel want = s.is_role ? I.role_ext(s.role) : unary_rel(check_concept(s.value, I));
      if (eval_term(terms[j], env) != want) f.add(to_string(terms[j]));
    }
  }
  return {f.count() == 0, std::to_string(concepts.size()) + " concepts and " + std::to_string(terms.size()) +
                              " terms on 200 models, " + std::to_string(f.count()) + " mismatches" + f.summary()};
}

// ---------------------------------------------------------------------------
// 9

Outcome game_soundness() {
  Signature sig;
  sig.concepts = {"A"};
  sig.roles = {{"R", 2}};
  std::vector<Interp> models;
  for (std::size_t n = 1; n <= 3; ++n) {
    for (auto& I : t::all_interps(sig, n)) models.push_back(std::move(I));
  }
  std::vector<const Interp*> ptrs;
  std::vector<std::pair<std::size_t, Elem>> points;
  for (std::size_t m = 0; m < models.size(); ++m) {
    ptrs.push_back(&models[m]);
    for (Elem e = 0; e < models[m].domain_size(); ++e) points.emplace_back(m, e);
  }

  Failures f;
  t::Rng rng(113);
  std::size_t sampled = 0, distinguished = 0;
  std::ostringstream sizes;
  for (std::size_t k = 0; k <= 2; ++k) {
    for (std::size_t p = 1; p <= 2; ++p) {
      const std::vector<Concept> concepts = enumerate_concepts(sig, k, p);
      std::vector<std::vector<bool>> profile(points.size());
      for (std::size_t m = 0, i = 0; m < models.size(); ++m) {
        std::vector<ElemSet> ext;
        for (const Concept& c : concepts) ext.push_back(check_concept(c, models[m]));
        for (Elem e = 0; e < models[m].domain_size(); ++e, ++i) {
          for (const ElemSet& s : ext) profile[i].push_back(s.contains(e));
        }
      }
      const std::vector<std::size_t> cls = game_classes(ptrs, k, p);
      // Duplicator-equivalent points agree on every concept; differing
      // profiles force different classes, i.e. a spoiler win.
      std::map<std::size_t, std::size_t> rep;
      for (std::size_t i = 0; i < points.size(); ++i) {
        const auto [it, fresh] = rep.emplace(cls[i], i);
        if (!fresh && profile[it->second] != profile[i]) {
          f.add("class " + std::to_string(cls[i]) + " splits at k=" + std::to_string(k) + " p=" + std::to_string(p));
        }
      }
      sizes << " k" << k << "p" << p << ":" << concepts.size() << "c/" << rep.size() << "cl";

      // The classes are the minimax relation: sampled pairs, half of them
      // with distinct profiles.
      for (int s = 0; s < 400; ++s) {
        const std::size_t i = t::pick(rng, points.size());
        std::size_t j = t::pick(rng, points.size());
        if (s % 2 == 0) {
          for (int tries = 0; tries < 50 && profile[i] == profile[j]; ++tries) j = t::pick(rng, points.size());
        }
        const auto [mi, ei] = points[i];
        const auto [mj, ej] = points[j];
        const bool dup = duplicator_wins(models[mi], ei, models[mj], ej, k, p);
        ++sampled;
        if (dup != (cls[i] == cls[j])) f.add("minimax disagrees with classes");
        if (profile[i] != profile[j]) {
          ++distinguished;
          if (dup) f.add("distinguishing concept without a spoiler win");
        }
      }
    }
  }
  return {f.count() == 0, std::to_string(points.size()) + " points;" + sizes.str() + "; " +
                              std::to_string(sampled) + " minimax pairs (" + std::to_string(distinguished) +
                              " distinguished), " + std::to_string(f.count()) + " failures" + f.summary()};
}

// ---------------------------------------------------------------------------
// 10

std::string run_capture(const std::string& command) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return "<popen failed>";
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return out + "\n[status " + std::to_string(status) + "]";
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  Failures f;
  std::size_t verdicts = 0;
  for (const Concept& c : t::sat_corpus(300, kCorpusSeed + 1)) {
    const bool base = alcqp_sat(c).sat;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      TableauOptions o;
      o.seed = seed;
      ++verdicts;
      if (alcqp_sat(c, o).sat != base) f.add("seed " + std::to_string(seed) + " on " + to_string(c));
    }
  }
  Signature bin;
  bin.concepts = {"A", "B"};
  bin.roles = {{"F", 2}, {"G", 2}};
  t::Rng rng(127);
  for (int i = 0; i < 300; ++i) {
    const AlcqiConcept c = t::random_alcqi(rng, bin, 2, 3);
    const bool base = alcqi_sat(c).sat;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      TableauOptions o;
      o.seed = seed;
      ++verdicts;
      if (alcqi_sat(c, o).sat != base) f.add("seed " + std::to_string(seed) + " on " + to_string(c));
    }
  }

  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "polydl_acceptance";
  fs::create_directories(dir);
  std::ofstream(dir / "c.txt") << ">=2 R^pp.(A, >=1 S.(B)) and not >=1 R.(A, top)\n";
  std::ofstream(dir / "u.txt") << ">=2 R.(A, not A) and not >=1 R.(A, top)\n";
  std::ofstream(dir / "m.json")
      << R"({"domain":["a","b","c"],"concepts":{"A":["b"]},"roles":{"R":{"arity":3,"tuples":[["a","b","c"],["b","c","a"]]},"F":{"arity":2,"tuples":[["a","b"],["b","c"],["c","a"]]}}})";
  std::ofstream(dir / "n.json")
      << R"({"domain":["x","y"],"concepts":{"A":["y"]},"roles":{"F":{"arity":2,"tuples":[["x","y"],["y","y"]]}}})";
  const std::string cli = std::string("'") + POLYDL_CLI_PATH + "'";
  const std::string d = "'" + dir.string() + "'/";
  const std::vector<std::string> pipelines{
      cli + " sat " + d + "c.txt --seed 7 --witness " + d + "w.json && cat " + d + "w.json",
      cli + " --json sat " + d + "u.txt",
      cli + " oracle-sat " + d + "c.txt --witness " + d + "o.json && cat " + d + "o.json",
      cli + " reify " + d + "c.txt --with-dom | " + cli + " sat - --seed 3",
      cli + " check " + d + "m.json '>=1 R^p.(A, top)'",
      cli + " --json eval-gra " + d + "m.json 'join(p(R), s(F))'",
      cli + " unravel " + d + "n.json --root x --depth 3",
      cli + " bridge --to-gra 'E F.(not A and E F.(A))'",
      cli + " game " + d + "m.json a " + d + "n.json x --rounds 2 --grading 2 --trace",
  };
  std::size_t identical = 0;
  for (const auto& cmd : pipelines) {
    const std::string first = run_capture(cmd);
    const std::string second = run_capture(cmd);
    // Exit 0 (sat / ok) and 1 (unsat) are verdicts; anything else is an error.
    const bool verdict = first.ends_with("[status 0]") || first.ends_with("[status 256]");
    if (first == second && verdict) {
      ++identical;
    } else {
      f.add("pipeline differs or fails: " + cmd);
    }
  }
  fs::remove_all(dir);
  return {f.count() == 0, std::to_string(verdicts) + " seeded verdicts, " + std::to_string(identical) + "/" +
                              std::to_string(pipelines.size()) + " CLI pipelines identical" + f.summary()};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit;  // seconds; 0 means none
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "permutation completeness", kLimitPerms, permutations},
      {2, "algebra operator laws", kLimitLaws, operator_laws},
      {3, "lantern models satisfy the translation", kLimitLantern, lantern_models},
      {4, "extraction inverts lanternization", 0, extraction},
      {5, "bounded unravelling preserves concepts", 0, unravelling},
      {6, "tableau pipeline agrees with the oracle", kLimitPipeline, pipeline_vs_oracle},
      {7, "translation size is linear", 0, translation_size},
      {8, "ALC and the unary algebra fragment agree", 0, bridge_semantics},
      {9, "game soundness", kLimitGame, game_soundness},
      {10, "determinism", 0, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string timing = fmt(secs) + "s";
    if (c.limit > 0) {
      timing += " of " + fmt(c.limit, 0) + "s";
      if (secs > c.limit) o.pass = false;
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << c.id << " " << c.name << ": " << o.detail << " [" << timing
              << "]" << std::endl;
  }
  return failed;
}
