#include <algorithm>
#include <numeric>
#include <set>

#include "doctest.h"
#include "polydl/error.hpp"
#include "polydl/syntax.hpp"
#include "support/support.hpp"

using namespace polydl;

namespace {

Signature ternary_r() {
  Signature s;
  s.concepts = {"A", "B"};
  s.roles = {{"R", 3}};
  return s;
}

std::vector<std::size_t> one_based(const Permutation& p) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < p.size(); ++i) out.push_back(p.source(i) + 1);
  return out;
}

}  // namespace

TEST_CASE("count parses and compares arbitrary magnitudes") {
  auto big = Count::parse("123456789012345678901234567890");
  REQUIRE(big);
  CHECK_FALSE(big->to_u64());
  CHECK(*big > Count(1));
  CHECK(Count::parse("007")->str() == "7");
  CHECK_FALSE(Count::parse("7a"));
  CHECK(Count(9).succ() == Count(10));
  CHECK(Count(10).pred() == Count(9));
  CHECK(Count::parse("1000000000000000000000")->pred().str() == "999999999999999999999");
}

TEST_CASE("parse a counting restriction with a permutation word") {
  const Signature sig = ternary_r();
  const Concept c = parse_concept(">=2 R^pp.(A, not B)", &sig);
  REQUIRE(c.kind() == ConceptKind::AtLeast);
  CHECK(c.count() == Count(2));
  CHECK(c.role().name == "R");
  CHECK(c.role().arity == 3);
  CHECK(c.role().word.ops == "pp");
  REQUIRE(c.args().size() == 2);
  CHECK(c.args()[0] == Concept::atomic("A"));
  CHECK(c.args()[1] == Concept::negation(Concept::atomic("B")));
}

TEST_CASE("parse booleans") {
  const Concept c = parse_concept("top and not bot");
  CHECK(c == Concept::conjunction(Concept::top(), Concept::negation(Concept::bot())));
}

TEST_CASE("parse errors") {
  const Signature sig = ternary_r();
  CHECK_THROWS_WITH_AS(parse_concept(">=1 R.(A)", &sig), doctest::Contains("arity mismatch"), ParseError);
  CHECK_THROWS_AS(parse_concept(">=0 R.(A, B)"), ParseError);
  CHECK_THROWS_WITH_AS(parse_concept(">=1 R.(A) and >=1 R.(A, B)"), doctest::Contains("arity mismatch"), ParseError);
  CHECK_THROWS_AS(parse_concept("@dom"), ParseError);
  CHECK_THROWS_AS(parse_concept(">=1 R.(A"), ParseError);
  try {
    parse_concept("A and and B");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 6);
  }
}

TEST_CASE("the E and A quantifiers need a role name after them") {
  CHECK(parse_concept("A and not A").kind() == ConceptKind::And);
  CHECK(parse_concept("E R.(A)").kind() == ConceptKind::Exists);
  CHECK(parse_concept("A R.(A)").kind() == ConceptKind::Forall);
}

TEST_CASE("shorthand expansion") {
  const Concept exists = expand_shorthand(parse_concept("E R.(A, B)"));
  CHECK(exists == parse_concept(">=1 R.(A, B)"));

  const Concept forall = expand_shorthand(parse_concept("A R.(A)"));
  CHECK(forall == parse_concept("not >=1 R.(not A)"));

  const Concept exactly = expand_shorthand(parse_concept("=2 R.(top)"));
  CHECK(exactly == parse_concept(">=2 R.(top) and not >=3 R.(top)"));

  CHECK(expand_shorthand(parse_concept("<3 R.(A)")) == parse_concept("not >=3 R.(A)"));

  testing::Rng rng(11);
  Signature sig;
  sig.concepts = {"A", "B"};
  sig.roles = {{"R", 2}, {"T", 3}};
  for (int i = 0; i < 200; ++i) {
    CHECK(is_core(expand_shorthand(testing::random_concept(rng, sig, 3, 3, true))));
  }
}

TEST_CASE("permutation words") {
  CHECK(one_based(perm_of_word(PermWord("pp"), 4)) == std::vector<std::size_t>{3, 4, 1, 2});
  CHECK(one_based(perm_of_word(PermWord("pp"), 3)) == std::vector<std::size_t>{2, 3, 1});
  for (std::size_t n = 1; n <= 5; ++n) CHECK(perm_of_word(PermWord(), n).is_identity());
  CHECK(perm_of_word(PermWord("psps"), 1).is_identity());
  CHECK_THROWS_AS(PermWord("pq"), std::invalid_argument);

  for (std::size_t n = 2; n <= 5; ++n) {
    CHECK(perm_of_word(PermWord(std::string(n, 'p')), n).is_identity());
    CHECK(perm_of_word(PermWord("ss"), n).is_identity());
  }

  // Word application composes.
  testing::Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    std::string a, b;
    for (std::size_t k = testing::pick(rng, 6); k > 0; --k) a += testing::pick(rng, 2) ? 'p' : 's';
    for (std::size_t k = testing::pick(rng, 6); k > 0; --k) b += testing::pick(rng, 2) ? 'p' : 's';
    const std::size_t n = 2 + testing::pick(rng, 4);
    CHECK(perm_of_word(PermWord(a + b), n) ==
          perm_of_word(PermWord(a), n).then(perm_of_word(PermWord(b), n)));
    const Permutation p = perm_of_word(PermWord(a), n);
    CHECK(p.then(p.inverse()).is_identity());
    CHECK(perm_of_word(word_of_perm(p), n) == p);
  }
}

TEST_CASE("words of length at most 6 reach every permutation of three coordinates") {
  std::set<Permutation> reached;
  std::vector<std::string> frontier{""};
  for (int len = 0; len <= 6; ++len) {
    std::vector<std::string> next;
    for (const auto& w : frontier) {
      reached.insert(perm_of_word(PermWord(w), 3));
      next.push_back(w + "p");
      next.push_back(w + "s");
    }
    frontier = std::move(next);
  }
  std::set<Permutation> all;
  std::vector<std::size_t> s{0, 1, 2};
  do {
    all.insert(Permutation::from_sources(s));
  } while (std::next_permutation(s.begin(), s.end()));
  CHECK(reached == all);
}

TEST_CASE("word_of_perm prefers s") {
  CHECK(word_of_perm(perm_of_word(PermWord("p"), 2)).ops == "s");
  CHECK(word_of_perm(Permutation::identity(3)).ops.empty());
}

TEST_CASE("print then parse is the identity") {
  testing::Rng rng(5);
  Signature sig;
  sig.concepts = {"A", "B"};
  sig.roles = {{"R", 2}, {"T", 3}};
  for (int i = 0; i < 300; ++i) {
    const Concept c = testing::random_concept(rng, sig, 3, 5, true);
    CHECK(parse_concept(to_string(c)) == c);
    const AlcqiConcept d = testing::random_alcqi(rng, sig, 3, 5);
    CHECK(parse_alcqi(to_string(d)) == d);
  }
  for (const auto& t : testing::all_gra2_terms(sig, 5)) CHECK(parse_term(to_string(t)) == t);
  const GraTerm t = parse_term("dotcap(join(p(R), I(s(T))), neg(ex(e)))");
  CHECK(parse_term(to_string(t)) == t);
  CHECK(to_string(parse_concept("  >=2   R^ps.( A ,B )")) == ">=2 R^ps.(A, B)");
}

TEST_CASE("term arities") {
  Signature sig;
  sig.concepts = {"A"};
  sig.roles = {{"R", 3}, {"S", 2}, {"Q", 3}};
  CHECK(arity_of_term(parse_term("I(R)"), sig) == 2);
  CHECK(arity_of_term(parse_term("join(S, R)"), sig) == 5);
  CHECK(arity_of_term(parse_term("cap1(S, S)"), sig) == 1);
  CHECK(arity_of_term(parse_term("e"), sig) == 2);
  CHECK(arity_of_term(parse_term("ex(A)"), sig) == 0);
  CHECK(arity_of_term(parse_term("ex(ex(A))"), sig) == 0);
  CHECK(arity_of_term(parse_term("dotcap(R, A)"), sig) == 3);
  CHECK(arity_of_term(parse_term("ex1(R)"), sig) == 1);
  CHECK(arity_of_term(parse_term("neg1(R)"), sig) == 1);
  CHECK(arity_of_term(parse_term("neg1(ex(A))"), sig) == 0);
  CHECK(arity_of_term(parse_term("I(A)"), sig) == 1);
  CHECK_THROWS_AS(arity_of_term(parse_term("Z"), sig), ValidationError);
}

TEST_CASE("signature of a concept") {
  const Signature sig = signature_of(parse_concept(">=1 R.(A, >=2 S^s.(B))"));
  CHECK(sig.concepts == std::set<std::string>{"A", "B"});
  CHECK(sig.roles == std::map<std::string, std::size_t>{{"R", 3}, {"S", 2}});
}
