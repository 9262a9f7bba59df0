#include <doctest.h>

#include "generators.h"
#include "oracles.h"
#include "regsyn/automaton.h"
#include "regsyn/error.h"
#include "regsyn/problem.h"
#include "test_util.h"

using namespace regsyn;
using namespace regsyn::testing;

namespace {

const std::map<std::string, std::size_t> kSymbols{{"g", 1}, {"k", 2}, {"a", 0}, {"b", 0}};

/** Accepts terms over {a, b, g} with an even number of g's. */
TreeAutomaton even_g()
{
  TreeAutomaton a(Alphabet({{"g", 1}, {"a", 0}, {"b", 0}}));
  a.add_transition("a", {}, 0);
  a.add_transition("b", {}, 0);
  a.add_transition("g", {0}, 1);
  a.add_transition("g", {1}, 0);
  a.set_accepting(0);
  return a;
}

}  // namespace

TEST_CASE("alphabets are sorted and merge by name")
{
  Alphabet sigma(kSymbols);
  REQUIRE(sigma.size() == 4);
  CHECK(sigma[0].name == "a");
  CHECK(sigma.index_of("k") == 3);
  CHECK_FALSE(sigma.index_of("z").has_value());
  CHECK(sigma.max_arity() == 2);

  Alphabet other({{"h", 1}, {"a", 0}});
  CHECK(sigma.merged_with(other).size() == 5);
  CHECK(error_kind([&] { sigma.merged_with(Alphabet({{"g", 2}})); }) == ErrorKind::AlphabetMismatch);
}

TEST_CASE("transitions are deterministic and checked against the alphabet")
{
  TreeAutomaton a = even_g();
  CHECK(a.num_states() == 2);
  CHECK(a.run(T("(g (g a))")) == State(0));
  CHECK(a.member(T("(g (g b))")));
  CHECK_FALSE(a.member(T("(g a)")));
  CHECK(error_kind([&] { a.add_transition("g", {0}, 0); }) == ErrorKind::Unsupported);
  CHECK(error_kind([&] { a.add_transition("z", {}, 0); }) == ErrorKind::AlphabetMismatch);
  CHECK(error_kind([&] { a.add_transition("g", {0, 1}, 0); }) == ErrorKind::AlphabetMismatch);
  CHECK(error_kind([&] { a.member(T("(h a)")); }) == ErrorKind::AlphabetMismatch);
}

TEST_CASE("completion adds a rejecting sink")
{
  TreeAutomaton a(Alphabet({{"g", 1}, {"a", 0}}));
  a.add_transition("a", {}, 0);
  a.set_accepting(0);
  CHECK_FALSE(a.is_complete());
  TreeAutomaton c = complete(a);
  CHECK(c.is_complete());
  CHECK(c.num_states() == 2);
  CHECK(c.member(T("a")));
  CHECK_FALSE(c.member(T("(g a)")));
  CHECK(c.run(T("(g (g a))")).has_value());
}

TEST_CASE("trim, emptiness and witnesses")
{
  TreeAutomaton a(Alphabet({{"g", 1}, {"a", 0}}));
  a.add_transition("a", {}, 0);
  a.add_transition("g", {0}, 1);
  a.add_transition("g", {1}, 2);
  a.add_state(3);
  a.set_accepting(2);
  a.set_accepting(3);  // unreachable
  TreeAutomaton t = trim(a);
  CHECK(t.num_states() == 3);
  CHECK(t.accepting().size() == 1);
  CHECK_FALSE(is_empty(a));
  CHECK(witness(a) == T("(g (g a))"));
  auto mins = minimal_terms(a);
  CHECK(mins.at(1) == T("(g a)"));
  CHECK(mins.count(3) == 0);

  TreeAutomaton dead(Alphabet({{"g", 1}, {"a", 0}}));
  dead.add_transition("g", {0}, 0);
  dead.set_accepting(0);
  CHECK(is_empty(dead));
  CHECK_FALSE(witness(dead).has_value());
  CHECK(trim(dead).num_states() == 0);
}

TEST_CASE("witness order prefers parameters")
{
  TreeAutomaton a(Alphabet({{"a", 0}, {"x1", 0}, {"g", 1}}));
  a.add_transition("a", {}, 0);
  a.add_transition("x1", {}, 0);
  a.set_accepting(0);
  CHECK(witness(a) == T("a"));
  CHECK(witness(a, TermOrder({"x1"})) == T("x1"));
}

TEST_CASE("enumeration lists the language by size")
{
  TreeAutomaton a = even_g();
  std::vector<Term> terms = enumerate_language(a, 5);
  CHECK(terms == std::vector<Term>{T("a"), T("b"), T("(g (g a))"), T("(g (g b))"),
                                   T("(g (g (g (g a))))"), T("(g (g (g (g b))))")});
  LanguageEnumerator e(a);
  CHECK(e.next_level().size() == 2);
  CHECK(e.next_level().empty());
  CHECK(e.current_size() == 2);
}

TEST_CASE("boolean operations agree with membership")
{
  Alphabet sigma(kSymbols);
  const std::vector<Term> universe = all_terms(kSymbols, 5);
  Rng rng(7);
  for (int round = 0; round < 25; ++round)
  {
    TreeAutomaton a = random_automaton(rng, sigma, 3);
    TreeAutomaton b = random_automaton(rng, sigma, 3);
    TreeAutomaton both = intersect(a, b);
    TreeAutomaton either = unite(a, b);
    TreeAutomaton trimmed = trim(a);
    for (const Term& t : universe)
    {
      bool ma = a.member(t);
      bool mb = b.member(t);
      CHECK(both.member(t) == (ma && mb));
      CHECK(either.member(t) == (ma || mb));
      CHECK(trimmed.member(t) == ma);
    }
    std::vector<Term> listed = enumerate_language(a, 5);
    std::size_t expected = 0;
    for (const Term& t : universe) expected += a.member(t);
    CHECK(listed.size() == expected);
  }
}

TEST_CASE("bounded language equality")
{
  TreeAutomaton a = even_g();
  TreeAutomaton b(Alphabet({{"g", 1}, {"a", 0}, {"b", 0}}));
  // Same language written with four states.
  b.add_transition("a", {}, 0);
  b.add_transition("b", {}, 2);
  b.add_transition("g", {0}, 1);
  b.add_transition("g", {1}, 2);
  b.add_transition("g", {2}, 3);
  b.add_transition("g", {3}, 2);
  b.set_accepting(0);
  b.set_accepting(2);
  CHECK(language_equal_up_to(a, b, 6));
  b.set_accepting(3);
  CHECK_FALSE(language_equal_up_to(a, b, 6));
  CHECK(language_equal_up_to(a, b, 1));

  // Symbols missing from one alphabet only ever reject there.
  TreeAutomaton c(Alphabet({{"g", 1}, {"a", 0}, {"b", 0}, {"h", 1}}));
  c.add_transition("a", {}, 0);
  c.add_transition("b", {}, 0);
  c.add_transition("g", {0}, 1);
  c.add_transition("g", {1}, 0);
  c.set_accepting(0);
  CHECK(language_equal_up_to(a, c, 5));
  c.add_transition("h", {0}, 0);
  CHECK_FALSE(language_equal_up_to(a, c, 5));
}

TEST_CASE("canonical relabeling")
{
  TreeAutomaton a = even_g();
  TreeAutomaton renamed(a.alphabet());
  renamed.add_transition("a", {}, 7);
  renamed.add_transition("b", {}, 7);
  renamed.add_transition("g", {7}, 3);
  renamed.add_transition("g", {3}, 7);
  renamed.set_accepting(7);
  CHECK_FALSE(a == renamed);
  CHECK(isomorphic(a, renamed));
  CHECK(canonical_form(a) == canonical_form(renamed));
  renamed.set_accepting(3);
  CHECK_FALSE(isomorphic(a, renamed));
}

TEST_CASE("graphviz export")
{
  TreeAutomaton a = even_g();
  a.add_state(2);
  std::string dot = to_dot(a, "even");
  CHECK(dot.rfind("digraph \"even\" {", 0) == 0);
  CHECK(dot.find("q0 [label=\"0\", shape=doublecircle]") != std::string::npos);
  CHECK(dot.find("q0 -> q1 [label=\"g\"]") != std::string::npos);
  CHECK(dot.find("q2 [label=\"2\"]") != std::string::npos);
}

TEST_CASE("grammars become deterministic automata")
{
  SygusProblem p = parse_problem(read_data("regex1.sy"));
  Alphabet sigma(p.candidate_alphabet());
  TreeAutomaton a = grammar_to_automaton(*p.grammar, sigma);
  CHECK(a.member(T("a")));
  CHECK(a.member(T("x1")));
  CHECK(a.member(T("(g (g x1))")));
  CHECK_FALSE(a.member(T("b")));
  CHECK_FALSE(a.member(T("(g b)")));
  CHECK(grammar_alphabet(*p.grammar).size() == 3);

  // Overlapping nonterminals: S -> (k A B), A -> a | b, B -> a.
  TreeGrammar g;
  g.nonterminals = {"S", "A", "B"};
  g.sorts = {"U", "U", "U"};
  g.productions = {{"S", T("(k A B)")}, {"A", T("a")}, {"A", T("b")}, {"B", T("a")}};
  TreeAutomaton b = grammar_to_automaton(g, Alphabet(kSymbols));
  CHECK(b.member(T("(k a a)")));
  CHECK(b.member(T("(k b a)")));
  CHECK_FALSE(b.member(T("(k a b)")));
  CHECK_FALSE(b.member(T("a")));
}
