#include <doctest.h>

#include "regsyn/error.h"
#include "regsyn/formula.h"
#include "regsyn/grammar.h"
#include "regsyn/problem.h"
#include "regsyn/sexpr.h"
#include "regsyn/term.h"
#include "test_util.h"

using namespace regsyn;
using regsyn::testing::error_kind;
using regsyn::testing::read_data;
using regsyn::testing::T;

TEST_CASE("terms are structural values")
{
  Term t = T("(h (g a) b)");
  CHECK(t.size() == 4);
  CHECK(t.depth() == 3);
  CHECK(t.arity() == 2);
  CHECK(t.child(0) == T("(g a)"));
  CHECK(t == Term("h", {Term("g", {Term("a")}), Term("b")}));
  CHECK(t.hash() == T("(h (g a) b)").hash());
  CHECK(t != T("(h (g b) a)"));
  CHECK(to_string(t) == "(h (g a) b)");
}

TEST_CASE("term order: size, then preferred heads, then bytes")
{
  TermOrder plain;
  CHECK(plain(T("z"), T("(g a)")));
  CHECK(plain(T("a"), T("b")));
  CHECK(plain(T("(g a)"), T("(g b)")));
  CHECK(plain(T("(g b)"), T("(h a)")));

  TermOrder params({"x1", "x2"});
  CHECK(params(T("x1"), T("a")));
  CHECK(params(T("x1"), T("x2")));
  CHECK(params(T("(g x1)"), T("(g a)")));
  CHECK(params(T("a"), T("(g x1)")));
  CHECK(params.compare(T("(g a)"), T("(g a)")) == 0);
}

TEST_CASE("subterms are deduplicated and sorted")
{
  std::vector<Term> s = subterms(T("(h (g a) (g a))"));
  REQUIRE(s.size() == 3);
  CHECK(s[0] == T("a"));
  CHECK(s[1] == T("(g a)"));
  CHECK(s[2] == T("(h (g a) (g a))"));
  CHECK(count_symbol(T("(h (g a) (g a))"), "g") == 2);
  CHECK(contains_symbol(T("(h (g a) b)"), "b"));
  CHECK_FALSE(contains_symbol(T("(h (g a) b)"), "f"));
}

TEST_CASE("leaf and subterm substitution")
{
  CHECK(substitute_leaves(T("(h x (g x))"), {{"x", T("(g a)")}}) == T("(h (g a) (g (g a)))"));
  CHECK(replace_subterm(T("(h (g a) (g a))"), T("(g a)"), T("b")) == T("(h b b)"));
}

TEST_CASE("contexts have exactly one hole")
{
  Context trivial;
  CHECK(trivial.is_hole());
  CHECK(trivial.plug(T("a")) == T("a"));

  Context c(Term("h", {Term(Context::kHole), T("(g b)")}));
  CHECK(c.plug(T("a")) == T("(h a (g b))"));
  std::vector<Term> free = c.hole_free_subterms();
  CHECK(free.size() == 2);

  CHECK(error_kind([] { Context(Term("h", {Term(Context::kHole), Term(Context::kHole)})); })
        == ErrorKind::Unsupported);
  CHECK(error_kind([] { Context(T("(g a)")); }) == ErrorKind::Unsupported);
}

TEST_CASE("factoring the unique target occurrence")
{
  auto [ctx, occ] = factor_occurrence(T("(g (h (f a) b))"), "f");
  CHECK(occ == T("(f a)"));
  CHECK(ctx.plug(T("c")) == T("(g (h c b))"));
}

TEST_CASE("second-order substitution rewrites nested applications bottom-up")
{
  SecondOrderSubstitution w{"f", {"x1"}, T("(h x1)")};
  CHECK(apply_second_order(T("(g (f (f a)))"), w) == T("(g (h (h a)))"));
  SecondOrderSubstitution w2{"f", {"x1", "x2"}, T("(k x2 x1)")};
  CHECK(apply_second_order(T("(f a (f b c))"), w2) == T("(k (k c b) a)"));
}

TEST_CASE("fresh names avoid collisions")
{
  NameSupply names({"c_ite_0", "sk_x"});
  CHECK(names.fresh_indexed("c_ite_") == "c_ite_1");
  CHECK(names.fresh_like("sk_x") == "sk_x_1");
  CHECK(names.fresh_like("sk_y") == "sk_y");
  CHECK(names.is_used("sk_y"));
}

TEST_CASE("clausal forms")
{
  Formula p = fm::eq(T("a"), T("b"));
  Formula q = fm::eq(T("b"), T("c"));
  Formula r = fm::eq(T("c"), T("d"));

  ClauseSet cnf = to_cnf(fm::implies(fm::conj({p, q}), r));
  REQUIRE(cnf.size() == 1);
  CHECK(cnf[0].size() == 3);

  std::vector<Conjunction> dnf = to_dnf(fm::conj({fm::disj({p, q}), r}));
  CHECK(dnf.size() == 2);
  for (const Conjunction& c : dnf) CHECK(c.size() == 2);

  // (p1 ∧ q1) ∨ ... ∨ (p6 ∧ q6) has 2^6 clauses.
  std::vector<Formula> disjuncts;
  for (int i = 0; i < 6; ++i)
  {
    Term a("a" + std::to_string(i));
    disjuncts.push_back(fm::conj({fm::eq(a, T("b")), fm::eq(a, T("c"))}));
  }
  Formula wide = fm::disj(disjuncts);
  CHECK(to_cnf(wide).size() == 64);
  CHECK(error_kind([&] { to_cnf(wide, 10); }) == ErrorKind::ResourceLimit);
}

TEST_CASE("term-level ite becomes a guarded constant")
{
  Formula phi = fm::eq(fm::ite(fm::eq(T("a"), T("b")), T("a"), T("(g a)")), T("b"));
  NameSupply names;
  DesugarResult d = desugar_ite(phi, names);
  REQUIRE(d.constants.size() == 1);
  CHECK(d.constants[0].rfind("c_ite_", 0) == 0);
  CHECK_FALSE(contains_ite(d.formula));
  CHECK(d.formula.head() == "=>");

  // Two copies of the same ite share one constant.
  Term it = fm::ite(fm::eq(T("a"), T("b")), T("a"), T("b"));
  NameSupply names2;
  CHECK(desugar_ite(fm::eq(it, Term("g", {it})), names2).constants.size() == 1);
}

TEST_CASE("top-level universals are skolemized")
{
  Formula phi = Term("forall", {T("x"), T("y"), fm::eq(T("(g x)"), T("y"))});
  NameSupply names;
  SkolemResult s = skolemize_universals(phi, names);
  CHECK(s.formula == fm::eq(T("(g sk_x)"), T("sk_y")));
  REQUIRE(s.constants.size() == 2);
  CHECK(s.constants[0].second == "sk_x");

  Formula nested = fm::neg(Term("forall", {T("x"), fm::eq(T("x"), T("a"))}));
  CHECK(error_kind([&] { skolemize_universals(nested, names); }) == ErrorKind::Unsupported);
}

TEST_CASE("s-expression reader")
{
  std::vector<Sexpr> es = read_sexprs("; comment\n(a \"q\"\"s\" |odd sym|) b");
  REQUIRE(es.size() == 2);
  CHECK(es[0][1].is_string());
  CHECK(es[0][1].atom == "q\"s");
  CHECK(es[0][2].is_symbol("odd sym"));
  CHECK(es[1].is_symbol("b"));
  CHECK(to_string(es[0]).front() == '(');

  CHECK(error_kind([] { read_sexprs("(a (b)"); }) == ErrorKind::Syntax);
  CHECK(error_kind([] { read_sexprs("a)"); }) == ErrorKind::Syntax);
  try
  {
    read_sexprs("(a\n  ))");
    FAIL("expected a syntax error");
  }
  catch (const Error& e)
  {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("BNF grammars")
{
  StringGrammar g = parse_bnf("# comment\nS -> a S b | c\n");
  CHECK(g.start() == "S");
  CHECK(g.rules.size() == 2);
  CHECK(terminals(g) == std::vector<std::string>{"a", "b", "c"});
  CHECK(error_kind([] { parse_bnf("S -> a |\n"); }) == ErrorKind::Syntax);
}

TEST_CASE("problem files round-trip")
{
  SygusProblem p = parse_problem(read_data("regex1.sy"));
  CHECK(p.theory == Theory::EUF);
  CHECK(p.target.name == "f");
  CHECK(p.target.param_names() == std::vector<std::string>{"x1"});
  REQUIRE(p.grammar.has_value());
  CHECK(p.grammar->productions.size() == 3);
  CHECK(p.constraints.size() == 1);

  SygusProblem again = parse_problem(print_problem(p));
  CHECK(again == p);

  auto alphabet = p.candidate_alphabet();
  CHECK(alphabet.at("g") == 1);
  CHECK(alphabet.at("x1") == 0);
}

TEST_CASE("candidate parsing and instantiation")
{
  SygusProblem p = parse_problem(read_data("regex1.sy"));
  CHECK(parse_candidate(p, "(g x1)") == T("(g x1)"));
  CHECK(error_kind([&] { parse_candidate(p, "(g a b)"); }) == ErrorKind::ArityMismatch);
  CHECK(error_kind([&] { parse_candidate(p, "(q a)"); }) == ErrorKind::UnknownSymbol);

  Formula inst = instantiate(p, T("(g x1)"));
  CHECK_FALSE(contains_symbol(inst, "f"));
  CHECK(contains_symbol(inst, "g"));
}

TEST_CASE("problem errors")
{
  CHECK(error_kind([] {
          parse_problem("(set-logic EUF)(declare-const a U)(declare-const a U)"
                        "(synth-fun f () U)(constraint (= (f) a))");
        })
        == ErrorKind::DuplicateDeclaration);
  CHECK(error_kind([] { parse_problem("(set-logic EUF)(declare-const a U)(synth-fun f () U)"); })
        == ErrorKind::MissingConstraint);
  CHECK(error_kind([] { parse_problem("(set-logic EUF)(synth-fun f () U"); })
        == ErrorKind::Syntax);
}
