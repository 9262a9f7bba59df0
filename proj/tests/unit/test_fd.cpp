#include <doctest.h>

#include "generators.h"
#include "oracles.h"
#include "regsyn/error.h"
#include "regsyn/fd.h"
#include "regsyn/problem.h"
#include "test_util.h"

using namespace regsyn;
using namespace regsyn::testing;

TEST_CASE("model JSON round-trips")
{
  FiniteModel m = parse_model(read_data("boolean.json"));
  CHECK(m == boolean_model());
  CHECK(parse_model(model_to_json(m)) == m);
  CHECK(m.interprets("xor", 2));
  CHECK_FALSE(m.interprets("xor", 1));
  CHECK(m.interprets("true", 0));
}

TEST_CASE("malformed models")
{
  CHECK(error_kind([] { parse_model("{\"domain\": 2"); }) == ErrorKind::Syntax);
  CHECK(error_kind([] {
          parse_model(R"({"domain": 2, "constants": {"z": 0, "o": 1},
                          "functions": {"g": {"arity": 1, "table": [0]}}})");
        })
        == ErrorKind::ModelMismatch);
  CHECK(error_kind([] {
          parse_model(R"({"domain": 2, "constants": {"z": 0, "o": 1},
                          "functions": {"g": {"arity": 1, "table": [0, 2]}}})");
        })
        == ErrorKind::ModelMismatch);
  // Element 1 has no naming constant.
  CHECK(error_kind([] { parse_model(R"({"domain": 2, "constants": {"z": 0}, "functions": {}})"); })
        == ErrorKind::ModelMismatch);
}

TEST_CASE("bit-vector models")
{
  FiniteModel m = bv_model(2, {"and", "add", "shl1", "not"});
  CHECK(m.domain_size == 4);
  CHECK(m.constants.at("bv3") == 3);
  Assignment none;
  CHECK(eval_term(m, T("(add bv3 bv2)"), none) == 1);
  CHECK(eval_term(m, T("(shl1 bv3)"), none) == 2);
  CHECK(eval_term(m, T("(not bv1)"), none) == 2);
  CHECK(eval_term(m, T("(and bv3 bv2)"), none) == 2);
  CHECK(error_kind([] { bv_model(5, {"and"}); }) == ErrorKind::ResourceLimit);
  CHECK(error_kind([] { bv_model(2, {"mul"}); }) == ErrorKind::Unsupported);
}

TEST_CASE("evaluation")
{
  FiniteModel m = boolean_model();
  Assignment env{{"x", 1}, {"y", 0}};
  CHECK(eval_term(m, T("(xor x y)"), env) == 1);
  CHECK(eval_term(m, T("(and x (not y))"), env) == 1);
  CHECK(eval_formula(m, T("(= x true)"), env));
  CHECK(eval_formula(m, T("(=> y false)"), env));
  CHECK(eval_term(m, T("(ite y x false)"), env) == 0);
  CHECK(error_kind([&] { eval_term(m, T("z"), env); }) == ErrorKind::UnassignedVariable);
  CHECK(error_kind([&] { eval_term(m, T("(g x)"), env); }) == ErrorKind::ModelMismatch);
}

TEST_CASE("assignments and tables are row-major")
{
  std::vector<std::string> seen;
  for_each_assignment(2, {"x", "y"}, [&](const Assignment& a) {
    seen.push_back(std::to_string(a.at("x")) + std::to_string(a.at("y")));
  });
  CHECK(seen == std::vector<std::string>{"00", "01", "10", "11"});
  FunctionTable t = function_table(boolean_model(), T("(and x (not y))"), {"x", "y"});
  CHECK(t.values == std::vector<std::size_t>{0, 0, 1, 0});
}

TEST_CASE("fixpoint on the xor example")
{
  SygusProblem p = parse_problem(read_data("xor.sy"));
  FiniteModel m = boolean_model();
  std::vector<std::string> vars = fd_variables(p);
  CHECK(vars == std::vector<std::string>{"x", "y"});
  FixpointResult r = fixpoint_enumerate(m, *p.grammar, vars);

  REQUIRE(r.history.size() >= 3);
  using Row = std::map<std::string, std::vector<Term>>;
  Row first = r.history[0];
  CHECK(first["S"].empty());
  CHECK(first["A"] == std::vector<Term>{T("x")});
  CHECK(first["B"] == std::vector<Term>{T("y")});
  Row second = r.history[1];
  CHECK(second["S"] == std::vector<Term>{T("(xor x y)")});
  CHECK(second["A"] == std::vector<Term>{T("(not y)")});
  CHECK(second["B"].empty());
  for (const auto& [nt, added] : r.history.back()) CHECK(added.empty());

  // (not y) xor (not x) is the same function as (xor x y), so S has two.
  CHECK(r.sets.at("S").size() == 2);
  CHECK(r.sets.at("A").size() == 2);
  CHECK(r.sets.at("B").size() == 2);
  for (const auto& [nt, entries] : r.sets)
  {
    for (const TableEntry& e : entries) CHECK(function_table(m, e.term, vars) == e.table);
  }

  Verdict v = solve_fd(p, m);
  CHECK(v.outcome == Outcome::Unsolvable);
  CHECK(v.engine == "fd");

  Verdict w = solve_fd(parse_problem(read_data("xor_solvable.sy")), m);
  CHECK(w.outcome == Outcome::Solvable);
  CHECK(w.witness == T("(not x)"));
}

TEST_CASE("models must cover the signature")
{
  SygusProblem p = parse_problem("(set-logic FD)(declare-fun g (Bool) Bool)(declare-var x Bool)"
                                 "(synth-fun f () Bool ((S Bool)) ((S Bool ((g S) x))))"
                                 "(constraint (= f x))(check-synth)");
  CHECK(error_kind([&] { check_model(p, boolean_model()); }) == ErrorKind::ModelMismatch);
  CHECK(error_kind([&] { solve_fd(p, boolean_model()); }) == ErrorKind::ModelMismatch);
}

TEST_CASE("fixpoint sets match the derivation oracle")
{
  Rng rng(17);
  FiniteModel m = boolean_model();
  for (int round = 0; round < 20; ++round)
  {
    SygusProblem p = random_boolean_problem(rng);
    FixpointResult r = fixpoint_enumerate(m, *p.grammar, {"x", "y"});
    auto oracle = derivable_tables(*p.grammar, {"x", "y"}, 40);
    for (const std::string& nt : p.grammar->nonterminals)
    {
      std::set<std::vector<int>> got;
      auto it = r.sets.find(nt);
      if (it != r.sets.end())
      {
        for (const TableEntry& e : it->second)
        {
          got.insert(std::vector<int>(e.table.values.begin(), e.table.values.end()));
        }
      }
      CHECK_MESSAGE(got == oracle[nt], print_problem(p) << " at " << nt << ": " << got.size() << " vs " << oracle[nt].size());
    }
  }
}
