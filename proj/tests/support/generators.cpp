#include "generators.h"

#include "oracles.h"
#include "regsyn/formula.h"

namespace regsyn::testing {

std::size_t pick(Rng& rng, std::size_t n)
{
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

bool coin(Rng& rng, double p)
{
  return std::bernoulli_distribution(p)(rng);
}

Term random_term(Rng& rng, const Symbols& symbols, std::size_t max_depth)
{
  std::vector<std::pair<std::string, std::size_t>> leaves;
  std::vector<std::pair<std::string, std::size_t>> inner;
  for (const auto& s : symbols) (s.second == 0 ? leaves : inner).push_back(s);
  if (max_depth <= 1 || inner.empty() || coin(rng, 0.35))
  {
    return Term(leaves[pick(rng, leaves.size())].first);
  }
  const auto& [name, arity] = inner[pick(rng, inner.size())];
  std::vector<Term> kids;
  for (std::size_t i = 0; i < arity; ++i) kids.push_back(random_term(rng, symbols, max_depth - 1));
  return Term(name, std::move(kids));
}

CongruenceInstance random_congruence_instance(Rng& rng, std::size_t max_equations,
                                              std::size_t max_support)
{
  static const Symbols kChoices[] = {
      {{"g", 1}, {"a", 0}, {"b", 0}},
      {{"g", 1}, {"h", 1}, {"a", 0}, {"b", 0}},
      {{"k", 2}, {"g", 1}, {"a", 0}, {"b", 0}},
  };
  const Symbols& symbols = kChoices[pick(rng, 3)];
  while (true)
  {
    CongruenceInstance inst;
    std::vector<Term> seeds;
    std::size_t n_eq = pick(rng, max_equations + 1);
    for (std::size_t i = 0; i < n_eq; ++i)
    {
      Term s = random_term(rng, symbols, 3);
      Term t = random_term(rng, symbols, 3);
      inst.equations.emplace_back(s, t);
      seeds.push_back(s);
      seeds.push_back(t);
    }
    std::size_t extra = pick(rng, 3);
    for (std::size_t i = 0; i < extra; ++i) seeds.push_back(random_term(rng, symbols, 3));
    if (seeds.empty()) seeds.push_back(random_term(rng, symbols, 3));
    inst.support = collect_subterms(seeds);
    if (inst.support.size() <= max_support) return inst;
  }
}

namespace {

const Symbols kSignatures[] = {
    {{"g", 1}, {"a", 0}, {"b", 0}},
    {{"g", 1}, {"h", 1}, {"a", 0}},
    {{"k", 2}, {"a", 0}, {"b", 0}},
    {{"g", 1}, {"a", 0}},
};

/** B[f(s)] with a random small context B. */
Term target_side(Rng& rng, const Symbols& symbols, const Term& inner)
{
  Term t = inner;
  std::size_t wraps = pick(rng, 2);
  for (std::size_t i = 0; i < wraps; ++i)
  {
    std::vector<std::pair<std::string, std::size_t>> inner_symbols;
    for (const auto& s : symbols)
    {
      if (s.second > 0) inner_symbols.push_back(s);
    }
    const auto& [name, arity] = inner_symbols[pick(rng, inner_symbols.size())];
    std::vector<Term> kids;
    std::size_t at = pick(rng, arity);
    for (std::size_t j = 0; j < arity; ++j) kids.push_back(j == at ? t : random_term(rng, symbols, 1));
    t = Term(name, std::move(kids));
  }
  return t;
}

Equation target_equation(Rng& rng, const Symbols& symbols)
{
  Term app("f", {random_term(rng, symbols, 2)});
  Term lhs = target_side(rng, symbols, app);
  Term rhs = random_term(rng, symbols, 3);
  if (coin(rng)) return {rhs, lhs};
  return {lhs, rhs};
}

Equation ground_equation(Rng& rng, const Symbols& symbols)
{
  return {random_term(rng, symbols, 3), random_term(rng, symbols, 3)};
}

}  // namespace

Term raw_clause_formula(const RawClause& c)
{
  std::vector<Formula> ante;
  for (const auto& [s, t] : c.negative) ante.push_back(fm::eq(s, t));
  std::vector<Formula> cons;
  for (const auto& [s, t] : c.positive) cons.push_back(fm::eq(s, t));
  if (ante.empty()) return fm::disj(std::move(cons));
  if (cons.empty()) return fm::neg(fm::conj(std::move(ante)));
  return fm::implies(fm::conj(std::move(ante)), fm::disj(std::move(cons)));
}

RegularInstance random_regular_instance(Rng& rng)
{
  RegularInstance inst;
  const Symbols& symbols = kSignatures[pick(rng, 4)];
  SygusProblem& p = inst.problem;
  p.logic = "EUF";
  p.theory = Theory::EUF;
  for (const auto& [name, arity] : symbols)
  {
    p.signature.declare({name, std::vector<std::string>(arity, "U"), "U", arity == 0});
  }
  p.target = {"f", {{"x1", "U"}}, "U"};
  inst.candidate_symbols = symbols;
  inst.candidate_symbols.emplace("x1", 0);

  std::size_t n_clauses = 1 + pick(rng, 2);
  for (std::size_t c = 0; c < n_clauses; ++c)
  {
    RawClause clause;
    if (coin(rng))
    {
      // Target equations only among the consequents.
      clause.positive.push_back(target_equation(rng, symbols));
      if (coin(rng, 0.4))
      {
        clause.positive.push_back(coin(rng) ? target_equation(rng, symbols)
                                            : ground_equation(rng, symbols));
      }
      std::size_t n = pick(rng, 5 - clause.positive.size());
      for (std::size_t i = 0; i < n && i < 2; ++i) clause.negative.push_back(ground_equation(rng, symbols));
    }
    else
    {
      // Exactly one target equation, in the antecedent.
      clause.negative.push_back(target_equation(rng, symbols));
      std::size_t extra = pick(rng, 3);
      for (std::size_t i = 0; i < extra; ++i) clause.negative.push_back(ground_equation(rng, symbols));
      std::size_t n = pick(rng, 3);
      for (std::size_t i = 0; i < n && clause.negative.size() + clause.positive.size() < 4; ++i)
      {
        clause.positive.push_back(ground_equation(rng, symbols));
      }
    }
    p.constraints.push_back(raw_clause_formula(clause));
    inst.clauses.push_back(std::move(clause));
  }
  return inst;
}

TreeAutomaton random_automaton(Rng& rng, const Alphabet& alphabet, std::size_t max_states,
                               double density)
{
  TreeAutomaton a(alphabet);
  const std::size_t n = 1 + pick(rng, max_states);
  for (State q = 0; q < n; ++q) a.add_state(q);
  for (std::size_t s = 0; s < alphabet.size(); ++s)
  {
    const std::size_t k = alphabet[s].arity;
    std::vector<State> args(k, 0);
    while (true)
    {
      if (coin(rng, density)) a.add_transition(s, args, static_cast<State>(pick(rng, n)));
      std::size_t i = k;
      while (i > 0 && ++args[i - 1] == n) args[--i] = 0;
      if (i == 0) break;
    }
  }
  for (State q = 0; q < n; ++q)
  {
    if (coin(rng, 0.4)) a.set_accepting(q);
  }
  return a;
}

TreeAutomaton random_trim_automaton(Rng& rng, const Alphabet& alphabet, std::size_t max_states)
{
  while (true)
  {
    TreeAutomaton t = trim(random_automaton(rng, alphabet, max_states));
    if (!t.accepting().empty()) return t;
  }
}

namespace {

const Symbols kFormulaSymbols{{"g", 1}, {"a", 0}, {"b", 0}};

Term formula_term(Rng& rng, std::size_t depth);

Term formula_atom(Rng& rng, std::size_t depth)
{
  if (coin(rng, 0.08)) return coin(rng) ? fm::top() : fm::bottom();
  return fm::eq(formula_term(rng, depth), formula_term(rng, depth));
}

Term formula_term(Rng& rng, std::size_t depth)
{
  if (depth > 0 && coin(rng, 0.15))
  {
    return fm::ite(formula_atom(rng, 0), random_term(rng, kFormulaSymbols, 2),
                   random_term(rng, kFormulaSymbols, 2));
  }
  return random_term(rng, kFormulaSymbols, 3);
}

}  // namespace

Term random_ground_formula(Rng& rng, std::size_t depth)
{
  if (depth == 0 || coin(rng, 0.25)) return formula_atom(rng, 1);
  switch (pick(rng, 4))
  {
    case 0: return fm::neg(random_ground_formula(rng, depth - 1));
    case 1: return Term("and", {random_ground_formula(rng, depth - 1), random_ground_formula(rng, depth - 1)});
    case 2: return Term("or", {random_ground_formula(rng, depth - 1), random_ground_formula(rng, depth - 1)});
    default: return Term("=>", {random_ground_formula(rng, depth - 1), random_ground_formula(rng, depth - 1)});
  }
}

namespace {

Term random_bool_expr(Rng& rng, std::size_t depth)
{
  if (depth == 0 || coin(rng, 0.3))
  {
    static const char* const kLeaves[] = {"x", "y", "true", "false"};
    return Term(kLeaves[pick(rng, coin(rng, 0.85) ? 2 : 4)]);
  }
  switch (pick(rng, 4))
  {
    case 0: return Term("not", {random_bool_expr(rng, depth - 1)});
    case 1: return Term("xor", {random_bool_expr(rng, depth - 1), random_bool_expr(rng, depth - 1)});
    case 2: return Term("and", {random_bool_expr(rng, depth - 1), random_bool_expr(rng, depth - 1)});
    default: return Term("or", {random_bool_expr(rng, depth - 1), random_bool_expr(rng, depth - 1)});
  }
}

}  // namespace

SygusProblem random_boolean_problem(Rng& rng)
{
  SygusProblem p;
  p.logic = "FD";
  p.theory = Theory::FD;
  p.universals = {{"x", "Bool"}, {"y", "Bool"}};
  p.target = {"f", {}, "Bool"};
  TreeGrammar g;
  g.nonterminals = {"S"};
  if (coin(rng)) g.nonterminals.push_back("A");
  g.sorts.assign(g.nonterminals.size(), "Bool");
  auto nt = [&] { return Term(g.nonterminals[pick(rng, g.nonterminals.size())]); };
  for (const std::string& lhs : g.nonterminals)
  {
    g.productions.push_back({lhs, Term(coin(rng) ? "x" : "y")});
    std::size_t n = 1 + pick(rng, 3);
    for (std::size_t i = 0; i < n; ++i)
    {
      switch (pick(rng, 5))
      {
        case 0: g.productions.push_back({lhs, Term("not", {nt()})}); break;
        case 1: g.productions.push_back({lhs, Term("xor", {nt(), nt()})}); break;
        case 2: g.productions.push_back({lhs, Term("and", {nt(), nt()})}); break;
        case 3: g.productions.push_back({lhs, Term("or", {nt(), nt()})}); break;
        default: g.productions.push_back({lhs, Term(coin(rng) ? "x" : "y")}); break;
      }
    }
  }
  p.grammar = std::move(g);
  Term e = random_bool_expr(rng, 2);
  p.constraints.push_back(coin(rng) ? fm::eq(Term("f"), e) : Term("xor", {e, Term("f")}));
  return p;
}

}  // namespace regsyn::testing
