#include "regsyn/regular_euf.h"

#include <algorithm>

#include "regsyn/error.h"

namespace regsyn {

const char* to_string(ClauseKind k)
{
  switch (k)
  {
    case ClauseKind::Case1: return "Case1";
    case ClauseKind::Case2: return "Case2";
    case ClauseKind::FFree: return "FFree";
    case ClauseKind::NotRegular: return "NotRegular";
  }
  return "?";
}

Formula to_formula(const RegularClause& c)
{
  std::vector<Formula> ante;
  for (const auto& [s, t] : c.negative) ante.push_back(fm::eq(s, t));
  std::vector<Formula> cons;
  for (const auto& [s, t] : c.positive) cons.push_back(fm::eq(s, t));
  if (ante.empty()) return fm::disj(std::move(cons));
  if (cons.empty()) return fm::neg(fm::conj(std::move(ante)));
  return fm::implies(fm::conj(std::move(ante)), fm::disj(std::move(cons)));
}

RegularClause classify_clause(const Clause& clause, const std::string& target)
{
  RegularClause out;
  bool multiple = false;
  for (const Literal& lit : clause)
  {
    if (!fm::is_eq(lit.atom))
    {
      fail(ErrorKind::Unsupported,
           "non-equational atom in EUF constraint: " + render(lit.atom));
    }
    Term lhs = lit.atom.child(0);
    Term rhs = lit.atom.child(1);
    std::size_t n = count_symbol(lhs, target) + count_symbol(rhs, target);
    std::optional<TargetOccurrence> occ;
    if (n > 1)
    {
      multiple = true;
    }
    else if (n == 1)
    {
      if (!contains_symbol(lhs, target)) std::swap(lhs, rhs);
      auto [context, app] = factor_occurrence(lhs, target);
      occ = TargetOccurrence{context, {app.children().begin(), app.children().end()}};
    }
    if (lit.positive)
    {
      out.positive.emplace_back(lhs, rhs);
      out.positive_occurrence.push_back(std::move(occ));
    }
    else
    {
      out.negative.emplace_back(lhs, rhs);
      out.negative_occurrence.push_back(std::move(occ));
    }
  }
  auto count = [](const std::vector<std::optional<TargetOccurrence>>& v) {
    return std::count_if(v.begin(), v.end(), [](const auto& o) { return o.has_value(); });
  };
  auto in_n = count(out.negative_occurrence);
  auto in_p = count(out.positive_occurrence);
  if (multiple)
  {
    out.kind = ClauseKind::NotRegular;
  }
  else if (in_n == 0 && in_p == 0)
  {
    out.kind = ClauseKind::FFree;
  }
  else if (in_n == 0)
  {
    out.kind = ClauseKind::Case1;
  }
  else if (in_n == 1 && in_p == 0)
  {
    out.kind = ClauseKind::Case2;
  }
  else
  {
    out.kind = ClauseKind::NotRegular;
  }
  return out;
}

namespace {

void reserve_all(const Term& t, NameSupply& names)
{
  names.reserve(t.head());
  for (const Term& c : t.children()) reserve_all(c, names);
}

NameSupply problem_names(const SygusProblem& p)
{
  NameSupply names;
  for (const SymbolDecl& d : p.signature.symbols()) names.reserve(d.name);
  for (const Variable& v : p.universals) names.reserve(v.name);
  for (const Variable& v : p.target.params) names.reserve(v.name);
  names.reserve(p.target.name);
  if (p.grammar)
  {
    for (const std::string& nt : p.grammar->nonterminals) names.reserve(nt);
  }
  for (const Formula& c : p.constraints) reserve_all(c, names);
  return names;
}

std::string not_regular_reason(const RegularClause& c, const std::string& target)
{
  std::size_t in_n = 0;
  std::size_t in_p = 0;
  for (const auto& o : c.negative_occurrence) in_n += o.has_value();
  for (const auto& o : c.positive_occurrence) in_p += o.has_value();
  bool multiple = in_n + in_p == 0
                  || std::any_of(c.negative.begin(), c.negative.end(),
                                 [&](const Equation& e) {
                                   return count_symbol(e.first, target)
                                              + count_symbol(e.second, target)
                                          > 1;
                                 })
                  || std::any_of(c.positive.begin(), c.positive.end(),
                                 [&](const Equation& e) {
                                   return count_symbol(e.first, target)
                                              + count_symbol(e.second, target)
                                          > 1;
                                 });
  if (multiple) return target + " occurs more than once in one equation";
  if (in_n > 1) return target + " occurs in more than one antecedent equation";
  return target + " occurs in both an antecedent and a consequent equation";
}

/** Drops transitions on symbols outside `alphabet` and re-homes the rest. */
TreeAutomaton project(const TreeAutomaton& a, const Alphabet& alphabet)
{
  TreeAutomaton out(alphabet);
  for (State q : a.states())
  {
    out.add_state(q);
    std::string l = a.label(q);
    if (!l.empty()) out.set_label(q, l);
  }
  for (const auto& [key, target] : a.transitions())
  {
    const RankedSymbol& s = a.alphabet()[key.first];
    auto idx = alphabet.index_of(s.name);
    if (idx && alphabet[*idx].arity == s.arity)
    {
      out.add_transition(*idx, key.second, target);
    }
  }
  for (State q : a.accepting()) out.set_accepting(q);
  return out;
}

void add_parameter_transitions(TreeAutomaton& a, const TargetOccurrence& occ,
                               const std::vector<std::string>& params)
{
  if (occ.args.size() != params.size())
  {
    fail(ErrorKind::ArityMismatch, "target applied to "
                                       + std::to_string(occ.args.size())
                                       + " arguments, expected "
                                       + std::to_string(params.size()));
  }
  for (std::size_t i = 0; i < params.size(); ++i)
  {
    auto q = a.run(occ.args[i]);
    a.add_transition(params[i], {}, *q);
  }
}

void push_sides(const EquationSet& eqs, std::vector<Term>& seeds)
{
  for (const auto& [s, t] : eqs)
  {
    seeds.push_back(s);
    seeds.push_back(t);
  }
}

}  // namespace

std::vector<RegularClause> normalize(const SygusProblem& p)
{
  if (p.theory != Theory::EUF)
  {
    fail(ErrorKind::Unsupported, "the regular engine needs logic EUF");
  }
  for (const Production& prod : p.effective_grammar().productions)
  {
    if (contains_ite(prod.rhs))
    {
      fail(ErrorKind::IteInGrammar,
           "grammar rule " + prod.lhs + " -> " + render(prod.rhs) + " uses ite");
    }
  }
  NameSupply names = problem_names(p);
  Formula f = skolemize_universals(p.formula(), names).formula;
  f = desugar_ite(f, names).formula;
  std::vector<RegularClause> out;
  for (const Clause& clause : to_cnf(f))
  {
    RegularClause rc = classify_clause(clause, p.target.name);
    if (rc.kind == ClauseKind::NotRegular)
    {
      fail(ErrorKind::NotRegular, "clause " + render(to_formula(rc))
                                      + " is not regular: "
                                      + not_regular_reason(rc, p.target.name));
    }
    out.push_back(std::move(rc));
  }
  return out;
}

FFreeResult solve_ffree(const RegularClause& c)
{
  CongruenceClosure cc(c.negative);
  for (std::size_t i = 0; i < c.positive.size(); ++i)
  {
    if (c.positive_occurrence[i]) continue;
    const auto& [s, t] = c.positive[i];
    if (s == t || cc.equivalent(s, t)) return FFreeResult::All;
  }
  return FFreeResult::None;
}

TreeAutomaton solve_case1(const RegularClause& c, const Alphabet& alphabet,
                          const std::vector<std::string>& params)
{
  if (solve_ffree(c) == FFreeResult::All) return universal_automaton(alphabet);
  CongruenceClosure cc(c.negative);
  std::optional<TreeAutomaton> result;
  for (std::size_t i = 0; i < c.positive.size(); ++i)
  {
    if (!c.positive_occurrence[i]) continue;
    const TargetOccurrence& occ = *c.positive_occurrence[i];
    const Term& t = c.positive[i].second;
    std::vector<Term> seeds;
    push_sides(c.negative, seeds);
    seeds.push_back(t);
    seeds.insert(seeds.end(), occ.args.begin(), occ.args.end());
    for (const Term& u : occ.context.hole_free_subterms()) seeds.push_back(u);
    std::vector<Term> support = subterm_closure(seeds);
    CongruentialAutomaton aec = build_aec(c.negative, support, TermOrder(), alphabet);
    TreeAutomaton a = aec.automaton;
    for (const auto& [q, u] : aec.representatives)
    {
      if (cc.equivalent(occ.context.plug(u), t)) a.set_accepting(q);
    }
    add_parameter_transitions(a, occ, params);
    TreeAutomaton part = project(a, alphabet);
    result = result ? unite(*result, part) : part;
  }
  return result ? *result : empty_automaton(alphabet);
}

TreeAutomaton solve_case2(const RegularClause& c, const Alphabet& alphabet,
                          const std::vector<std::string>& params)
{
  std::size_t j = 0;
  while (!c.negative_occurrence[j]) ++j;
  const TargetOccurrence& occ = *c.negative_occurrence[j];
  const Term& t = c.negative[j].second;
  EquationSet rest;
  for (std::size_t i = 0; i < c.negative.size(); ++i)
  {
    if (i != j) rest.push_back(c.negative[i]);
  }
  for (const auto& [u, v] : c.positive)
  {
    if (entails(rest, u, v)) return universal_automaton(alphabet);
  }
  std::vector<Term> seeds;
  push_sides(rest, seeds);
  push_sides(c.positive, seeds);
  seeds.push_back(t);
  seeds.insert(seeds.end(), occ.args.begin(), occ.args.end());
  std::vector<Term> support = subterm_closure(seeds);
  CongruentialAutomaton aec = build_aec(rest, support, TermOrder(), alphabet);
  TreeAutomaton a = aec.automaton;
  for (const auto& [q, uq] : aec.representatives)
  {
    CongruenceClosure cc(rest);
    cc.merge(occ.context.plug(uq), t);
    for (const auto& [u, v] : c.positive)
    {
      if (cc.equivalent(u, v))
      {
        a.set_accepting(q);
        break;
      }
    }
  }
  add_parameter_transitions(a, occ, params);
  return project(a, alphabet);
}

TreeAutomaton clause_automaton(const RegularClause& c, const Alphabet& alphabet,
                               const std::vector<std::string>& params)
{
  switch (c.kind)
  {
    case ClauseKind::Case1: return solve_case1(c, alphabet, params);
    case ClauseKind::Case2: return solve_case2(c, alphabet, params);
    case ClauseKind::FFree:
      return solve_ffree(c) == FFreeResult::All ? universal_automaton(alphabet)
                                                : empty_automaton(alphabet);
    case ClauseKind::NotRegular: break;
  }
  fail(ErrorKind::NotRegular, "clause " + render(to_formula(c)) + " is not regular");
}

Alphabet candidate_alphabet(const SygusProblem& p)
{
  return Alphabet(p.candidate_alphabet());
}

TermOrder witness_order(const SygusProblem& p)
{
  return TermOrder(p.target.param_names());
}

TreeGrammar universal_grammar(const Alphabet& alphabet, const std::string& nonterminal,
                              const std::string& sort)
{
  TreeGrammar g;
  g.nonterminals = {nonterminal};
  g.sorts = {sort};
  for (const RankedSymbol& s : alphabet.symbols())
  {
    g.productions.push_back(
        {nonterminal, Term(s.name, std::vector<Term>(s.arity, Term(nonterminal)))});
  }
  return g;
}

Verdict solve_regular(const SygusProblem& p)
{
  if (p.string_grammar)
  {
    fail(ErrorKind::Unsupported,
         "string grammars are not regular tree grammars; use the bounded engine");
  }
  std::vector<RegularClause> clauses = normalize(p);
  TreeGrammar g = p.effective_grammar();
  Alphabet sigma = candidate_alphabet(p).merged_with(grammar_alphabet(g));
  std::vector<std::string> params = p.target.param_names();
  std::vector<TreeAutomaton> parts;
  for (const RegularClause& c : clauses) parts.push_back(clause_automaton(c, sigma, params));
  std::stable_sort(parts.begin(), parts.end(), [](const auto& x, const auto& y) {
    return x.num_states() < y.num_states();
  });
  TreeAutomaton solutions = universal_automaton(sigma);
  if (!parts.empty())
  {
    solutions = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i)
    {
      solutions = intersect(solutions, parts[i]);
    }
  }
  solutions = intersect(solutions, grammar_to_automaton(g, sigma));
  std::optional<Term> w = witness(solutions, witness_order(p));
  Verdict v = w ? Verdict::solvable(*w, "regular-euf") : Verdict::unsolvable("regular-euf");
  v.solutions = std::move(solutions);
  return v;
}

AutomatonClause automaton_to_formula(const TreeAutomaton& a, const std::string& target,
                                     const std::vector<std::string>& params)
{
  TreeAutomaton t = trim(a);
  if (t.accepting().empty())
  {
    fail(ErrorKind::EmptyLanguage, "automaton accepts no term");
  }
  NameSupply names;
  for (const RankedSymbol& s : a.alphabet().symbols()) names.reserve(s.name);
  for (const std::string& x : params) names.reserve(x);
  names.reserve(target);
  AutomatonClause out;
  std::map<std::string, Term> sigma;
  for (std::size_t i = 0; i < params.size(); ++i)
  {
    out.constants.push_back(names.fresh_like("c_" + std::to_string(i + 1)));
    sigma.emplace(params[i], Term(out.constants.back()));
  }
  std::map<State, Term> reps = minimal_terms(t, TermOrder(params));
  for (auto& [q, u] : reps) u = substitute_leaves(u, sigma);
  Clause clause;
  for (const auto& [key, target_state] : t.transitions())
  {
    std::vector<Term> kids;
    for (State q : key.second) kids.push_back(reps.at(q));
    Term lhs = substitute_leaves(Term(t.alphabet()[key.first].name, std::move(kids)), sigma);
    clause.push_back({false, fm::eq(lhs, reps.at(target_state))});
  }
  std::vector<Term> cs;
  for (const std::string& c : out.constants) cs.emplace_back(c);
  Term app(target, cs);
  for (State q : t.accepting()) clause.push_back({true, fm::eq(app, reps.at(q))});
  out.clause = classify_clause(clause, target);
  return out;
}

SygusProblem intersection_nonempty_reduction(const std::vector<TreeAutomaton>& automata)
{
  Alphabet common;
  for (const TreeAutomaton& a : automata) common = common.merged_with(a.alphabet());
  SygusProblem p;
  p.logic = "EUF";
  p.theory = Theory::EUF;
  NameSupply names;
  for (const RankedSymbol& s : common.symbols())
  {
    names.reserve(s.name);
    p.signature.declare({s.name, std::vector<std::string>(s.arity, "U"), "U", s.arity == 0});
  }
  p.target.name = names.fresh_like("f");
  p.target.sort = "U";
  for (const TreeAutomaton& a : automata)
  {
    TreeAutomaton ext = extend_alphabet(a, common);
    if (trim(ext).accepting().empty())
    {
      p.constraints.push_back(fm::bottom());
      continue;
    }
    p.constraints.push_back(to_formula(automaton_to_formula(ext, p.target.name, {}).clause));
  }
  if (p.constraints.empty()) p.constraints.push_back(fm::top());
  return p;
}

}  // namespace regsyn
