#ifndef REGSYN_REGULAR_EUF_H
#define REGSYN_REGULAR_EUF_H

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "regsyn/automaton.h"
#include "regsyn/congruence.h"
#include "regsyn/problem.h"
#include "regsyn/verdict.h"

namespace regsyn {

enum class ClauseKind
{
  Case1,
  Case2,
  FFree,
  NotRegular,
};

const char* to_string(ClauseKind k);

/** An equation side written as B[f(s_1..s_k)]. */
struct TargetOccurrence
{
  Context context;
  std::vector<Term> args;
};

/**
 * Normalized clause (∧ negative) → (∨ positive). Equations carrying the
 * target are oriented with the target on the left; `occurrence` is indexed
 * like the equation lists and empty for target-free equations.
 */
struct RegularClause
{
  EquationSet negative;
  EquationSet positive;
  std::vector<std::optional<TargetOccurrence>> negative_occurrence;
  std::vector<std::optional<TargetOccurrence>> positive_occurrence;
  ClauseKind kind = ClauseKind::FFree;
};

/** Clause as a formula `(=> (and N) (or P))`. */
Formula to_formula(const RegularClause& c);

/** Splits and classifies one CNF clause of literals over equations. */
RegularClause classify_clause(const Clause& clause, const std::string& target);

/**
 * ITE desugaring, skolemization, CNF, and classification of every clause.
 * Throws IteInGrammar when the grammar uses ite and NotRegular (naming the
 * clause) when a clause falls outside both cases.
 */
std::vector<RegularClause> normalize(const SygusProblem& p);

/** Result of deciding an f-free clause. */
enum class FFreeResult
{
  All,
  None,
};
FFreeResult solve_ffree(const RegularClause& c);

/**
 * Per-clause solution automata over `alphabet` (which should contain the
 * signature symbols and the parameters). `params` names x_1..x_k.
 */
TreeAutomaton solve_case1(const RegularClause& c, const Alphabet& alphabet,
                          const std::vector<std::string>& params);
TreeAutomaton solve_case2(const RegularClause& c, const Alphabet& alphabet,
                          const std::vector<std::string>& params);
/** Dispatches on the clause kind. */
TreeAutomaton clause_automaton(const RegularClause& c, const Alphabet& alphabet,
                               const std::vector<std::string>& params);

/** Alphabet for candidate bodies: signature, parameters, grammar symbols. */
Alphabet candidate_alphabet(const SygusProblem& p);

/** Order used to pick witnesses: parameters first, then bytewise. */
TermOrder witness_order(const SygusProblem& p);

/** Grammar whose language is every term over the alphabet. */
TreeGrammar universal_grammar(const Alphabet& alphabet,
                              const std::string& nonterminal = "Start",
                              const std::string& sort = "U");

/** Decides a regular SyGuS-EUF problem. */
Verdict solve_regular(const SygusProblem& p);

struct AutomatonClause
{
  RegularClause clause;
  /** c_1..c_k standing for the parameters. */
  std::vector<std::string> constants;
};

/**
 * A clause whose solutions (as bodies for `target` with `params`) are the
 * language of `a`. Throws EmptyLanguage if the language is empty.
 */
AutomatonClause automaton_to_formula(const TreeAutomaton& a, const std::string& target,
                                     const std::vector<std::string>& params);

/**
 * SyGuS problem with nullary target `f` and the universal grammar over the
 * common alphabet that is solvable iff the languages intersect.
 */
SygusProblem intersection_nonempty_reduction(const std::vector<TreeAutomaton>& automata);

}  // namespace regsyn

#endif
