#ifndef REGSYN_FD_H
#define REGSYN_FD_H

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "regsyn/grammar.h"
#include "regsyn/problem.h"
#include "regsyn/verdict.h"

namespace regsyn {

/**
 * Explicit finite structure over the domain {0..domain_size-1}. Function
 * tables are row-major: the value of g(a_1..a_k) sits at index
 * a_1*d^(k-1) + ... + a_k.
 */
struct FiniteModel
{
  struct Function
  {
    std::size_t arity = 0;
    std::vector<std::size_t> table;

    bool operator==(const Function&) const = default;
  };

  std::size_t domain_size = 0;
  std::map<std::string, std::size_t> constants;
  std::map<std::string, Function> functions;

  /** Throws ModelMismatch on short tables, out-of-range values, or an
   * element without a naming constant. */
  void validate() const;
  bool interprets(const std::string& name, std::size_t arity) const;

  bool operator==(const FiniteModel&) const = default;
};

/** Reads `{"domain": d, "constants": {...}, "functions": {"g": {"arity": k,
 * "table": [...]}}}`; throws Syntax on malformed JSON, ModelMismatch on an
 * inconsistent model. */
FiniteModel parse_model(std::string_view json_text);
std::string model_to_json(const FiniteModel& m);

/** Domain {0,1}, constants false/true, tables for xor, not, and, or. */
FiniteModel boolean_model();

/**
 * Bit-vectors of the given width with constants bv0..bv(2^w-1) and the
 * requested operators among and, or, xor, not, add, shl1. Throws
 * ResourceLimit above width 4 and Unsupported for other operators.
 */
FiniteModel bv_model(std::size_t width, const std::vector<std::string>& ops);

using Assignment = std::map<std::string, std::size_t, std::less<>>;

/**
 * Bottom-up evaluation. Variables in `assignment` shadow model constants;
 * symbols the model does not define fall back to the logical connectives
 * over 0/1 (ite picks a branch on a nonzero condition). Throws
 * UnassignedVariable for an unknown leaf and ModelMismatch for an unknown
 * function.
 */
std::size_t eval_term(const FiniteModel& m, const Term& t, const Assignment& assignment);
/** A formula holds when it evaluates to a nonzero element. */
bool eval_formula(const FiniteModel& m, const Formula& f, const Assignment& assignment);

/** Calls `fn` for every assignment of `variables` in row-major order. */
void for_each_assignment(std::size_t domain_size, const std::vector<std::string>& variables,
                         const std::function<void(const Assignment&)>& fn);

/** Values of an expression on every assignment of `variables`. */
struct FunctionTable
{
  std::vector<std::string> variables;
  std::vector<std::size_t> values;

  bool operator==(const FunctionTable&) const = default;
  bool operator<(const FunctionTable& o) const { return values < o.values; }
};

FunctionTable function_table(const FiniteModel& m, const Term& t,
                             const std::vector<std::string>& variables);

struct TableEntry
{
  Term term;
  FunctionTable table;
  /** 1-based iteration that discovered the entry. */
  std::size_t iteration = 0;
};

struct FixpointResult
{
  /** E_V per nonterminal, in discovery order. */
  std::map<std::string, std::vector<TableEntry>> sets;
  /** Entries added in each iteration, per nonterminal; the last iteration
   * adds nothing. */
  std::vector<std::map<std::string, std::vector<Term>>> history;
};

/**
 * Semantically distinct expressions per nonterminal. Every iteration plugs
 * the sets as they stood at its start into each production (rules in
 * order, argument combinations with the leftmost slot varying slowest) and
 * keeps an expression iff its table is new for its nonterminal. Stops after
 * an iteration that changes nothing.
 */
FixpointResult fixpoint_enumerate(const FiniteModel& m, const TreeGrammar& g,
                                  const std::vector<std::string>& variables);

/** Parameters of the target followed by the universals. */
std::vector<std::string> fd_variables(const SygusProblem& p);

/** Throws ModelMismatch if a signature symbol lacks an interpretation. */
void check_model(const SygusProblem& p, const FiniteModel& m);

/** First entry of E_start, in discovery order, whose instantiated
 * constraint holds under every assignment of the universals. */
Verdict solve_fd(const SygusProblem& p, const FiniteModel& m);

}  // namespace regsyn

#endif
