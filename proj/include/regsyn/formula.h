#ifndef REGSYN_FORMULA_H
#define REGSYN_FORMULA_H

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "regsyn/term.h"

namespace regsyn {

/**
 * Formulas share the Term representation. A formula is a term whose head is
 * a connective (`=`, `not`, `and`, `or`, `=>`, `true`, `false`), a boolean
 * `ite`, a quantifier, or any other term used as a boolean atom. Term-level
 * `ite` nodes take a formula as their first child.
 */
using Formula = Term;

namespace fm {
Formula eq(Term a, Term b);
Formula neg(Formula f);
Formula conj(std::vector<Formula> fs);
Formula disj(std::vector<Formula> fs);
Formula implies(Formula a, Formula b);
Term ite(Formula c, Term then_term, Term else_term);
Formula top();
Formula bottom();

bool is_eq(const Formula& f);
bool is_true(const Formula& f);
bool is_false(const Formula& f);
}  // namespace fm

/** Equation or negated equation (or, outside EUF, a negated boolean atom). */
struct Literal
{
  bool positive;
  Formula atom;

  bool operator==(const Literal&) const = default;
};

Formula to_formula(const Literal& lit);

using Clause = std::vector<Literal>;
using ClauseSet = std::vector<Clause>;
using Conjunction = std::vector<Literal>;

inline constexpr std::size_t kDefaultClauseLimit = 100000;

/**
 * Deterministic fresh-name generator. Names already present in `used` are
 * skipped; every name handed out is added to `used`.
 */
class NameSupply
{
 public:
  NameSupply() = default;
  explicit NameSupply(std::set<std::string> used) : d_used(std::move(used)) {}

  void reserve(const std::string& name) { d_used.insert(name); }
  bool is_used(const std::string& name) const { return d_used.count(name); }
  /** `<prefix><n>` for the next free counter value n. */
  std::string fresh_indexed(const std::string& prefix);
  /** `name` itself if free, otherwise `name_1`, `name_2`, ... */
  std::string fresh_like(const std::string& name);

 private:
  std::set<std::string> d_used;
  std::size_t d_counter = 0;
};

/** Negation normal form over literals, `and`, `or`; `=>` and boolean ite
 * are eliminated and true/false are folded away where possible. */
Formula to_nnf(const Formula& f);

/** Distribution-based CNF; throws ResourceLimit beyond `limit` clauses. */
ClauseSet to_cnf(const Formula& f, std::size_t limit = kDefaultClauseLimit);
/** Distribution-based DNF; throws ResourceLimit beyond `limit` disjuncts. */
std::vector<Conjunction> to_dnf(const Formula& f,
                                std::size_t limit = kDefaultClauseLimit);

Formula clauses_to_formula(const ClauseSet& clauses);

bool contains_ite(const Term& t);

struct DesugarResult
{
  Formula formula;
  /** Fresh constants introduced, in creation order. */
  std::vector<std::string> constants;
};

/**
 * Replaces every term-level ITE(c, t1, t2) by a fresh constant k and guards
 * the result with the definitions (c -> k = t1) and (not c -> k = t2):
 * result = (and defs) => phi[k]. Identical ITE terms share one constant.
 */
DesugarResult desugar_ite(const Formula& phi, NameSupply& names);

struct SkolemResult
{
  Formula formula;
  /** (variable, fresh constant) pairs, in binder order. */
  std::vector<std::pair<std::string, std::string>> constants;
};

/**
 * Strips top-level universal binders, renaming each bound variable to a
 * fresh `sk_<var>` constant. Quantifiers anywhere else throw Unsupported.
 */
SkolemResult skolemize_universals(const Formula& phi, NameSupply& names);

bool contains_quantifier(const Formula& f);

}  // namespace regsyn

#endif
