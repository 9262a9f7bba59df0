#ifndef REGSYN_CONGRUENCE_H
#define REGSYN_CONGRUENCE_H

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "regsyn/automaton.h"
#include "regsyn/formula.h"
#include "regsyn/term.h"

namespace regsyn {

using Equation = std::pair<Term, Term>;
using EquationSet = std::vector<Equation>;

/**
 * Incremental ground congruence closure: union-find over the registered
 * terms, a signature table keyed by (head, child classes) and per-class use
 * lists. Terms are registered with all their subterms on first use.
 */
class CongruenceClosure
{
 public:
  CongruenceClosure() = default;
  explicit CongruenceClosure(const EquationSet& equations);

  /** Registers t and its subterms; returns t's node id. */
  std::size_t add(const Term& t);
  void merge(const Term& s, const Term& t);
  bool equivalent(const Term& s, const Term& t);

  bool contains(const Term& t) const { return d_ids.count(t) != 0; }
  std::size_t find(std::size_t node) const;
  std::size_t num_nodes() const { return d_nodes.size(); }
  std::size_t num_classes() const;

 private:
  struct Node
  {
    std::string head;
    std::vector<std::size_t> children;
  };
  using Signature = std::pair<std::string, std::vector<std::size_t>>;

  Signature signature(std::size_t node) const;
  void process();

  std::vector<Node> d_nodes;
  mutable std::vector<std::size_t> d_parent;
  std::vector<std::vector<std::size_t>> d_uses;
  std::unordered_map<Term, std::size_t, TermHash> d_ids;
  std::map<Signature, std::size_t> d_table;
  std::vector<std::pair<std::size_t, std::size_t>> d_pending;
};

/** E ⊢ s = t. */
bool entails(const EquationSet& e, const Term& s, const Term& t);

/** Subterm closure of the given terms, sorted by `order`. */
std::vector<Term> subterm_closure(std::span<const Term> terms,
                                  const TermOrder& order = TermOrder());

/**
 * One state per distinct subterm, numbered from 0 in `order`; every state
 * accepts, so the language is exactly the subterm closure. The alphabet is
 * the symbols of the terms unless a larger one is given.
 */
TreeAutomaton subtree_automaton(std::span<const Term> terms,
                                const TermOrder& order = TermOrder(),
                                const std::optional<Alphabet>& alphabet = {});

/**
 * Removes q2, redirecting every transition into or out of it to q. Keys
 * that collide afterwards have their targets merged in turn (the target
 * already present keeps its id). Acceptance is inherited by q.
 */
TreeAutomaton merge(const TreeAutomaton& a, State q, State q2);

/** All pairs merged in one worklist; same result as successive merges. */
TreeAutomaton merge_all(const TreeAutomaton& a,
                        const std::vector<std::pair<State, State>>& pairs);

/** Automaton without accepting states whose states are E-classes of C. */
struct CongruentialAutomaton
{
  TreeAutomaton automaton;
  /** u_q: the least term of the support that runs to q. */
  std::map<State, Term> representatives;
};

/**
 * Subtree automaton of `support` with each equation's sides merged. The
 * support must be subterm-closed and contain both sides of every equation;
 * otherwise InvalidSupport is thrown.
 */
CongruentialAutomaton build_aec(const EquationSet& e, std::span<const Term> support,
                                const TermOrder& order = TermOrder(),
                                const std::optional<Alphabet>& alphabet = {});

/** (∧ antecedent) → (∨ consequents), decided through convexity. */
bool ground_clause_valid(const EquationSet& antecedent,
                         const EquationSet& consequents);

/**
 * Validity of a ground formula via the DNF of its negation. Term-level ITE
 * and top-level universal quantifiers are eliminated first; non-equation
 * atoms A are read as A = true.
 */
bool ground_formula_valid(const Formula& phi,
                          std::size_t clause_limit = kDefaultClauseLimit);

}  // namespace regsyn

#endif
