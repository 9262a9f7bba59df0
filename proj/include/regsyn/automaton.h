#ifndef REGSYN_AUTOMATON_H
#define REGSYN_AUTOMATON_H

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "regsyn/grammar.h"
#include "regsyn/term.h"

namespace regsyn {

using State = std::uint32_t;

struct RankedSymbol
{
  std::string name;
  std::size_t arity;

  bool operator==(const RankedSymbol&) const = default;
};

/** Ranked alphabet, kept sorted by name so iteration order is stable. */
class Alphabet
{
 public:
  Alphabet() = default;
  explicit Alphabet(const std::map<std::string, std::size_t>& symbols);

  std::size_t size() const { return d_symbols.size(); }
  const RankedSymbol& operator[](std::size_t i) const { return d_symbols[i]; }
  const std::vector<RankedSymbol>& symbols() const { return d_symbols; }
  std::optional<std::size_t> index_of(const std::string& name) const;
  std::size_t max_arity() const;

  /** Union of both alphabets; throws AlphabetMismatch on arity conflicts. */
  Alphabet merged_with(const Alphabet& other) const;
  std::map<std::string, std::size_t> to_map() const;

  bool operator==(const Alphabet&) const = default;

 private:
  std::vector<RankedSymbol> d_symbols;
};

/**
 * Deterministic, possibly incomplete bottom-up tree automaton.
 *
 * Transitions are keyed by (symbol index, argument states). States are
 * opaque integers; after merging they need not be contiguous. Labels are
 * optional human-readable metadata and take no part in equality.
 */
class TreeAutomaton
{
 public:
  using Key = std::pair<std::size_t, std::vector<State>>;

  TreeAutomaton() = default;
  explicit TreeAutomaton(Alphabet alphabet) : d_alphabet(std::move(alphabet)) {}

  const Alphabet& alphabet() const { return d_alphabet; }

  /** Adds a fresh state (one past the largest id in use). */
  State add_state();
  void add_state(State q);
  bool has_state(State q) const { return d_states.count(q) != 0; }
  const std::set<State>& states() const { return d_states; }
  std::size_t num_states() const { return d_states.size(); }

  /**
   * Adds δ(symbol, args) = target, creating states as needed. Throws
   * AlphabetMismatch for an unknown symbol or wrong arity, and Unsupported
   * if the key already maps to a different state.
   */
  void add_transition(const std::string& symbol, std::vector<State> args,
                      State target);
  void add_transition(std::size_t symbol, std::vector<State> args, State target);
  std::optional<State> transition(std::size_t symbol,
                                  const std::vector<State>& args) const;
  std::optional<State> transition(const std::string& symbol,
                                  const std::vector<State>& args) const;
  const std::map<Key, State>& transitions() const { return d_delta; }

  void set_accepting(State q, bool accepting = true);
  bool is_accepting(State q) const { return d_accepting.count(q) != 0; }
  const std::set<State>& accepting() const { return d_accepting; }
  void clear_accepting() { d_accepting.clear(); }

  /** Bottom-up run; nullopt when some step has no transition. Throws
   * AlphabetMismatch when the term uses a symbol outside the alphabet. */
  std::optional<State> run(const Term& t) const;
  bool member(const Term& t) const;

  bool is_complete() const;

  void set_label(State q, std::string label) { d_labels[q] = std::move(label); }
  std::string label(State q) const;

  /** Replaces the transition map wholesale (used by merge-style rewrites). */
  void replace_transitions(std::map<Key, State> delta);
  /** Drops a state and every transition mentioning it. */
  void remove_state(State q);

  bool operator==(const TreeAutomaton& other) const;

 private:
  Alphabet d_alphabet;
  std::set<State> d_states;
  std::map<Key, State> d_delta;
  std::set<State> d_accepting;
  std::map<State, std::string> d_labels;
};

/** Adds one non-accepting sink state for all missing transitions (only if
 * the automaton is incomplete). */
TreeAutomaton complete(const TreeAutomaton& a);

/** Same automaton over a larger alphabet (new symbols have no transitions). */
TreeAutomaton extend_alphabet(const TreeAutomaton& a, const Alphabet& alphabet);

/**
 * Reachable product. States are the reachable pairs, numbered from 0 in
 * discovery order; a pair accepts iff combiner(accept_a, accept_b). Throws
 * AlphabetMismatch if the alphabets differ.
 */
TreeAutomaton product(const TreeAutomaton& a, const TreeAutomaton& b,
                      const std::function<bool(bool, bool)>& combiner);
TreeAutomaton intersect(const TreeAutomaton& a, const TreeAutomaton& b);
/** Completes both inputs, then takes the OR product. */
TreeAutomaton unite(const TreeAutomaton& a, const TreeAutomaton& b);

/** One complete accepting state over the alphabet. */
TreeAutomaton universal_automaton(const Alphabet& alphabet);
/** No states at all. */
TreeAutomaton empty_automaton(const Alphabet& alphabet);

std::set<State> reachable_states(const TreeAutomaton& a);
/** Keeps only states that are reachable and can reach an accepting state. */
TreeAutomaton trim(const TreeAutomaton& a);

bool is_empty(const TreeAutomaton& a);

/** Minimal term reaching each reachable state under `order`. */
std::map<State, Term> minimal_terms(const TreeAutomaton& a,
                                    const TermOrder& order = TermOrder());
/** Minimal accepted term under `order`, or nullopt if the language is empty. */
std::optional<Term> witness(const TreeAutomaton& a,
                            const TermOrder& order = TermOrder());

/**
 * Enumerates accepted terms one size level at a time; each level is sorted
 * by the order. Terms reaching every state are kept per size, so memory
 * grows with the number of distinct runs up to the current size.
 */
class LanguageEnumerator
{
 public:
  explicit LanguageEnumerator(const TreeAutomaton& a,
                              TermOrder order = TermOrder());

  /** Accepted terms of the next size (starting at 1). */
  std::vector<Term> next_level();
  std::size_t current_size() const { return d_size; }

 private:
  const TreeAutomaton& d_automaton;
  TermOrder d_order;
  std::size_t d_size = 0;
  /** d_by_size[n][q]: terms of size n+1 running to q. */
  std::vector<std::map<State, std::vector<Term>>> d_by_size;
};

/** All accepted terms of size ≤ max_size, in (size, order) order. */
std::vector<Term> enumerate_language(const TreeAutomaton& a,
                                     std::size_t max_size,
                                     const TermOrder& order = TermOrder());

/**
 * Whether the two automata accept the same terms of depth ≤ depth. The
 * check explores reachable pairs of runs level by level instead of listing
 * terms, which gives the same answer without the enumeration cost.
 */
bool language_equal_up_to(const TreeAutomaton& a, const TreeAutomaton& b,
                          std::size_t depth);

/**
 * Relabels the reachable part so that states are numbered by the order of
 * their minimal reaching terms. Two automata are isomorphic (on their
 * reachable parts) iff their canonical forms are equal.
 */
TreeAutomaton canonical_form(const TreeAutomaton& a,
                             const TermOrder& order = TermOrder());
bool isomorphic(const TreeAutomaton& a, const TreeAutomaton& b);

/** Graphviz rendering; see the README for the node and edge conventions. */
std::string to_dot(const TreeAutomaton& a, const std::string& name = "automaton");

/**
 * Nondeterministic construction from the grammar followed by subset
 * determinization over the given alphabet, which must contain every symbol
 * the grammar uses.
 */
TreeAutomaton grammar_to_automaton(const TreeGrammar& g, const Alphabet& alphabet);

/** Alphabet of all non-nonterminal symbols occurring in the grammar. */
Alphabet grammar_alphabet(const TreeGrammar& g);

}  // namespace regsyn

#endif
