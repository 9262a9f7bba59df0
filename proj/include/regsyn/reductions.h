#ifndef REGSYN_REDUCTIONS_H
#define REGSYN_REDUCTIONS_H

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "regsyn/congruence.h"
#include "regsyn/fd.h"
#include "regsyn/grammar.h"
#include "regsyn/problem.h"
#include "regsyn/verdict.h"

namespace regsyn {

// ---------------------------------------------------------------------------
// Post correspondence instances

/** Pairs (s_i, s'_i) of nonempty strings over {a, b}. */
struct PcpInstance
{
  std::vector<std::pair<std::string, std::string>> pairs;

  /** Throws Syntax if there are no pairs, a string is empty, or a letter is
   * not a or b. */
  void validate() const;
  bool operator==(const PcpInstance&) const = default;
};

/** Reads `{"pairs": [["bb","b"], ...]}`. */
PcpInstance parse_pcp_json(std::string_view text);
/** Compact form `s1,t1;s2,t2;...` stored in generated problems. */
std::string pcp_pairs_text(const PcpInstance& p);
PcpInstance parse_pcp_pairs_text(std::string_view text);

/** Whether the index sequence (1-based) solves the instance. */
bool pcp_solves(const PcpInstance& p, const std::vector<std::size_t>& indices);

/**
 * Tree encoding over unary g_a, g_b, gp_a, gp_b (gp_* standing for the primed
 * symbols), h, and the constant x: S -> body_j(V), V -> body_j(V) | x where
 * body_j spells s_j with g_* and then s'_j with gp_*. The constraint is
 * psi => (= (h f) (h x)) with psi's four equation schemas instantiated for
 * every chain over the g symbols applied to x of size at most `y_size`.
 */
SygusProblem gen_pcp_tree(const PcpInstance& p, std::size_t y_size = 2);
/** Same as the tree encoding with every unary application g(t) written
 * `(read g t)` over constant arrays. */
SygusProblem gen_pcp_arrays(const PcpInstance& p, std::size_t y_size = 2);
/**
 * Right-regular string grammar in call syntax whose well-formed strings are
 * the tree encoding's terms: S -> body_j( V, V -> body_j( V | x V | ) V | ).
 */
SygusProblem gen_pcp_regular(const PcpInstance& p, std::size_t y_size = 2);
/**
 * String grammar S -> o_i V c_i, V -> o_i V c_i | x over symbols p (arity
 * `m`, letter a) and q (arity `n`, letter b) whose well-formed strings are
 * exactly the solutions; the constraint is (= f f).
 */
SygusProblem gen_pcp_wellformed(const PcpInstance& p, std::size_t m = 1, std::size_t n = 2);

/** The tree-encoding term for an index sequence. */
Term pcp_candidate(const PcpInstance& p, const std::vector<std::size_t>& indices);
/** Index sequence of a tree-encoding term (array reads are accepted too);
 * throws MalformedCandidate if the term is not a derivation. */
std::vector<std::size_t> decode_pcp_candidate(const PcpInstance& p, const Term& w);
/** Whether the decoded index sequence solves the instance. */
bool check_pcp_candidate(const PcpInstance& p, const Term& w);

// ---------------------------------------------------------------------------
// Simultaneous rigid E-unification

/** Premises ⊢ goal, both over the shared variables. */
struct RigidEquation
{
  EquationSet premises;
  Equation goal;
};

struct SreuInstance
{
  std::vector<SymbolDecl> signature;
  /** x_1..x_m in index order. */
  std::vector<std::string> variables;
  std::vector<RigidEquation> equations;
};

/**
 * S-expression input: `(declare-fun g (U U) U)`, `(declare-const c U)`,
 * `(declare-var x1 U)` in variable order, and `(rigid ((= s t) ...) (= s t))`
 * per rigid equation.
 */
SreuInstance parse_sreu(std::string_view text);

/**
 * EUF problem with unary target f, fresh constants a_1..a_m and bot, the
 * ITE chain grammar A_i -> (ite (= x a_i) S A_i+1), A_m -> (ite (= x a_m) S
 * bot), S -> g(S..S) per symbol, and one implication per rigid equation with
 * x_i replaced by (f a_i) and pairwise distinct a's in the antecedent.
 */
SygusProblem gen_sreu(const SreuInstance& s);
/** The ITE chain selecting the ground term `u[i]` for x_i. */
Term sreu_candidate(const SreuInstance& s, const std::vector<Term>& u);

// ---------------------------------------------------------------------------
// Context-free intersection encoded with bit-vector concatenation

struct CfgPair
{
  StringGrammar first;
  StringGrammar second;
};

/** Two BNF grammars separated by a line holding `%%`. */
CfgPair parse_cfg_pair(std::string_view text);

/** Bits per letter for an alphabet of the given size: 1 + ceil(log2 n). */
std::size_t bv_encoding_width(std::size_t letters);

/**
 * BV problem: letters coded by their index in the sorted joint alphabet,
 * rule bodies joined with right-nested concat, nonterminals renamed L_* and
 * R_*, start rule S -> (= L_S1 R_S2), nullary Boolean target, constraint
 * (not f).
 */
SygusProblem gen_cfg_bv(const CfgPair& c);

/** Flattened bit string of a concat tree of #b literals. */
std::string bv_bits(const Term& t);
/** Whether (not w) holds for a candidate (= lhs rhs): the sides differ as
 * bit strings. Throws MalformedCandidate on other shapes. */
bool check_bv_candidate(const Term& w);

// ---------------------------------------------------------------------------
// Call syntax and string grammars

/** Ranked symbols a call-syntax string may use. */
using Arities = std::map<std::string, std::size_t, std::less<>>;

/** Parses `g(a,h(x))`; nullopt if the text is not a well-formed term over
 * the given symbols. */
std::optional<Term> parse_call_syntax(std::string_view text, const Arities& arities);
std::string to_call_syntax(const Term& t);

/**
 * Terms of size ≤ max_size whose call-syntax spelling the string grammar
 * derives, sorted by size then `order`, without duplicates. Derivations are
 * cut as soon as their terminal prefix cannot start a well-formed term.
 */
std::vector<Term> enumerate_string_grammar(const StringGrammar& g, const Arities& arities,
                                           std::size_t max_size,
                                           const TermOrder& order = TermOrder());

/** Symbols available to candidates of a string-grammar problem. */
Arities candidate_arities(const SygusProblem& p);

// ---------------------------------------------------------------------------
// Bounded search

using Oracle = std::function<bool(const Term&)>;

/**
 * Validity check for candidates: the exact checker named by the problem's
 * `:reduction` entry when there is one, the model for FD, and ground EUF
 * validity of the instantiated constraint otherwise.
 */
Oracle default_oracle(const SygusProblem& p, const FiniteModel* model = nullptr);

/** Candidates of size ≤ max_size in (size, witness order) order. */
std::vector<Term> enumerate_candidates(const SygusProblem& p, std::size_t max_size);

/** First candidate (in enumeration order) the oracle accepts; Unknown with
 * the bound otherwise. Never answers Unsolvable. */
Verdict bounded_solve(const SygusProblem& p, const Oracle& oracle, std::size_t max_size);

}  // namespace regsyn

#endif
