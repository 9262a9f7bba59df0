#ifndef REGSYN_TERM_H
#define REGSYN_TERM_H

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace regsyn {

/**
 * An immutable ranked tree: a head symbol and an ordered list of children.
 *
 * Terms are shared by pointer and compared structurally; the size and hash
 * are cached at construction so equality and ordering are cheap in the
 * common cases. Formulas are terms too: the boolean connectives are reserved
 * head names (see builtin::is_connective).
 *
 * A default-constructed Term is empty and only useful as a placeholder.
 */
class Term
{
 public:
  Term() = default;
  explicit Term(std::string head);
  Term(std::string head, std::vector<Term> children);

  bool empty() const { return d_node == nullptr; }
  const std::string& head() const;
  std::span<const Term> children() const;
  const Term& child(std::size_t i) const;
  std::size_t arity() const;
  bool is_leaf() const { return arity() == 0; }

  /** Number of nodes. */
  std::size_t size() const;
  /** Height; a leaf has depth 1. */
  std::size_t depth() const;
  std::size_t hash() const;

  bool operator==(const Term& other) const;
  bool operator!=(const Term& other) const { return !(*this == other); }

 private:
  struct Node;
  std::shared_ptr<const Node> d_node;
};

struct TermHash
{
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

using TermSet = std::unordered_set<Term, TermHash>;

/**
 * Total order on terms: size, then head symbol, then children left to right.
 *
 * Head symbols listed in `preferred` come first, in the listed order; all
 * other heads compare bytewise. The preferred list is how bound variables
 * (the arguments of the function being synthesized) are ranked ahead of the
 * signature symbols when picking witnesses.
 */
class TermOrder
{
 public:
  TermOrder() = default;
  explicit TermOrder(std::vector<std::string> preferred);

  int compare(const Term& a, const Term& b) const;
  int compare_heads(const std::string& a, const std::string& b) const;
  bool operator()(const Term& a, const Term& b) const
  {
    return compare(a, b) < 0;
  }

  const std::vector<std::string>& preferred() const { return d_preferred; }

 private:
  std::vector<std::string> d_preferred;
  std::map<std::string, std::size_t, std::less<>> d_rank;
};

/** All distinct subterms of the given terms, sorted by `order`. */
std::vector<Term> subterms(std::span<const Term> terms,
                           const TermOrder& order = TermOrder());
std::vector<Term> subterms(const Term& t, const TermOrder& order = TermOrder());

bool contains_symbol(const Term& t, std::string_view symbol);
std::size_t count_symbol(const Term& t, std::string_view symbol);

/** Replaces every leaf whose head is a key of `map` by the mapped term. */
Term substitute_leaves(const Term& t, const std::map<std::string, Term>& map);

/** Replaces every occurrence of subterm `from` by `to`. */
Term replace_subterm(const Term& t, const Term& from, const Term& to);

/** S-expression rendering: `a`, `(g a)`, `(h (g a) b)`. */
std::string to_string(const Term& t);
std::ostream& operator<<(std::ostream& os, const Term& t);

/**
 * A term with exactly one occurrence of the hole symbol. B[s] is `plug(s)`.
 */
class Context
{
 public:
  static const std::string kHole;

  /** The trivial context consisting of the hole alone. */
  Context();
  /** Throws Unsupported unless `with_hole` has exactly one hole. */
  explicit Context(Term with_hole);

  Term plug(const Term& s) const;
  const Term& term() const { return d_term; }
  bool is_hole() const { return d_term.head() == kHole; }

  /** Subterms of the context that do not contain the hole. */
  std::vector<Term> hole_free_subterms() const;

  bool operator==(const Context& other) const = default;

 private:
  Term d_term;
};

/**
 * Splits `t` at the unique occurrence of a subterm headed by `symbol`:
 * returns the surrounding context and the occurrence itself. The caller must
 * have checked that exactly one occurrence exists.
 */
std::pair<Context, Term> factor_occurrence(const Term& t,
                                           std::string_view symbol);

/**
 * Replacement w for the function symbol `target`: `body` is a term over the
 * signature and the bound parameter names.
 */
struct SecondOrderSubstitution
{
  std::string target;
  std::vector<std::string> params;
  Term body;
};

/**
 * s{w/f}: rewrites every f(s_1..s_k) bottom-up into body{s_i/x_i}.
 */
Term apply_second_order(const Term& s, const SecondOrderSubstitution& w);

/** Reserved head names shared by the formula layer and the parser. */
namespace builtin {
inline constexpr std::string_view kEq = "=";
inline constexpr std::string_view kNot = "not";
inline constexpr std::string_view kAnd = "and";
inline constexpr std::string_view kOr = "or";
inline constexpr std::string_view kImplies = "=>";
inline constexpr std::string_view kIte = "ite";
inline constexpr std::string_view kTrue = "true";
inline constexpr std::string_view kFalse = "false";
inline constexpr std::string_view kForall = "forall";
inline constexpr std::string_view kExists = "exists";

bool is_connective(std::string_view name);
bool is_reserved(std::string_view name);
}  // namespace builtin

}  // namespace regsyn

template <>
struct std::hash<regsyn::Term>
{
  std::size_t operator()(const regsyn::Term& t) const { return t.hash(); }
};

#endif
