#ifndef REGSYN_GRAMMAR_H
#define REGSYN_GRAMMAR_H

#include <string>
#include <vector>

#include "regsyn/term.h"

namespace regsyn {

/** A → rhs, where leaves of `rhs` named after nonterminals are nonterminal
 * references and everything else is a signature symbol. */
struct Production
{
  std::string lhs;
  Term rhs;

  bool operator==(const Production&) const = default;
};

/**
 * Regular tree grammar. The start symbol is the first nonterminal; sorts
 * are kept only so the grammar prints back the way it was written.
 */
struct TreeGrammar
{
  std::vector<std::string> nonterminals;
  std::vector<std::string> sorts;
  std::vector<Production> productions;

  const std::string& start() const { return nonterminals.front(); }
  bool is_nonterminal(const std::string& name) const;
  /** Right-hand sides of `lhs`, in declaration order. */
  std::vector<Term> alternatives(const std::string& lhs) const;
  /** Throws Syntax if the start is missing or a rule names an undeclared
   * nonterminal on its left-hand side. */
  void validate() const;

  bool operator==(const TreeGrammar&) const = default;
};

/** Terminal (a literal token) or nonterminal reference in a string rule. */
struct GrammarSymbol
{
  bool terminal;
  std::string text;

  bool operator==(const GrammarSymbol&) const = default;
};

struct StringRule
{
  std::string lhs;
  std::vector<GrammarSymbol> body;

  bool operator==(const StringRule&) const = default;
};

/** Context-free string grammar without epsilon rules; first nonterminal is
 * the start symbol. */
struct StringGrammar
{
  std::vector<std::string> nonterminals;
  std::vector<StringRule> rules;

  const std::string& start() const { return nonterminals.front(); }
  bool is_nonterminal(const std::string& name) const;
  /** Throws Syntax on an empty body or an undeclared nonterminal. */
  void validate() const;

  bool operator==(const StringGrammar&) const = default;
};

/**
 * Parses the BNF text form: one `N -> alt | alt ...` rule per line,
 * whitespace-separated tokens, tokens that appear as some left-hand side are
 * nonterminals and all others are terminals. Lines starting with `#` are
 * comments. An empty alternative is an epsilon rule and is rejected.
 */
StringGrammar parse_bnf(const std::string& text);

/** Terminal alphabet in first-occurrence order. */
std::vector<std::string> terminals(const StringGrammar& g);

}  // namespace regsyn

#endif
