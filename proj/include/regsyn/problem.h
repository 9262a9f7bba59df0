#ifndef REGSYN_PROBLEM_H
#define REGSYN_PROBLEM_H

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "regsyn/formula.h"
#include "regsyn/grammar.h"

namespace regsyn {

enum class Theory
{
  EUF,
  FD,
  BV,
};

const char* to_string(Theory t);

/** A declared function or constant. Sorts are kept as their source text;
 * all uninterpreted sorts are treated as one. */
struct SymbolDecl
{
  std::string name;
  std::vector<std::string> arg_sorts;
  std::string sort;
  /** Declared with declare-const rather than declare-fun. */
  bool is_const = false;

  std::size_t arity() const { return arg_sorts.size(); }
  bool operator==(const SymbolDecl&) const = default;
};

class Signature
{
 public:
  /** Throws DuplicateDeclaration if the name is taken. */
  void declare(SymbolDecl decl);
  const SymbolDecl* find(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name) != nullptr; }
  const std::vector<SymbolDecl>& symbols() const { return d_symbols; }

  bool operator==(const Signature&) const = default;

 private:
  std::vector<SymbolDecl> d_symbols;
};

struct Variable
{
  std::string name;
  std::string sort;

  bool operator==(const Variable&) const = default;
};

/** The function to synthesize and its bound parameters x_1..x_k. */
struct SynthTarget
{
  std::string name;
  std::vector<Variable> params;
  std::string sort;

  std::size_t arity() const { return params.size(); }
  std::vector<std::string> param_names() const;
  bool operator==(const SynthTarget&) const = default;
};

struct InfoEntry
{
  std::string key;
  std::string value;
  /** The value was a string literal. */
  bool quoted = false;

  bool operator==(const InfoEntry&) const = default;
};

struct SygusProblem
{
  std::string logic;
  Theory theory = Theory::EUF;
  std::vector<InfoEntry> info;
  Signature signature;
  /** declare-var variables: universally quantified over the constraint. */
  std::vector<Variable> universals;
  SynthTarget target;
  /** Absent means the universal grammar over the signature and params. */
  std::optional<TreeGrammar> grammar;
  /** String (context-free) grammar given with `:cfg`; candidates are strings
   * in call syntax and only the well-formed ones are terms. */
  std::optional<StringGrammar> string_grammar;
  std::vector<Formula> constraints;

  /** Conjunction of all constraints. */
  Formula formula() const;
  std::optional<std::string> info_value(std::string_view key) const;
  /** The explicit grammar, or the universal one (nonterminal `Start`). */
  TreeGrammar effective_grammar() const;
  /** Symbol/arity pairs available to candidates: signature, theory
   * builtins that appear in the grammar, and the parameters. */
  std::map<std::string, std::size_t> candidate_alphabet() const;

  bool operator==(const SygusProblem&) const = default;
};

SygusProblem parse_problem(std::string_view text);
std::string print_problem(const SygusProblem& p);

/** Parses a candidate body over the signature and the target's parameters;
 * throws ArityMismatch / UnknownSymbol. */
Term parse_candidate(const SygusProblem& p, std::string_view text);

/** Parses a formula over the signature, universals and target. */
Formula parse_formula(const SygusProblem& p, std::string_view text);

/** Renders a term or formula in problem-file syntax. */
std::string render(const Term& t);

/** Applies the candidate `body` for the target to every constraint. */
Formula instantiate(const SygusProblem& p, const Term& body);

}  // namespace regsyn

#endif
