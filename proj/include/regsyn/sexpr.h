#ifndef REGSYN_SEXPR_H
#define REGSYN_SEXPR_H

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace regsyn {

/**
 * Parsed s-expression with source positions. Atoms are either symbols
 * (including numerals, keywords and `|quoted|` symbols, stored unquoted) or
 * string literals (stored with the `""` escape resolved).
 */
struct Sexpr
{
  enum class Kind
  {
    Symbol,
    String,
    List
  };

  Kind kind = Kind::List;
  std::string atom;
  std::vector<Sexpr> items;
  std::size_t line = 1;
  std::size_t column = 1;

  bool is_symbol() const { return kind == Kind::Symbol; }
  bool is_symbol(std::string_view s) const { return is_symbol() && atom == s; }
  bool is_string() const { return kind == Kind::String; }
  bool is_list() const { return kind == Kind::List; }
  std::size_t size() const { return items.size(); }
  const Sexpr& operator[](std::size_t i) const { return items.at(i); }

  /** "line L, column C" for diagnostics. */
  std::string where() const;
};

/** Reads every top-level s-expression; throws Syntax errors with positions. */
std::vector<Sexpr> read_sexprs(std::string_view text);

/** Reads exactly one s-expression. */
Sexpr read_sexpr(std::string_view text);

/** Compact single-line rendering. */
std::string to_string(const Sexpr& e);

/** Renders a string literal with the `""` escape. */
std::string quote_string(std::string_view s);

}  // namespace regsyn

#endif
