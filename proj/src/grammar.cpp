#include "regsyn/grammar.h"

#include <algorithm>
#include <set>
#include <sstream>

#include "regsyn/error.h"

namespace regsyn {

bool TreeGrammar::is_nonterminal(const std::string& name) const
{
  return std::find(nonterminals.begin(), nonterminals.end(), name)
         != nonterminals.end();
}

std::vector<Term> TreeGrammar::alternatives(const std::string& lhs) const
{
  std::vector<Term> out;
  for (const Production& p : productions)
  {
    if (p.lhs == lhs) out.push_back(p.rhs);
  }
  return out;
}

void TreeGrammar::validate() const
{
  if (nonterminals.empty()) fail(ErrorKind::Syntax, "grammar has no start symbol");
  for (const Production& p : productions)
  {
    if (!is_nonterminal(p.lhs))
    {
      fail(ErrorKind::UnknownSymbol, "undeclared nonterminal " + p.lhs);
    }
  }
}

bool StringGrammar::is_nonterminal(const std::string& name) const
{
  return std::find(nonterminals.begin(), nonterminals.end(), name)
         != nonterminals.end();
}

void StringGrammar::validate() const
{
  if (nonterminals.empty()) fail(ErrorKind::Syntax, "grammar has no start symbol");
  for (const StringRule& r : rules)
  {
    if (!is_nonterminal(r.lhs))
    {
      fail(ErrorKind::UnknownSymbol, "undeclared nonterminal " + r.lhs);
    }
    if (r.body.empty())
    {
      fail(ErrorKind::Syntax, "epsilon rule for " + r.lhs + " is not allowed");
    }
    for (const GrammarSymbol& s : r.body)
    {
      if (!s.terminal && !is_nonterminal(s.text))
      {
        fail(ErrorKind::UnknownSymbol, "undeclared nonterminal " + s.text);
      }
    }
  }
}

namespace {

std::vector<std::string> split_ws(const std::string& s)
{
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace

StringGrammar parse_bnf(const std::string& text)
{
  struct RawRule
  {
    std::string lhs;
    std::vector<std::vector<std::string>> alts;
    std::size_t line;
  };
  std::vector<RawRule> raw;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line))
  {
    ++lineno;
    std::vector<std::string> toks = split_ws(line);
    if (toks.empty() || toks[0][0] == '#') continue;
    if (toks.size() < 2 || toks[1] != "->")
    {
      fail(ErrorKind::Syntax,
           "expected `N -> ...` at line " + std::to_string(lineno));
    }
    RawRule r{toks[0], {{}}, lineno};
    for (std::size_t i = 2; i < toks.size(); ++i)
    {
      if (toks[i] == "|")
      {
        r.alts.emplace_back();
      }
      else
      {
        r.alts.back().push_back(toks[i]);
      }
    }
    raw.push_back(std::move(r));
  }
  StringGrammar g;
  std::set<std::string> nts;
  for (const RawRule& r : raw)
  {
    if (nts.insert(r.lhs).second) g.nonterminals.push_back(r.lhs);
  }
  if (g.nonterminals.empty()) fail(ErrorKind::Syntax, "grammar has no rules");
  for (const RawRule& r : raw)
  {
    for (const auto& alt : r.alts)
    {
      if (alt.empty())
      {
        fail(ErrorKind::Syntax, "epsilon alternative for " + r.lhs
                                    + " at line " + std::to_string(r.line));
      }
      StringRule rule{r.lhs, {}};
      for (const std::string& tok : alt)
      {
        rule.body.push_back({nts.count(tok) == 0, tok});
      }
      g.rules.push_back(std::move(rule));
    }
  }
  return g;
}

std::vector<std::string> terminals(const StringGrammar& g)
{
  std::vector<std::string> out;
  for (const StringRule& r : g.rules)
  {
    for (const GrammarSymbol& s : r.body)
    {
      if (s.terminal && std::find(out.begin(), out.end(), s.text) == out.end())
      {
        out.push_back(s.text);
      }
    }
  }
  return out;
}

}  // namespace regsyn
