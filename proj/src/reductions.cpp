#include "regsyn/reductions.h"

#include <algorithm>
#include <set>
#include <sstream>

#include <json.hpp>

#include "regsyn/automaton.h"
#include "regsyn/error.h"
#include "regsyn/regular_euf.h"
#include "regsyn/sexpr.h"

namespace regsyn {

void PcpInstance::validate() const
{
  if (pairs.empty()) fail(ErrorKind::Syntax, "PCP instance has no pairs");
  for (const auto& [s, t] : pairs)
  {
    for (const std::string* w : {&s, &t})
    {
      if (w->empty()) fail(ErrorKind::Syntax, "PCP strings must be nonempty");
      if (w->find_first_not_of("ab") != std::string::npos)
      {
        fail(ErrorKind::Syntax, "PCP string \"" + *w + "\" uses letters other than a, b");
      }
    }
  }
}

PcpInstance parse_pcp_json(std::string_view text)
{
  PcpInstance p;
  try
  {
    nlohmann::json j = nlohmann::json::parse(text);
    for (const auto& pair : j.at("pairs"))
    {
      if (!pair.is_array() || pair.size() != 2)
      {
        fail(ErrorKind::Syntax, "each PCP pair must be a two-element array");
      }
      p.pairs.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
    }
  }
  catch (const nlohmann::json::exception& e)
  {
    fail(ErrorKind::Syntax, std::string("PCP instance: ") + e.what());
  }
  p.validate();
  return p;
}

std::string pcp_pairs_text(const PcpInstance& p)
{
  std::string out;
  for (const auto& [s, t] : p.pairs)
  {
    if (!out.empty()) out += ';';
    out += s + ',' + t;
  }
  return out;
}

PcpInstance parse_pcp_pairs_text(std::string_view text)
{
  PcpInstance p;
  std::size_t start = 0;
  while (start <= text.size())
  {
    std::size_t end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = text.substr(start, end - start);
    std::size_t comma = item.find(',');
    if (comma == std::string_view::npos)
    {
      fail(ErrorKind::Syntax, "malformed PCP pair \"" + std::string(item) + "\"");
    }
    p.pairs.emplace_back(std::string(item.substr(0, comma)), std::string(item.substr(comma + 1)));
    start = end + 1;
  }
  p.validate();
  return p;
}

bool pcp_solves(const PcpInstance& p, const std::vector<std::size_t>& indices)
{
  if (indices.empty()) return false;
  std::string top;
  std::string bottom;
  for (std::size_t i : indices)
  {
    top += p.pairs.at(i - 1).first;
    bottom += p.pairs.at(i - 1).second;
  }
  return top == bottom;
}

namespace {

const char* const kLetterSymbols[] = {"g_a", "g_b", "gp_a", "gp_b"};

std::string letter_symbol(char letter, bool primed)
{
  return std::string(primed ? "gp_" : "g_") + letter;
}

/** Unary application, optionally as an array read. */
Term apply_unary(const std::string& g, Term t, bool arrays)
{
  if (arrays) return Term("read", {Term(g), std::move(t)});
  return Term(g, {std::move(t)});
}

Term pcp_body(const std::pair<std::string, std::string>& pair, Term inner, bool arrays)
{
  for (auto it = pair.second.rbegin(); it != pair.second.rend(); ++it)
  {
    inner = apply_unary(letter_symbol(*it, true), std::move(inner), arrays);
  }
  for (auto it = pair.first.rbegin(); it != pair.first.rend(); ++it)
  {
    inner = apply_unary(letter_symbol(*it, false), std::move(inner), arrays);
  }
  return inner;
}

/** Chains over the four letter symbols applied to x, of size ≤ max_size. */
std::vector<Term> letter_chains(std::size_t max_size, bool arrays)
{
  std::vector<Term> all{Term("x")};
  std::vector<Term> frontier = all;
  for (std::size_t size = 2; size <= max_size; ++size)
  {
    std::vector<Term> next;
    for (const Term& t : frontier)
    {
      for (const char* g : kLetterSymbols) next.push_back(apply_unary(g, t, arrays));
    }
    all.insert(all.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return all;
}

Formula pcp_constraint(std::size_t y_size, bool arrays, const Term& target)
{
  auto u = [&](const char* g, Term t) { return apply_unary(g, std::move(t), arrays); };
  std::vector<Formula> psi;
  for (const Term& y : letter_chains(y_size, arrays))
  {
    psi.push_back(fm::eq(u("g_a", u("gp_b", y)), u("gp_b", u("g_a", y))));
    psi.push_back(fm::eq(u("g_b", u("gp_a", y)), u("gp_a", u("g_b", y))));
    psi.push_back(fm::eq(u("h", u("g_a", u("gp_a", y))), u("h", y)));
    psi.push_back(fm::eq(u("h", u("g_b", u("gp_b", y))), u("h", y)));
  }
  return fm::implies(fm::conj(std::move(psi)), fm::eq(u("h", target), u("h", Term("x"))));
}

SygusProblem pcp_skeleton(const PcpInstance& p, const std::string& kind, bool arrays)
{
  p.validate();
  SygusProblem out;
  out.logic = arrays ? "AR" : "EUF";
  out.theory = Theory::EUF;
  out.info.push_back({":reduction", kind, false});
  out.info.push_back({":pcp-pairs", pcp_pairs_text(p), true});
  if (arrays)
  {
    out.signature.declare({"read", {"U", "U"}, "U", false});
    for (const char* g : kLetterSymbols) out.signature.declare({g, {}, "U", true});
    out.signature.declare({"h", {}, "U", true});
  }
  else
  {
    for (const char* g : kLetterSymbols) out.signature.declare({g, {"U"}, "U", false});
    out.signature.declare({"h", {"U"}, "U", false});
  }
  out.signature.declare({"x", {}, "U", true});
  out.target = {"f", {}, "U"};
  return out;
}

SygusProblem pcp_tree_problem(const PcpInstance& p, std::size_t y_size, bool arrays)
{
  SygusProblem out = pcp_skeleton(p, arrays ? "pcp-arrays" : "pcp-tree", arrays);
  TreeGrammar g;
  g.nonterminals = {"S", "V"};
  g.sorts = {"U", "U"};
  for (const auto& pair : p.pairs) g.productions.push_back({"S", pcp_body(pair, Term("V"), arrays)});
  for (const auto& pair : p.pairs) g.productions.push_back({"V", pcp_body(pair, Term("V"), arrays)});
  g.productions.push_back({"V", Term("x")});
  out.grammar = std::move(g);
  out.constraints.push_back(pcp_constraint(y_size, arrays, Term("f")));
  return out;
}

GrammarSymbol terminal(std::string text) { return {true, std::move(text)}; }
GrammarSymbol nonterminal(std::string text) { return {false, std::move(text)}; }

}  // namespace

SygusProblem gen_pcp_tree(const PcpInstance& p, std::size_t y_size)
{
  return pcp_tree_problem(p, y_size, false);
}

SygusProblem gen_pcp_arrays(const PcpInstance& p, std::size_t y_size)
{
  return pcp_tree_problem(p, y_size, true);
}

SygusProblem gen_pcp_regular(const PcpInstance& p, std::size_t y_size)
{
  SygusProblem out = pcp_skeleton(p, "pcp-regular", false);
  StringGrammar g;
  g.nonterminals = {"S", "V"};
  std::vector<std::string> openers;
  for (const auto& [s, t] : p.pairs)
  {
    std::string o;
    for (char c : s) o += letter_symbol(c, false) + "(";
    for (char c : t) o += letter_symbol(c, true) + "(";
    openers.push_back(std::move(o));
  }
  for (const std::string& o : openers) g.rules.push_back({"S", {terminal(o), nonterminal("V")}});
  for (const std::string& o : openers) g.rules.push_back({"V", {terminal(o), nonterminal("V")}});
  g.rules.push_back({"V", {terminal("x"), nonterminal("V")}});
  g.rules.push_back({"V", {terminal(")"), nonterminal("V")}});
  g.rules.push_back({"V", {terminal(")")}});
  out.string_grammar = std::move(g);
  out.constraints.push_back(pcp_constraint(y_size, false, Term("f")));
  return out;
}

SygusProblem gen_pcp_wellformed(const PcpInstance& p, std::size_t m, std::size_t n)
{
  p.validate();
  if (m == 0 || n == 0 || m == n)
  {
    fail(ErrorKind::Syntax, "well-formedness encoding needs distinct positive arities");
  }
  SygusProblem out;
  out.logic = "EUF";
  out.theory = Theory::EUF;
  out.info.push_back({":reduction", "pcp-wellformed", false});
  out.info.push_back({":pcp-pairs", pcp_pairs_text(p), true});
  out.signature.declare({"p", std::vector<std::string>(m, "U"), "U", false});
  out.signature.declare({"q", std::vector<std::string>(n, "U"), "U", false});
  out.signature.declare({"x", {}, "U", true});
  out.target = {"f", {}, "U"};
  auto closer = [&](char letter) {
    std::string c;
    for (std::size_t i = 1; i < (letter == 'a' ? m : n); ++i) c += ",x";
    return c + ")";
  };
  StringGrammar g;
  g.nonterminals = {"S", "V"};
  std::vector<std::pair<std::string, std::string>> parts;
  for (const auto& [s, t] : p.pairs)
  {
    std::string open;
    for (char c : s) open += c == 'a' ? "p(" : "q(";
    std::string close;
    for (auto it = t.rbegin(); it != t.rend(); ++it) close += closer(*it);
    parts.emplace_back(std::move(open), std::move(close));
  }
  for (const char* lhs : {"S", "V"})
  {
    for (const auto& [open, close] : parts)
    {
      g.rules.push_back({lhs, {terminal(open), nonterminal("V"), terminal(close)}});
    }
  }
  g.rules.push_back({"V", {terminal("x")}});
  out.string_grammar = std::move(g);
  out.constraints.push_back(fm::eq(Term("f"), Term("f")));
  return out;
}

Term pcp_candidate(const PcpInstance& p, const std::vector<std::size_t>& indices)
{
  Term t("x");
  for (auto it = indices.rbegin(); it != indices.rend(); ++it)
  {
    t = pcp_body(p.pairs.at(*it - 1), std::move(t), false);
  }
  return t;
}

std::vector<std::size_t> decode_pcp_candidate(const PcpInstance& p, const Term& w)
{
  // Letters along the spine, primed ones marked by an uppercase letter.
  std::string spine;
  Term t = w;
  while (!t.is_leaf())
  {
    std::string g;
    Term next;
    if (t.head() == "read" && t.arity() == 2 && t.child(0).is_leaf())
    {
      g = t.child(0).head();
      next = t.child(1);
    }
    else if (t.arity() == 1)
    {
      g = t.head();
      next = t.child(0);
    }
    else
    {
      fail(ErrorKind::MalformedCandidate, "not a unary chain: " + render(w));
    }
    if (g == "g_a" || g == "g_b")
    {
      spine += g.back();
    }
    else if (g == "gp_a" || g == "gp_b")
    {
      spine += static_cast<char>(g.back() - 'a' + 'A');
    }
    else
    {
      fail(ErrorKind::MalformedCandidate, "unexpected symbol " + g + " in " + render(w));
    }
    t = next;
  }
  if (t.head() != "x" || spine.empty())
  {
    fail(ErrorKind::MalformedCandidate, "not a derivation of the encoding: " + render(w));
  }
  std::vector<std::size_t> indices;
  std::size_t i = 0;
  while (i < spine.size())
  {
    std::size_t j = i;
    std::string top;
    std::string bottom;
    while (j < spine.size() && std::islower(static_cast<unsigned char>(spine[j]))) top += spine[j++];
    while (j < spine.size() && std::isupper(static_cast<unsigned char>(spine[j])))
    {
      bottom += static_cast<char>(spine[j++] - 'A' + 'a');
    }
    auto match = std::find(p.pairs.begin(), p.pairs.end(), std::make_pair(top, bottom));
    if (top.empty() || bottom.empty() || match == p.pairs.end())
    {
      fail(ErrorKind::MalformedCandidate, "block (" + top + ", " + bottom
                                              + ") matches no pair in " + render(w));
    }
    indices.push_back(static_cast<std::size_t>(match - p.pairs.begin()) + 1);
    i = j;
  }
  return indices;
}

bool check_pcp_candidate(const PcpInstance& p, const Term& w)
{
  return pcp_solves(p, decode_pcp_candidate(p, w));
}

// ---------------------------------------------------------------------------

namespace {

class SreuReader
{
 public:
  SreuInstance read(std::string_view text)
  {
    for (const Sexpr& cmd : read_sexprs(text))
    {
      if (!cmd.is_list() || cmd.size() == 0 || !cmd[0].is_symbol())
      {
        fail(ErrorKind::Syntax, "expected a command at " + cmd.where());
      }
      const std::string& name = cmd[0].atom;
      if (name == "declare-fun" && cmd.size() == 4 && cmd[1].is_symbol() && cmd[2].is_list())
      {
        SymbolDecl d{cmd[1].atom, {}, to_string(cmd[3]), false};
        for (const Sexpr& s : cmd[2].items) d.arg_sorts.push_back(to_string(s));
        declare(d.name, d.arity(), cmd);
        d_s.signature.push_back(std::move(d));
      }
      else if (name == "declare-const" && cmd.size() == 3 && cmd[1].is_symbol())
      {
        declare(cmd[1].atom, 0, cmd);
        d_s.signature.push_back({cmd[1].atom, {}, to_string(cmd[2]), true});
      }
      else if (name == "declare-var" && cmd.size() == 3 && cmd[1].is_symbol())
      {
        declare(cmd[1].atom, 0, cmd);
        d_s.variables.push_back(cmd[1].atom);
      }
      else if (name == "rigid" && cmd.size() == 3 && cmd[1].is_list())
      {
        RigidEquation r;
        for (const Sexpr& e : cmd[1].items) r.premises.push_back(equation(e));
        r.goal = equation(cmd[2]);
        d_s.equations.push_back(std::move(r));
      }
      else
      {
        fail(ErrorKind::Syntax, "unexpected command " + name + " at " + cmd.where());
      }
    }
    if (d_s.variables.empty()) fail(ErrorKind::Syntax, "SREU instance declares no variables");
    return d_s;
  }

 private:
  void declare(const std::string& name, std::size_t arity, const Sexpr& at)
  {
    if (builtin::is_reserved(name) || !d_arity.emplace(name, arity).second)
    {
      fail(ErrorKind::DuplicateDeclaration, name + " declared twice at " + at.where());
    }
  }

  Term term(const Sexpr& e)
  {
    const Sexpr& head = e.is_list() && e.size() > 0 ? e[0] : e;
    if (!head.is_symbol()) fail(ErrorKind::Syntax, "expected a term at " + e.where());
    auto it = d_arity.find(head.atom);
    if (it == d_arity.end()) fail(ErrorKind::UnknownSymbol, head.atom + " at " + e.where());
    std::size_t given = e.is_list() ? e.size() - 1 : 0;
    if (it->second != given || (e.is_list() && given == 0))
    {
      fail(ErrorKind::ArityMismatch, head.atom + " applied to " + std::to_string(given)
                                         + " arguments at " + e.where());
    }
    std::vector<Term> kids;
    for (std::size_t i = 1; i < e.size(); ++i) kids.push_back(term(e[i]));
    return Term(head.atom, std::move(kids));
  }

  Equation equation(const Sexpr& e)
  {
    if (!e.is_list() || e.size() != 3 || !e[0].is_symbol("="))
    {
      fail(ErrorKind::Syntax, "expected an equation at " + e.where());
    }
    return {term(e[1]), term(e[2])};
  }

  SreuInstance d_s;
  std::map<std::string, std::size_t> d_arity;
};

struct SreuNames
{
  std::string target;
  std::string param;
  std::vector<std::string> constants;
  std::string bottom;
  std::vector<std::string> chain;
  std::string ground;
};

SreuNames sreu_names(const SreuInstance& s)
{
  NameSupply names;
  for (const SymbolDecl& d : s.signature) names.reserve(d.name);
  for (const std::string& v : s.variables) names.reserve(v);
  SreuNames out;
  out.target = names.fresh_like("f");
  out.param = names.fresh_like("x");
  for (std::size_t i = 1; i <= s.variables.size(); ++i)
  {
    out.constants.push_back(names.fresh_like("a_" + std::to_string(i)));
  }
  out.bottom = names.fresh_like("bot");
  for (std::size_t i = 1; i <= s.variables.size(); ++i)
  {
    out.chain.push_back(names.fresh_like("A_" + std::to_string(i)));
  }
  out.ground = names.fresh_like("S");
  return out;
}

}  // namespace

SreuInstance parse_sreu(std::string_view text)
{
  return SreuReader().read(text);
}

SygusProblem gen_sreu(const SreuInstance& s)
{
  if (s.variables.empty()) fail(ErrorKind::Syntax, "SREU instance declares no variables");
  const SreuNames n = sreu_names(s);
  const std::size_t m = s.variables.size();
  SygusProblem out;
  out.logic = "EUF";
  out.theory = Theory::EUF;
  out.info.push_back({":reduction", "sreu", false});
  for (const SymbolDecl& d : s.signature) out.signature.declare(d);
  for (const std::string& a : n.constants) out.signature.declare({a, {}, "U", true});
  out.signature.declare({n.bottom, {}, "U", true});
  out.target = {n.target, {{n.param, "U"}}, "U"};

  TreeGrammar g;
  g.nonterminals = n.chain;
  g.nonterminals.push_back(n.ground);
  g.sorts.assign(g.nonterminals.size(), "U");
  const Term x(n.param);
  for (std::size_t i = 0; i < m; ++i)
  {
    Term otherwise = i + 1 < m ? Term(n.chain[i + 1]) : Term(n.bottom);
    g.productions.push_back(
        {n.chain[i], fm::ite(fm::eq(x, Term(n.constants[i])), Term(n.ground), otherwise)});
  }
  for (const SymbolDecl& d : s.signature)
  {
    g.productions.push_back(
        {n.ground, Term(d.name, std::vector<Term>(d.arity(), Term(n.ground)))});
  }
  out.grammar = std::move(g);

  std::map<std::string, Term> sigma;
  for (std::size_t i = 0; i < m; ++i)
  {
    sigma.emplace(s.variables[i], Term(n.target, {Term(n.constants[i])}));
  }
  auto inst = [&](const Equation& e) {
    return fm::eq(substitute_leaves(e.first, sigma), substitute_leaves(e.second, sigma));
  };
  for (const RigidEquation& r : s.equations)
  {
    std::vector<Formula> ante;
    for (const Equation& e : r.premises) ante.push_back(inst(e));
    for (std::size_t k = 0; k < m; ++k)
    {
      for (std::size_t j = k + 1; j < m; ++j)
      {
        ante.push_back(fm::neg(fm::eq(Term(n.constants[k]), Term(n.constants[j]))));
      }
    }
    Formula goal = inst(r.goal);
    out.constraints.push_back(ante.empty() ? goal : fm::implies(fm::conj(std::move(ante)), goal));
  }
  if (out.constraints.empty()) out.constraints.push_back(fm::top());
  return out;
}

Term sreu_candidate(const SreuInstance& s, const std::vector<Term>& u)
{
  if (u.size() != s.variables.size())
  {
    fail(ErrorKind::ArityMismatch, "need one ground term per SREU variable");
  }
  const SreuNames n = sreu_names(s);
  Term t(n.bottom);
  for (std::size_t i = u.size(); i-- > 0;)
  {
    t = fm::ite(fm::eq(Term(n.param), Term(n.constants[i])), u[i], t);
  }
  return t;
}

// ---------------------------------------------------------------------------

CfgPair parse_cfg_pair(std::string_view text)
{
  std::istringstream in{std::string(text)};
  std::string line;
  std::string blocks[2];
  int which = 0;
  while (std::getline(in, line))
  {
    std::string trimmed = line;
    trimmed.erase(0, trimmed.find_first_not_of(" \t\r"));
    trimmed.erase(trimmed.find_last_not_of(" \t\r") + 1);
    if (trimmed == "%%")
    {
      if (++which > 1) fail(ErrorKind::Syntax, "more than two grammars in CFG pair");
      continue;
    }
    blocks[which] += line + "\n";
  }
  if (which != 1) fail(ErrorKind::Syntax, "CFG pair needs two grammars separated by %%");
  return {parse_bnf(blocks[0]), parse_bnf(blocks[1])};
}

std::size_t bv_encoding_width(std::size_t letters)
{
  std::size_t log = 0;
  while ((std::size_t{1} << log) < letters) ++log;
  return 1 + log;
}

SygusProblem gen_cfg_bv(const CfgPair& c)
{
  c.first.validate();
  c.second.validate();
  std::set<std::string> letters;
  for (const std::string& t : terminals(c.first)) letters.insert(t);
  for (const std::string& t : terminals(c.second)) letters.insert(t);
  const std::size_t width = bv_encoding_width(letters.size());
  std::map<std::string, std::string> code;
  std::size_t index = 0;
  for (const std::string& t : letters)
  {
    std::string bits = "#b";
    for (std::size_t b = width; b-- > 0;) bits += ((index >> b) & 1) ? '1' : '0';
    code.emplace(t, bits);
    ++index;
  }

  SygusProblem out;
  out.logic = "BV";
  out.theory = Theory::BV;
  out.info.push_back({":reduction", "cfg-bv", false});
  out.info.push_back({":letter-width", std::to_string(width), false});
  out.target = {"f", {}, "Bool"};
  TreeGrammar g;
  g.nonterminals.push_back("S");
  g.sorts.push_back("Bool");
  g.productions.push_back({"S", fm::eq(Term("L_" + c.first.start()), Term("R_" + c.second.start()))});
  for (const auto& [grammar, prefix] :
       {std::pair{&c.first, std::string("L_")}, std::pair{&c.second, std::string("R_")}})
  {
    for (const std::string& nt : grammar->nonterminals)
    {
      g.nonterminals.push_back(prefix + nt);
      g.sorts.push_back("BV");
    }
    for (const StringRule& r : grammar->rules)
    {
      std::vector<Term> pieces;
      for (const GrammarSymbol& s : r.body)
      {
        pieces.emplace_back(s.terminal ? code.at(s.text) : prefix + s.text);
      }
      Term body = pieces.back();
      for (std::size_t i = pieces.size() - 1; i-- > 0;) body = Term("concat", {pieces[i], body});
      g.productions.push_back({prefix + r.lhs, body});
    }
  }
  out.grammar = std::move(g);
  out.constraints.push_back(fm::neg(Term("f")));
  return out;
}

std::string bv_bits(const Term& t)
{
  if (t.is_leaf() && t.head().size() > 2 && t.head().compare(0, 2, "#b") == 0)
  {
    return t.head().substr(2);
  }
  if (t.head() == "concat" && t.arity() == 2) return bv_bits(t.child(0)) + bv_bits(t.child(1));
  fail(ErrorKind::MalformedCandidate, "not a concatenation of literals: " + render(t));
}

bool check_bv_candidate(const Term& w)
{
  if (!fm::is_eq(w))
  {
    fail(ErrorKind::MalformedCandidate, "expected an equation, got " + render(w));
  }
  return bv_bits(w.child(0)) != bv_bits(w.child(1));
}

// ---------------------------------------------------------------------------

namespace {

enum class Token
{
  Open,
  Close,
  Comma,
  Ident,
};

/** Splits call syntax into tokens; identifiers are maximal runs of other
 * non-space characters. */
std::vector<std::pair<Token, std::string>> tokenize(std::string_view text)
{
  std::vector<std::pair<Token, std::string>> out;
  std::size_t i = 0;
  while (i < text.size())
  {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)))
    {
      ++i;
    }
    else if (c == '(' || c == ')' || c == ',')
    {
      out.emplace_back(c == '(' ? Token::Open : c == ')' ? Token::Close : Token::Comma,
                       std::string(1, c));
      ++i;
    }
    else
    {
      std::size_t j = i;
      while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))
             && text[j] != '(' && text[j] != ')' && text[j] != ',')
      {
        ++j;
      }
      out.emplace_back(Token::Ident, std::string(text.substr(i, j - i)));
      i = j;
    }
  }
  return out;
}

/** Incremental recognizer for call syntax that rejects at the first token no
 * well-formed term can continue with. */
class CallParser
{
 public:
  explicit CallParser(const Arities& arities) : d_arities(&arities) {}

  bool feed(Token kind, const std::string& text)
  {
    ++d_tokens;
    switch (kind)
    {
      case Token::Ident:
      {
        if (d_expect != Expect::Term) return false;
        auto it = d_arities->find(text);
        if (it == d_arities->end()) return false;
        ++d_symbols;
        if (it->second == 0) return complete(Term(text));
        d_stack.push_back({text, it->second, {}});
        d_expect = Expect::Open;
        return true;
      }
      case Token::Open:
        if (d_expect != Expect::Open) return false;
        d_expect = Expect::Term;
        return true;
      case Token::Comma:
        if (d_expect != Expect::Separator) return false;
        if (d_stack.back().kids.size() >= d_stack.back().arity) return false;
        d_expect = Expect::Term;
        return true;
      case Token::Close:
      {
        if (d_expect != Expect::Separator) return false;
        Frame& top = d_stack.back();
        if (top.kids.size() != top.arity) return false;
        Term t(top.name, std::move(top.kids));
        d_stack.pop_back();
        return complete(std::move(t));
      }
    }
    return false;
  }

  bool feed_text(std::string_view text)
  {
    for (const auto& [kind, s] : tokenize(text))
    {
      if (!feed(kind, s)) return false;
    }
    return true;
  }

  bool finished() const { return d_expect == Expect::End; }
  const Term& result() const { return d_root; }
  std::size_t symbols() const { return d_symbols; }
  std::size_t tokens() const { return d_tokens; }

 private:
  enum class Expect
  {
    Term,
    Open,
    Separator,
    End,
  };

  struct Frame
  {
    std::string name;
    std::size_t arity;
    std::vector<Term> kids;
  };

  bool complete(Term t)
  {
    if (d_stack.empty())
    {
      d_root = std::move(t);
      d_expect = Expect::End;
    }
    else
    {
      d_stack.back().kids.push_back(std::move(t));
      d_expect = Expect::Separator;
    }
    return true;
  }

  const Arities* d_arities;
  std::vector<Frame> d_stack;
  Expect d_expect = Expect::Term;
  Term d_root;
  std::size_t d_symbols = 0;
  std::size_t d_tokens = 0;
};

class StringEnumerator
{
 public:
  StringEnumerator(const StringGrammar& g, const Arities& arities, std::size_t max_size)
      : d_g(g), d_arities(arities), d_max(max_size)
  {
    for (const StringRule& r : g.rules) d_rules[r.lhs].push_back(&r);
  }

  TermSet run()
  {
    // Pending symbols are kept reversed so the next one is at the back.
    std::vector<GrammarSymbol> pending{{false, d_g.start()}};
    walk(CallParser(d_arities), pending, 0);
    return std::move(d_found);
  }

 private:
  void walk(const CallParser& parser, std::vector<GrammarSymbol>& pending,
            std::size_t unit_steps)
  {
    if (pending.empty())
    {
      if (parser.finished()) d_found.insert(parser.result());
      return;
    }
    // A term of size n spells at most 4n tokens, and every pending symbol
    // yields at least one.
    if (parser.tokens() + pending.size() > 4 * d_max) return;
    GrammarSymbol next = pending.back();
    pending.pop_back();
    if (next.terminal)
    {
      CallParser p = parser;
      if (p.feed_text(next.text) && p.symbols() <= d_max) walk(p, pending, 0);
    }
    else
    {
      for (const StringRule* r : d_rules[next.text])
      {
        bool unit = r->body.size() == 1 && !r->body[0].terminal;
        if (unit && unit_steps >= d_g.nonterminals.size()) continue;
        std::size_t before = pending.size();
        pending.insert(pending.end(), r->body.rbegin(), r->body.rend());
        walk(parser, pending, unit ? unit_steps + 1 : 0);
        pending.resize(before);
      }
    }
    pending.push_back(next);
  }

  const StringGrammar& d_g;
  const Arities& d_arities;
  std::size_t d_max;
  std::map<std::string, std::vector<const StringRule*>> d_rules;
  TermSet d_found;
};

}  // namespace

std::optional<Term> parse_call_syntax(std::string_view text, const Arities& arities)
{
  CallParser p(arities);
  if (!p.feed_text(text) || !p.finished()) return std::nullopt;
  return p.result();
}

std::string to_call_syntax(const Term& t)
{
  if (t.is_leaf()) return t.head();
  std::string out = t.head() + "(";
  for (std::size_t i = 0; i < t.arity(); ++i)
  {
    if (i) out += ',';
    out += to_call_syntax(t.child(i));
  }
  return out + ")";
}

std::vector<Term> enumerate_string_grammar(const StringGrammar& g, const Arities& arities,
                                           std::size_t max_size, const TermOrder& order)
{
  TermSet found = StringEnumerator(g, arities, max_size).run();
  std::vector<Term> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), order);
  return out;
}

Arities candidate_arities(const SygusProblem& p)
{
  Arities out;
  for (const auto& [name, arity] : p.candidate_alphabet()) out.emplace(name, arity);
  return out;
}

Oracle default_oracle(const SygusProblem& p, const FiniteModel* model)
{
  std::optional<std::string> reduction = p.info_value(":reduction");
  if (reduction && reduction->rfind("pcp-", 0) == 0 && *reduction != "pcp-wellformed")
  {
    std::optional<std::string> pairs = p.info_value(":pcp-pairs");
    if (!pairs) fail(ErrorKind::Syntax, "PCP problem lacks :pcp-pairs");
    PcpInstance inst = parse_pcp_pairs_text(*pairs);
    return [inst](const Term& w) { return check_pcp_candidate(inst, w); };
  }
  if (reduction && *reduction == "cfg-bv") return check_bv_candidate;
  if (p.theory == Theory::FD)
  {
    if (!model) fail(ErrorKind::Usage, "checking FD candidates needs a model");
    check_model(p, *model);
    FiniteModel m = *model;
    std::vector<std::string> universals;
    for (const Variable& v : p.universals) universals.push_back(v.name);
    return [p, m, universals](const Term& w) {
      Formula phi = instantiate(p, w);
      bool valid = true;
      for_each_assignment(m.domain_size, universals, [&](const Assignment& a) {
        valid = valid && eval_formula(m, phi, a);
      });
      return valid;
    };
  }
  if (p.theory == Theory::BV)
  {
    fail(ErrorKind::Unsupported, "no validity checker for general BV problems");
  }
  return [p](const Term& w) { return ground_formula_valid(instantiate(p, w)); };
}

namespace {

TreeAutomaton candidate_automaton(const SygusProblem& p)
{
  TreeGrammar g = p.effective_grammar();
  Alphabet sigma = candidate_alphabet(p).merged_with(grammar_alphabet(g));
  return trim(grammar_to_automaton(g, sigma));
}

}  // namespace

std::vector<Term> enumerate_candidates(const SygusProblem& p, std::size_t max_size)
{
  TermOrder order = witness_order(p);
  if (p.string_grammar)
  {
    return enumerate_string_grammar(*p.string_grammar, candidate_arities(p), max_size, order);
  }
  return enumerate_language(candidate_automaton(p), max_size, order);
}

Verdict bounded_solve(const SygusProblem& p, const Oracle& oracle, std::size_t max_size)
{
  if (p.string_grammar)
  {
    for (const Term& w : enumerate_candidates(p, max_size))
    {
      if (oracle(w)) return Verdict::solvable(w, "bounded");
    }
    return Verdict::unknown(max_size, "bounded");
  }
  TreeAutomaton a = candidate_automaton(p);
  LanguageEnumerator levels(a, witness_order(p));
  while (levels.current_size() < max_size)
  {
    for (const Term& w : levels.next_level())
    {
      if (oracle(w)) return Verdict::solvable(w, "bounded");
    }
  }
  return Verdict::unknown(max_size, "bounded");
}

}  // namespace regsyn
