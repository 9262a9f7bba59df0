#include "regsyn/problem.h"

#include <algorithm>
#include <set>
#include <sstream>

#include "regsyn/error.h"
#include "regsyn/sexpr.h"

namespace regsyn {

const char* to_string(Theory t)
{
  switch (t)
  {
    case Theory::EUF: return "EUF";
    case Theory::FD: return "FD";
    case Theory::BV: return "BV";
  }
  return "?";
}

void Signature::declare(SymbolDecl decl)
{
  if (contains(decl.name))
  {
    fail(ErrorKind::DuplicateDeclaration, "duplicate declaration of " + decl.name);
  }
  d_symbols.push_back(std::move(decl));
}

const SymbolDecl* Signature::find(std::string_view name) const
{
  for (const SymbolDecl& d : d_symbols)
  {
    if (d.name == name) return &d;
  }
  return nullptr;
}

std::vector<std::string> SynthTarget::param_names() const
{
  std::vector<std::string> out;
  for (const Variable& v : params) out.push_back(v.name);
  return out;
}

Formula SygusProblem::formula() const { return fm::conj(constraints); }

std::optional<std::string> SygusProblem::info_value(std::string_view key) const
{
  for (const InfoEntry& e : info)
  {
    if (e.key == key) return e.value;
  }
  return std::nullopt;
}

TreeGrammar SygusProblem::effective_grammar() const
{
  if (grammar) return *grammar;
  TreeGrammar g;
  g.nonterminals = {"Start"};
  g.sorts = {target.sort};
  for (const SymbolDecl& d : signature.symbols())
  {
    std::vector<Term> kids(d.arity(), Term("Start"));
    g.productions.push_back({"Start", Term(d.name, std::move(kids))});
  }
  for (const Variable& v : target.params)
  {
    g.productions.push_back({"Start", Term(v.name)});
  }
  return g;
}

namespace {

void collect_heads(const Term& t, const TreeGrammar& g,
                   std::map<std::string, std::size_t>& out)
{
  if (!g.is_nonterminal(t.head())) out.emplace(t.head(), t.arity());
  for (const Term& c : t.children()) collect_heads(c, g, out);
}

}  // namespace

std::map<std::string, std::size_t> SygusProblem::candidate_alphabet() const
{
  std::map<std::string, std::size_t> out;
  for (const SymbolDecl& d : signature.symbols()) out.emplace(d.name, d.arity());
  for (const Variable& v : target.params) out.emplace(v.name, 0);
  if (grammar)
  {
    for (const Production& p : grammar->productions)
    {
      collect_heads(p.rhs, *grammar, out);
    }
  }
  return out;
}

namespace {

bool is_bv_literal(const std::string& s)
{
  if (s.size() < 3 || s.compare(0, 2, "#b") != 0) return false;
  return std::all_of(s.begin() + 2, s.end(),
                     [](char c) { return c == '0' || c == '1'; });
}

/** Name resolution context for converting s-expressions to terms. */
struct Scope
{
  explicit Scope(const SygusProblem& p) : problem(p) {}

  const SygusProblem& problem;
  bool allow_target = false;
  bool allow_universals = true;
  bool allow_params = false;
  const std::vector<std::string>* nonterminals = nullptr;
  std::vector<std::string> bound;

  bool is_leaf_name(const std::string& name) const
  {
    if (std::find(bound.begin(), bound.end(), name) != bound.end()) return true;
    if (allow_params)
    {
      for (const Variable& v : problem.target.params)
      {
        if (v.name == name) return true;
      }
    }
    if (allow_universals)
    {
      for (const Variable& v : problem.universals)
      {
        if (v.name == name) return true;
      }
    }
    if (nonterminals
        && std::find(nonterminals->begin(), nonterminals->end(), name)
               != nonterminals->end())
    {
      return true;
    }
    return false;
  }

  /** Arity of a builtin function symbol of the theory, if any. */
  std::optional<std::size_t> builtin_arity(const std::string& name) const
  {
    if (problem.signature.contains(name)) return std::nullopt;
    if (problem.theory == Theory::FD && name == "xor") return 2;
    if (problem.theory == Theory::BV && name == "concat") return 2;
    return std::nullopt;
  }
};

[[noreturn]] void arity_error(const std::string& name, std::size_t expected,
                              std::size_t got, const Sexpr& at)
{
  fail(ErrorKind::ArityMismatch,
       name + " expects " + std::to_string(expected) + " argument(s), got "
           + std::to_string(got) + " at " + at.where());
}

Term to_term(const Sexpr& e, Scope& scope);

Term leaf(const Sexpr& e, Scope& scope)
{
  const std::string& name = e.atom;
  if (name == builtin::kTrue || name == builtin::kFalse) return Term(name);
  if (scope.is_leaf_name(name)) return Term(name);
  if (const SymbolDecl* d = scope.problem.signature.find(name))
  {
    if (d->arity() != 0) arity_error(name, d->arity(), 0, e);
    return Term(name);
  }
  if (name == scope.problem.target.name)
  {
    if (!scope.allow_target)
    {
      fail(ErrorKind::UnknownSymbol,
           "target " + name + " is not allowed here (" + e.where() + ")");
    }
    if (scope.problem.target.arity() != 0)
    {
      arity_error(name, scope.problem.target.arity(), 0, e);
    }
    return Term(name);
  }
  if (scope.problem.theory == Theory::BV && is_bv_literal(name)) return Term(name);
  if (auto a = scope.builtin_arity(name)) arity_error(name, *a, 0, e);
  fail(ErrorKind::UnknownSymbol, "unknown symbol " + name + " at " + e.where());
}

std::vector<Term> args_of(const Sexpr& e, Scope& scope)
{
  std::vector<Term> kids;
  for (std::size_t i = 1; i < e.size(); ++i) kids.push_back(to_term(e[i], scope));
  return kids;
}

Term to_term(const Sexpr& e, Scope& scope)
{
  if (e.is_string())
  {
    fail(ErrorKind::Syntax, "unexpected string literal at " + e.where());
  }
  if (e.is_symbol()) return leaf(e, scope);
  if (e.size() == 0 || !e[0].is_symbol())
  {
    fail(ErrorKind::Syntax, "expected an application at " + e.where());
  }
  const std::string& head = e[0].atom;
  std::size_t nargs = e.size() - 1;

  if (head == builtin::kForall || head == builtin::kExists)
  {
    if (nargs != 2 || !e[1].is_list() || e[1].size() == 0)
    {
      fail(ErrorKind::Syntax, "malformed quantifier at " + e.where());
    }
    std::vector<Term> kids;
    std::size_t saved = scope.bound.size();
    for (const Sexpr& b : e[1].items)
    {
      if (!b.is_list() || b.size() != 2 || !b[0].is_symbol())
      {
        fail(ErrorKind::Syntax, "malformed binder at " + b.where());
      }
      scope.bound.push_back(b[0].atom);
      kids.emplace_back(b[0].atom);
    }
    kids.push_back(to_term(e[2], scope));
    scope.bound.resize(saved);
    return Term(head, std::move(kids));
  }
  if (head == builtin::kNot)
  {
    if (nargs != 1) arity_error(head, 1, nargs, e);
    return Term(head, args_of(e, scope));
  }
  if (head == builtin::kAnd || head == builtin::kOr)
  {
    if (nargs == 0)
    {
      fail(ErrorKind::ArityMismatch, head + " needs arguments at " + e.where());
    }
    return Term(head, args_of(e, scope));
  }
  if (head == builtin::kImplies)
  {
    if (nargs < 2)
    {
      fail(ErrorKind::ArityMismatch, "=> needs two arguments at " + e.where());
    }
    std::vector<Term> kids = args_of(e, scope);
    Term acc = kids.back();
    for (std::size_t i = kids.size() - 1; i-- > 0;) acc = fm::implies(kids[i], acc);
    return acc;
  }
  if (head == builtin::kEq)
  {
    if (nargs != 2) arity_error(head, 2, nargs, e);
    return Term(head, args_of(e, scope));
  }
  if (head == builtin::kIte)
  {
    if (nargs != 3) arity_error(head, 3, nargs, e);
    return Term(head, args_of(e, scope));
  }
  if (head == builtin::kTrue || head == builtin::kFalse)
  {
    arity_error(head, 0, nargs, e);
  }
  if (scope.is_leaf_name(head)) arity_error(head, 0, nargs, e);
  if (const SymbolDecl* d = scope.problem.signature.find(head))
  {
    if (d->arity() != nargs) arity_error(head, d->arity(), nargs, e);
    return Term(head, args_of(e, scope));
  }
  if (head == scope.problem.target.name)
  {
    if (!scope.allow_target)
    {
      fail(ErrorKind::UnknownSymbol,
           "target " + head + " is not allowed here (" + e.where() + ")");
    }
    if (scope.problem.target.arity() != nargs)
    {
      arity_error(head, scope.problem.target.arity(), nargs, e);
    }
    return Term(head, args_of(e, scope));
  }
  if (auto a = scope.builtin_arity(head))
  {
    if (*a != nargs) arity_error(head, *a, nargs, e);
    return Term(head, args_of(e, scope));
  }
  fail(ErrorKind::UnknownSymbol, "unknown symbol " + head + " at " + e.where());
}

const Sexpr& symbol_at(const Sexpr& cmd, std::size_t i, const char* what)
{
  if (i >= cmd.size() || !cmd[i].is_symbol())
  {
    fail(ErrorKind::Syntax,
         std::string("expected ") + what + " in command at " + cmd.where());
  }
  return cmd[i];
}

std::string sort_text(const Sexpr& cmd, std::size_t i)
{
  if (i >= cmd.size() || cmd[i].is_string())
  {
    fail(ErrorKind::Syntax, "expected a sort in command at " + cmd.where());
  }
  return to_string(cmd[i]);
}

class ProblemParser
{
 public:
  SygusProblem parse(std::string_view text)
  {
    std::vector<Sexpr> cmds = read_sexprs(text);
    std::vector<const Sexpr*> constraints;
    const Sexpr* synth = nullptr;
    for (const Sexpr& cmd : cmds)
    {
      if (!cmd.is_list() || cmd.size() == 0 || !cmd[0].is_symbol())
      {
        fail(ErrorKind::Syntax, "expected a command at " + cmd.where());
      }
      const std::string& name = cmd[0].atom;
      if (name == "set-logic")
      {
        set_logic(symbol_at(cmd, 1, "logic").atom, cmd);
      }
      else if (name == "set-info")
      {
        const Sexpr& key = symbol_at(cmd, 1, "keyword");
        if (cmd.size() != 3 || cmd[2].is_list())
        {
          fail(ErrorKind::Syntax, "set-info takes one atom at " + cmd.where());
        }
        d_p.info.push_back({key.atom, cmd[2].atom, cmd[2].is_string()});
      }
      else if (name == "declare-fun")
      {
        SymbolDecl d;
        d.name = symbol_at(cmd, 1, "name").atom;
        if (cmd.size() != 4 || !cmd[2].is_list())
        {
          fail(ErrorKind::Syntax, "malformed declare-fun at " + cmd.where());
        }
        for (const Sexpr& s : cmd[2].items) d.arg_sorts.push_back(to_string(s));
        d.sort = sort_text(cmd, 3);
        declare(std::move(d), cmd);
      }
      else if (name == "declare-const")
      {
        if (cmd.size() != 3)
        {
          fail(ErrorKind::Syntax, "malformed declare-const at " + cmd.where());
        }
        declare({symbol_at(cmd, 1, "name").atom, {}, sort_text(cmd, 2), true},
                cmd);
      }
      else if (name == "declare-var")
      {
        if (cmd.size() != 3)
        {
          fail(ErrorKind::Syntax, "malformed declare-var at " + cmd.where());
        }
        std::string v = symbol_at(cmd, 1, "name").atom;
        claim(v, cmd);
        d_p.universals.push_back({v, sort_text(cmd, 2)});
      }
      else if (name == "declare-sort" || name == "define-sort")
      {
        // Sorts are collapsed; nothing to record.
      }
      else if (name == "synth-fun")
      {
        if (synth)
        {
          fail(ErrorKind::Unsupported,
               "only one synth-fun per file (second at " + cmd.where() + ")");
        }
        synth = &cmd;
      }
      else if (name == "constraint")
      {
        if (cmd.size() != 2)
        {
          fail(ErrorKind::Syntax, "constraint takes one formula at " + cmd.where());
        }
        constraints.push_back(&cmd);
      }
      else if (name == "check-synth")
      {
      }
      else
      {
        fail(ErrorKind::Syntax,
             "unknown command " + name + " at " + cmd.where());
      }
    }
    if (!d_logic_set)
    {
      fail(ErrorKind::Syntax, "missing set-logic");
    }
    if (!synth) fail(ErrorKind::Syntax, "missing synth-fun");
    synth_fun(*synth);
    if (constraints.empty())
    {
      fail(ErrorKind::MissingConstraint, "problem has no constraint");
    }
    for (const Sexpr* c : constraints)
    {
      Scope scope{d_p};
      scope.allow_target = true;
      d_p.constraints.push_back(to_term((*c)[1], scope));
    }
    return std::move(d_p);
  }

 private:
  void set_logic(const std::string& logic, const Sexpr& at)
  {
    d_p.logic = logic;
    d_logic_set = true;
    if (logic == "EUF" || logic == "UF" || logic == "QF_UF" || logic == "AR"
        || logic == "AX" || logic == "QF_AX")
    {
      d_p.theory = Theory::EUF;
    }
    else if (logic == "FD")
    {
      d_p.theory = Theory::FD;
    }
    else if (logic == "BV" || logic == "QF_BV")
    {
      d_p.theory = Theory::BV;
    }
    else
    {
      fail(ErrorKind::Unsupported,
           "unsupported logic " + logic + " at " + at.where());
    }
  }

  void claim(const std::string& name, const Sexpr& at)
  {
    if (builtin::is_reserved(name))
    {
      fail(ErrorKind::DuplicateDeclaration,
           "reserved name " + name + " at " + at.where());
    }
    if (!d_names.insert(name).second)
    {
      fail(ErrorKind::DuplicateDeclaration,
           "duplicate declaration of " + name + " at " + at.where());
    }
  }

  void declare(SymbolDecl d, const Sexpr& at)
  {
    claim(d.name, at);
    d_p.signature.declare(std::move(d));
  }

  void synth_fun(const Sexpr& cmd)
  {
    if (cmd.size() < 4 || !cmd[2].is_list())
    {
      fail(ErrorKind::Syntax, "malformed synth-fun at " + cmd.where());
    }
    SynthTarget& t = d_p.target;
    t.name = symbol_at(cmd, 1, "name").atom;
    claim(t.name, cmd);
    for (const Sexpr& param : cmd[2].items)
    {
      if (!param.is_list() || param.size() != 2 || !param[0].is_symbol())
      {
        fail(ErrorKind::Syntax, "malformed parameter at " + param.where());
      }
      claim(param[0].atom, param);
      t.params.push_back({param[0].atom, to_string(param[1])});
    }
    t.sort = sort_text(cmd, 3);
    std::size_t rest = 4;
    if (rest == cmd.size()) return;
    if (cmd[rest].is_symbol(":cfg"))
    {
      if (rest + 2 != cmd.size())
      {
        fail(ErrorKind::Syntax, "malformed :cfg grammar at " + cmd.where());
      }
      d_p.string_grammar = string_grammar(cmd[rest + 1]);
      return;
    }
    if (rest + 1 == cmd.size())
    {
      d_p.grammar = tree_grammar(nullptr, cmd[rest]);
    }
    else if (rest + 2 == cmd.size())
    {
      d_p.grammar = tree_grammar(&cmd[rest], cmd[rest + 1]);
    }
    else
    {
      fail(ErrorKind::Syntax, "malformed grammar at " + cmd.where());
    }
  }

  TreeGrammar tree_grammar(const Sexpr* decls, const Sexpr& rules)
  {
    TreeGrammar g;
    if (!rules.is_list() || rules.size() == 0)
    {
      fail(ErrorKind::Syntax, "grammar rules expected at " + rules.where());
    }
    if (decls)
    {
      if (!decls->is_list())
      {
        fail(ErrorKind::Syntax, "nonterminal list expected at " + decls->where());
      }
      for (const Sexpr& d : decls->items)
      {
        if (!d.is_list() || d.size() != 2 || !d[0].is_symbol())
        {
          fail(ErrorKind::Syntax, "malformed nonterminal at " + d.where());
        }
        claim(d[0].atom, d);
        g.nonterminals.push_back(d[0].atom);
        g.sorts.push_back(to_string(d[1]));
      }
    }
    else
    {
      for (const Sexpr& r : rules.items)
      {
        if (!r.is_list() || r.size() != 3 || !r[0].is_symbol())
        {
          fail(ErrorKind::Syntax, "malformed grammar block at " + r.where());
        }
        claim(r[0].atom, r);
        g.nonterminals.push_back(r[0].atom);
        g.sorts.push_back(to_string(r[1]));
      }
    }
    if (g.nonterminals.empty())
    {
      fail(ErrorKind::Syntax, "grammar has no nonterminals at " + rules.where());
    }
    Scope scope{d_p};
    scope.allow_params = true;
    scope.nonterminals = &g.nonterminals;
    for (const Sexpr& r : rules.items)
    {
      if (!r.is_list() || r.size() != 3 || !r[0].is_symbol() || !r[2].is_list())
      {
        fail(ErrorKind::Syntax, "malformed grammar block at " + r.where());
      }
      if (!g.is_nonterminal(r[0].atom))
      {
        fail(ErrorKind::UnknownSymbol,
             "undeclared nonterminal " + r[0].atom + " at " + r.where());
      }
      for (const Sexpr& alt : r[2].items)
      {
        g.productions.push_back({r[0].atom, to_term(alt, scope)});
      }
    }
    g.validate();
    return g;
  }

  StringGrammar string_grammar(const Sexpr& blocks)
  {
    StringGrammar g;
    if (!blocks.is_list())
    {
      fail(ErrorKind::Syntax, "malformed :cfg grammar at " + blocks.where());
    }
    for (const Sexpr& b : blocks.items)
    {
      if (!b.is_list() || b.size() < 2 || !b[0].is_symbol())
      {
        fail(ErrorKind::Syntax, "malformed :cfg block at " + b.where());
      }
      claim(b[0].atom, b);
      g.nonterminals.push_back(b[0].atom);
    }
    for (const Sexpr& b : blocks.items)
    {
      for (std::size_t i = 1; i < b.size(); ++i)
      {
        const Sexpr& alt = b[i];
        if (!alt.is_list() || alt.size() < 2 || !alt[0].is_symbol("seq"))
        {
          fail(ErrorKind::Syntax, "expected (seq ...) at " + alt.where());
        }
        StringRule rule{b[0].atom, {}};
        for (std::size_t j = 1; j < alt.size(); ++j)
        {
          const Sexpr& s = alt[j];
          if (s.is_list())
          {
            fail(ErrorKind::Syntax, "unexpected list at " + s.where());
          }
          rule.body.push_back({s.is_string(), s.atom});
        }
        g.rules.push_back(std::move(rule));
      }
    }
    g.validate();
    return g;
  }

  SygusProblem d_p;
  bool d_logic_set = false;
  std::set<std::string> d_names;
};

void render_to(std::ostream& os, const Term& t)
{
  if (t.is_leaf())
  {
    Sexpr s;
    s.kind = Sexpr::Kind::Symbol;
    s.atom = t.head();
    os << to_string(s);
    return;
  }
  if ((t.head() == builtin::kForall || t.head() == builtin::kExists)
      && t.arity() >= 2)
  {
    os << '(' << t.head() << " (";
    for (std::size_t i = 0; i + 1 < t.arity(); ++i)
    {
      os << (i ? " (" : "(") << t.child(i).head() << " U)";
    }
    os << ") ";
    render_to(os, t.child(t.arity() - 1));
    os << ')';
    return;
  }
  os << '(' << t.head();
  for (const Term& c : t.children())
  {
    os << ' ';
    render_to(os, c);
  }
  os << ')';
}

}  // namespace

SygusProblem parse_problem(std::string_view text)
{
  return ProblemParser().parse(text);
}

std::string render(const Term& t)
{
  std::ostringstream os;
  render_to(os, t);
  return os.str();
}

std::string print_problem(const SygusProblem& p)
{
  std::ostringstream os;
  os << "(set-logic " << p.logic << ")\n";
  for (const InfoEntry& e : p.info)
  {
    os << "(set-info " << e.key << ' '
       << (e.quoted ? quote_string(e.value) : e.value) << ")\n";
  }
  for (const SymbolDecl& d : p.signature.symbols())
  {
    if (d.is_const)
    {
      os << "(declare-const " << d.name << ' ' << d.sort << ")\n";
      continue;
    }
    os << "(declare-fun " << d.name << " (";
    for (std::size_t i = 0; i < d.arg_sorts.size(); ++i)
    {
      os << (i ? " " : "") << d.arg_sorts[i];
    }
    os << ") " << d.sort << ")\n";
  }
  for (const Variable& v : p.universals)
  {
    os << "(declare-var " << v.name << ' ' << v.sort << ")\n";
  }
  const SynthTarget& t = p.target;
  os << "(synth-fun " << t.name << " (";
  for (std::size_t i = 0; i < t.params.size(); ++i)
  {
    os << (i ? " (" : "(") << t.params[i].name << ' ' << t.params[i].sort << ')';
  }
  os << ") " << t.sort;
  if (p.grammar)
  {
    const TreeGrammar& g = *p.grammar;
    os << "\n  (";
    for (std::size_t i = 0; i < g.nonterminals.size(); ++i)
    {
      os << (i ? " (" : "(") << g.nonterminals[i] << ' ' << g.sorts[i] << ')';
    }
    os << ")\n  (";
    for (std::size_t i = 0; i < g.nonterminals.size(); ++i)
    {
      if (i) os << "\n   ";
      os << '(' << g.nonterminals[i] << ' ' << g.sorts[i] << " (";
      bool first = true;
      for (const Production& prod : g.productions)
      {
        if (prod.lhs != g.nonterminals[i]) continue;
        os << (first ? "" : " ") << render(prod.rhs);
        first = false;
      }
      os << "))";
    }
    os << ')';
  }
  else if (p.string_grammar)
  {
    const StringGrammar& g = *p.string_grammar;
    os << " :cfg\n  (";
    for (std::size_t i = 0; i < g.nonterminals.size(); ++i)
    {
      if (i) os << "\n   ";
      os << '(' << g.nonterminals[i];
      for (const StringRule& r : g.rules)
      {
        if (r.lhs != g.nonterminals[i]) continue;
        os << " (seq";
        for (const GrammarSymbol& s : r.body)
        {
          os << ' ' << (s.terminal ? quote_string(s.text) : s.text);
        }
        os << ')';
      }
      os << ')';
    }
    os << ')';
  }
  os << ")\n";
  for (const Formula& c : p.constraints)
  {
    os << "(constraint " << render(c) << ")\n";
  }
  os << "(check-synth)\n";
  return os.str();
}

Term parse_candidate(const SygusProblem& p, std::string_view text)
{
  Sexpr e = read_sexpr(text);
  Scope scope{p};
  scope.allow_params = true;
  scope.allow_universals = p.theory == Theory::FD;
  return to_term(e, scope);
}

Formula parse_formula(const SygusProblem& p, std::string_view text)
{
  Sexpr e = read_sexpr(text);
  Scope scope{p};
  scope.allow_target = true;
  return to_term(e, scope);
}

Formula instantiate(const SygusProblem& p, const Term& body)
{
  SecondOrderSubstitution w{p.target.name, p.target.param_names(), body};
  return apply_second_order(p.formula(), w);
}

}  // namespace regsyn
