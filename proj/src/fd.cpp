#include "regsyn/fd.h"

#include <set>

#include <json.hpp>

#include "regsyn/error.h"

namespace regsyn {

namespace {

std::size_t power(std::size_t base, std::size_t exp)
{
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

std::size_t truth(bool b) { return b ? 1 : 0; }

}  // namespace

void FiniteModel::validate() const
{
  if (domain_size == 0) fail(ErrorKind::ModelMismatch, "model domain is empty");
  std::vector<bool> named(domain_size, false);
  for (const auto& [name, value] : constants)
  {
    if (value >= domain_size)
    {
      fail(ErrorKind::ModelMismatch, "constant " + name + " is outside the domain");
    }
    named[value] = true;
  }
  for (std::size_t c = 0; c < domain_size; ++c)
  {
    if (!named[c])
    {
      fail(ErrorKind::ModelMismatch, "element " + std::to_string(c) + " has no constant");
    }
  }
  for (const auto& [name, fn] : functions)
  {
    if (constants.count(name))
    {
      fail(ErrorKind::ModelMismatch, name + " is both a constant and a function");
    }
    if (fn.table.size() != power(domain_size, fn.arity))
    {
      fail(ErrorKind::ModelMismatch, "table of " + name + " has "
                                         + std::to_string(fn.table.size())
                                         + " entries, expected "
                                         + std::to_string(power(domain_size, fn.arity)));
    }
    for (std::size_t v : fn.table)
    {
      if (v >= domain_size)
      {
        fail(ErrorKind::ModelMismatch, "table of " + name + " leaves the domain");
      }
    }
  }
}

bool FiniteModel::interprets(const std::string& name, std::size_t arity) const
{
  if (arity == 0 && constants.count(name)) return true;
  auto it = functions.find(name);
  return it != functions.end() && it->second.arity == arity;
}

FiniteModel parse_model(std::string_view json_text)
{
  nlohmann::json j;
  try
  {
    j = nlohmann::json::parse(json_text);
  }
  catch (const nlohmann::json::parse_error& e)
  {
    fail(ErrorKind::Syntax, std::string("model file: ") + e.what());
  }
  FiniteModel m;
  try
  {
    m.domain_size = j.at("domain").get<std::size_t>();
    if (j.contains("constants"))
    {
      for (const auto& [name, v] : j.at("constants").items())
      {
        m.constants.emplace(name, v.get<std::size_t>());
      }
    }
    if (j.contains("functions"))
    {
      for (const auto& [name, v] : j.at("functions").items())
      {
        FiniteModel::Function fn;
        fn.arity = v.at("arity").get<std::size_t>();
        fn.table = v.at("table").get<std::vector<std::size_t>>();
        m.functions.emplace(name, std::move(fn));
      }
    }
  }
  catch (const nlohmann::json::exception& e)
  {
    fail(ErrorKind::ModelMismatch, std::string("model file: ") + e.what());
  }
  m.validate();
  return m;
}

std::string model_to_json(const FiniteModel& m)
{
  nlohmann::json j;
  j["domain"] = m.domain_size;
  j["constants"] = nlohmann::json::object();
  for (const auto& [name, v] : m.constants) j["constants"][name] = v;
  j["functions"] = nlohmann::json::object();
  for (const auto& [name, fn] : m.functions)
  {
    j["functions"][name] = {{"arity", fn.arity}, {"table", fn.table}};
  }
  return j.dump(2) + "\n";
}

FiniteModel boolean_model()
{
  FiniteModel m;
  m.domain_size = 2;
  m.constants = {{"false", 0}, {"true", 1}};
  m.functions["xor"] = {2, {0, 1, 1, 0}};
  m.functions["not"] = {1, {1, 0}};
  m.functions["and"] = {2, {0, 0, 0, 1}};
  m.functions["or"] = {2, {0, 1, 1, 1}};
  return m;
}

FiniteModel bv_model(std::size_t width, const std::vector<std::string>& ops)
{
  if (width == 0) fail(ErrorKind::Unsupported, "bit-vector width must be positive");
  if (width > 4)
  {
    fail(ErrorKind::ResourceLimit, "bit-vector width " + std::to_string(width)
                                       + " exceeds the supported maximum of 4");
  }
  const std::size_t d = std::size_t{1} << width;
  const std::size_t mask = d - 1;
  FiniteModel m;
  m.domain_size = d;
  for (std::size_t c = 0; c < d; ++c) m.constants.emplace("bv" + std::to_string(c), c);
  for (const std::string& op : ops)
  {
    FiniteModel::Function fn;
    if (op == "not" || op == "shl1")
    {
      fn.arity = 1;
      for (std::size_t a = 0; a < d; ++a)
      {
        fn.table.push_back(op == "not" ? (~a & mask) : ((a << 1) & mask));
      }
    }
    else if (op == "and" || op == "or" || op == "xor" || op == "add")
    {
      fn.arity = 2;
      for (std::size_t a = 0; a < d; ++a)
      {
        for (std::size_t b = 0; b < d; ++b)
        {
          std::size_t v = op == "and"  ? (a & b)
                          : op == "or" ? (a | b)
                          : op == "xor" ? (a ^ b)
                                        : ((a + b) & mask);
          fn.table.push_back(v);
        }
      }
    }
    else
    {
      fail(ErrorKind::Unsupported, "unknown bit-vector operator " + op);
    }
    m.functions[op] = std::move(fn);
  }
  return m;
}

namespace {

std::size_t eval(const FiniteModel& m, const Term& t, Assignment& env);

bool eval_quantifier(const FiniteModel& m, const Term& t, Assignment& env)
{
  using namespace builtin;
  const bool universal = t.head() == kForall;
  const std::size_t n = t.arity() - 1;
  std::vector<std::string> vars;
  for (std::size_t i = 0; i < n; ++i) vars.push_back(t.child(i).head());
  Assignment saved = env;
  bool result = universal;
  for_each_assignment(m.domain_size, vars, [&](const Assignment& a) {
    if (result != universal) return;
    for (const auto& [v, c] : a) env[v] = c;
    bool holds = eval(m, t.child(n), env) != 0;
    if (holds != universal) result = !universal;
  });
  env = std::move(saved);
  return result;
}

std::size_t eval(const FiniteModel& m, const Term& t, Assignment& env)
{
  using namespace builtin;
  const std::string& h = t.head();
  if (t.is_leaf())
  {
    if (auto it = env.find(h); it != env.end()) return it->second;
    if (auto it = m.constants.find(h); it != m.constants.end()) return it->second;
    if (h == kTrue) return 1;
    if (h == kFalse) return 0;
    fail(ErrorKind::UnassignedVariable, "no value for " + h);
  }
  if (h == kForall || h == kExists) return truth(eval_quantifier(m, t, env));
  if (h == kIte)
  {
    return eval(m, t.child(0), env) != 0 ? eval(m, t.child(1), env)
                                         : eval(m, t.child(2), env);
  }
  if (auto it = m.functions.find(h); it != m.functions.end() && it->second.arity == t.arity())
  {
    std::size_t index = 0;
    for (const Term& c : t.children()) index = index * m.domain_size + eval(m, c, env);
    return it->second.table[index];
  }
  if (h == kEq) return truth(eval(m, t.child(0), env) == eval(m, t.child(1), env));
  if (h == kNot) return truth(eval(m, t.child(0), env) == 0);
  if (h == kAnd || h == kOr)
  {
    const bool conj = h == kAnd;
    for (const Term& c : t.children())
    {
      if ((eval(m, c, env) != 0) != conj) return truth(!conj);
    }
    return truth(conj);
  }
  if (h == kImplies)
  {
    return truth(eval(m, t.child(0), env) == 0 || eval(m, t.child(1), env) != 0);
  }
  fail(ErrorKind::ModelMismatch, "model does not interpret " + h + "/"
                                     + std::to_string(t.arity()));
}

}  // namespace

std::size_t eval_term(const FiniteModel& m, const Term& t, const Assignment& assignment)
{
  Assignment env = assignment;
  return eval(m, t, env);
}

bool eval_formula(const FiniteModel& m, const Formula& f, const Assignment& assignment)
{
  return eval_term(m, f, assignment) != 0;
}

void for_each_assignment(std::size_t domain_size, const std::vector<std::string>& variables,
                         const std::function<void(const Assignment&)>& fn)
{
  std::vector<std::size_t> values(variables.size(), 0);
  Assignment a;
  while (true)
  {
    for (std::size_t i = 0; i < variables.size(); ++i) a[variables[i]] = values[i];
    fn(a);
    std::size_t i = variables.size();
    while (i > 0 && ++values[i - 1] == domain_size) values[--i] = 0;
    if (i == 0) return;
  }
}

FunctionTable function_table(const FiniteModel& m, const Term& t,
                             const std::vector<std::string>& variables)
{
  FunctionTable table{variables, {}};
  table.values.reserve(power(m.domain_size, variables.size()));
  for_each_assignment(m.domain_size, variables, [&](const Assignment& a) {
    table.values.push_back(eval_term(m, t, a));
  });
  return table;
}

namespace {

void nonterminal_slots(const Term& t, const TreeGrammar& g, std::vector<std::string>& out)
{
  if (t.is_leaf() && g.is_nonterminal(t.head()))
  {
    out.push_back(t.head());
    return;
  }
  for (const Term& c : t.children()) nonterminal_slots(c, g, out);
}

Term plug_slots(const Term& t, const TreeGrammar& g, const std::vector<const Term*>& fill,
                std::size_t& next)
{
  if (t.is_leaf() && g.is_nonterminal(t.head())) return *fill[next++];
  if (t.is_leaf()) return t;
  std::vector<Term> kids;
  for (const Term& c : t.children()) kids.push_back(plug_slots(c, g, fill, next));
  return Term(t.head(), std::move(kids));
}

}  // namespace

FixpointResult fixpoint_enumerate(const FiniteModel& m, const TreeGrammar& g,
                                  const std::vector<std::string>& variables)
{
  FixpointResult result;
  std::map<std::string, std::set<std::vector<std::size_t>>> seen;
  for (const std::string& nt : g.nonterminals) result.sets[nt];
  for (std::size_t iteration = 1;; ++iteration)
  {
    // Jacobi step: every production reads the sets as of the iteration start.
    const std::map<std::string, std::vector<TableEntry>> snapshot = result.sets;
    std::map<std::string, std::vector<Term>> added;
    for (const Production& prod : g.productions)
    {
      std::vector<std::string> slots;
      nonterminal_slots(prod.rhs, g, slots);
      std::vector<const std::vector<TableEntry>*> choices;
      bool feasible = true;
      for (const std::string& nt : slots)
      {
        choices.push_back(&snapshot.at(nt));
        feasible = feasible && !choices.back()->empty();
      }
      if (!feasible) continue;
      std::vector<std::size_t> pick(slots.size(), 0);
      while (true)
      {
        std::vector<const Term*> fill;
        for (std::size_t i = 0; i < slots.size(); ++i) fill.push_back(&(*choices[i])[pick[i]].term);
        std::size_t next = 0;
        Term e = plug_slots(prod.rhs, g, fill, next);
        FunctionTable table = function_table(m, e, variables);
        if (seen[prod.lhs].insert(table.values).second)
        {
          added[prod.lhs].push_back(e);
          result.sets[prod.lhs].push_back({e, std::move(table), iteration});
        }
        std::size_t i = slots.size();
        while (i > 0 && ++pick[i - 1] == choices[i - 1]->size()) pick[--i] = 0;
        if (i == 0) break;
      }
    }
    const bool changed = !added.empty();
    result.history.push_back(std::move(added));
    if (!changed) break;
  }
  return result;
}

std::vector<std::string> fd_variables(const SygusProblem& p)
{
  std::vector<std::string> vars = p.target.param_names();
  for (const Variable& v : p.universals) vars.push_back(v.name);
  return vars;
}

void check_model(const SygusProblem& p, const FiniteModel& m)
{
  for (const SymbolDecl& d : p.signature.symbols())
  {
    if (!m.interprets(d.name, d.arity()))
    {
      fail(ErrorKind::ModelMismatch, "model does not interpret " + d.name + "/"
                                         + std::to_string(d.arity()));
    }
  }
}

Verdict solve_fd(const SygusProblem& p, const FiniteModel& m)
{
  if (p.theory != Theory::FD)
  {
    fail(ErrorKind::Unsupported, "the finite-domain engine needs logic FD");
  }
  if (p.string_grammar)
  {
    fail(ErrorKind::Unsupported, "the finite-domain engine needs a tree grammar");
  }
  check_model(p, m);
  TreeGrammar g = p.effective_grammar();
  FixpointResult fix = fixpoint_enumerate(m, g, fd_variables(p));
  std::vector<std::string> universals;
  for (const Variable& v : p.universals) universals.push_back(v.name);
  for (const TableEntry& entry : fix.sets.at(g.start()))
  {
    Formula phi = instantiate(p, entry.term);
    bool valid = true;
    for_each_assignment(m.domain_size, universals, [&](const Assignment& a) {
      valid = valid && eval_formula(m, phi, a);
    });
    if (valid) return Verdict::solvable(entry.term, "fd");
  }
  return Verdict::unsolvable("fd");
}

}  // namespace regsyn
