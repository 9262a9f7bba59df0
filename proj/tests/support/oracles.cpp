#include "oracles.h"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace regsyn::testing {

std::vector<Term> collect_subterms(const std::vector<Term>& terms)
{
  std::vector<Term> out;
  std::function<void(const Term&)> visit = [&](const Term& t) {
    for (const Term& c : t.children()) visit(c);
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  };
  for (const Term& t : terms) visit(t);
  return out;
}

NaiveCongruence::NaiveCongruence(std::vector<Term> universe, const EquationSet& equations)
    : d_universe(std::move(universe))
{
  const std::size_t n = d_universe.size();
  d_rel.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) d_rel[i][i] = true;
  for (const auto& [s, t] : equations)
  {
    d_rel[index(s)][index(t)] = true;
    d_rel[index(t)][index(s)] = true;
  }
  std::vector<std::vector<std::size_t>> kids(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    for (const Term& c : d_universe[i].children()) kids[i].push_back(index(c));
  }
  bool changed = true;
  while (changed)
  {
    changed = false;
    for (std::size_t i = 0; i < n; ++i)
    {
      for (std::size_t j = 0; j < n; ++j)
      {
        if (d_rel[i][j]) continue;
        bool add = false;
        for (std::size_t k = 0; k < n && !add; ++k) add = d_rel[i][k] && d_rel[k][j];
        const Term& a = d_universe[i];
        const Term& b = d_universe[j];
        if (!add && a.head() == b.head() && a.arity() == b.arity() && a.arity() > 0)
        {
          add = true;
          for (std::size_t c = 0; c < a.arity() && add; ++c) add = d_rel[kids[i][c]][kids[j][c]];
        }
        if (add)
        {
          d_rel[i][j] = true;
          d_rel[j][i] = true;
          changed = true;
        }
      }
    }
  }
}

std::size_t NaiveCongruence::index(const Term& t) const
{
  auto it = std::find(d_universe.begin(), d_universe.end(), t);
  if (it == d_universe.end()) throw std::logic_error("term outside the universe: " + to_string(t));
  return static_cast<std::size_t>(it - d_universe.begin());
}

bool NaiveCongruence::related(const Term& s, const Term& t) const
{
  return d_rel[index(s)][index(t)];
}

bool naive_entails(const EquationSet& n, const Term& s, const Term& t)
{
  std::vector<Term> seeds{s, t};
  for (const auto& [a, b] : n)
  {
    seeds.push_back(a);
    seeds.push_back(b);
  }
  return NaiveCongruence(collect_subterms(seeds), n).related(s, t);
}

bool naive_clause_valid(const EquationSet& n, const EquationSet& p)
{
  for (const auto& [s, t] : p)
  {
    if (naive_entails(n, s, t)) return true;
  }
  return false;
}

Term substitute_target(const Term& t, const std::string& target,
                       const std::vector<std::string>& params, const Term& body)
{
  std::vector<Term> kids;
  for (const Term& c : t.children()) kids.push_back(substitute_target(c, target, params, body));
  if (t.head() != target) return t.is_leaf() ? t : Term(t.head(), std::move(kids));
  std::map<std::string, Term> bind;
  for (std::size_t i = 0; i < params.size(); ++i) bind.emplace(params[i], kids.at(i));
  std::function<Term(const Term&)> plug = [&](const Term& u) {
    if (u.is_leaf())
    {
      auto it = bind.find(u.head());
      return it == bind.end() ? u : it->second;
    }
    std::vector<Term> ks;
    for (const Term& c : u.children()) ks.push_back(plug(c));
    return Term(u.head(), std::move(ks));
  };
  return plug(body);
}

namespace {

bool is_bool_connective(const std::string& h)
{
  return h == "and" || h == "or" || h == "not" || h == "=>" || h == "true" || h == "false";
}

/** Every ite-free term `t` can denote, choosing ite branches freely. */
std::vector<Term> resolutions(const Term& t, std::vector<Term>& conditions)
{
  if (t.head() == "ite")
  {
    conditions.push_back(t.child(0));
    std::vector<Term> out = resolutions(t.child(1), conditions);
    for (const Term& u : resolutions(t.child(2), conditions)) out.push_back(u);
    return out;
  }
  std::vector<std::vector<Term>> options;
  for (const Term& c : t.children()) options.push_back(resolutions(c, conditions));
  std::vector<Term> out;
  std::vector<Term> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == options.size())
    {
      out.push_back(t.is_leaf() ? t : Term(t.head(), pick));
      return;
    }
    for (const Term& o : options[i])
    {
      pick.push_back(o);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return out;
}

void collect_term_sides(const Term& f, std::vector<Term>& out)
{
  if (f.head() == "=")
  {
    out.push_back(f.child(0));
    out.push_back(f.child(1));
    return;
  }
  if (is_bool_connective(f.head()))
  {
    for (const Term& c : f.children()) collect_term_sides(c, out);
    return;
  }
  throw std::logic_error("unsupported formula node " + to_string(f));
}

std::vector<Term> partition_universe(const Term& phi)
{
  std::vector<Term> pending;
  collect_term_sides(phi, pending);
  std::vector<Term> resolved;
  while (!pending.empty())
  {
    Term t = pending.back();
    pending.pop_back();
    std::vector<Term> conditions;
    for (const Term& r : resolutions(t, conditions)) resolved.push_back(r);
    for (const Term& c : conditions) collect_term_sides(c, pending);
  }
  return collect_subterms(resolved);
}

class PartitionModel
{
 public:
  PartitionModel(const std::vector<Term>& universe, const std::vector<int>& block)
      : d_universe(universe), d_block(block)
  {
  }

  bool holds(const Term& f) const
  {
    const std::string& h = f.head();
    if (h == "true") return true;
    if (h == "false") return false;
    if (h == "not") return !holds(f.child(0));
    if (h == "and")
    {
      return std::all_of(f.children().begin(), f.children().end(),
                         [&](const Term& c) { return holds(c); });
    }
    if (h == "or")
    {
      return std::any_of(f.children().begin(), f.children().end(),
                         [&](const Term& c) { return holds(c); });
    }
    if (h == "=>") return !holds(f.child(0)) || holds(f.child(1));
    return block_of(resolve(f.child(0))) == block_of(resolve(f.child(1)));
  }

 private:
  Term resolve(const Term& t) const
  {
    if (t.head() == "ite") return holds(t.child(0)) ? resolve(t.child(1)) : resolve(t.child(2));
    if (t.is_leaf()) return t;
    std::vector<Term> kids;
    for (const Term& c : t.children()) kids.push_back(resolve(c));
    return Term(t.head(), std::move(kids));
  }

  int block_of(const Term& t) const
  {
    auto it = std::find(d_universe.begin(), d_universe.end(), t);
    if (it == d_universe.end()) throw std::logic_error("unresolved term " + to_string(t));
    return d_block[static_cast<std::size_t>(it - d_universe.begin())];
  }

  const std::vector<Term>& d_universe;
  const std::vector<int>& d_block;
};

bool congruent(const std::vector<Term>& u, const std::vector<int>& block)
{
  auto idx = [&](const Term& t) {
    return static_cast<std::size_t>(std::find(u.begin(), u.end(), t) - u.begin());
  };
  for (std::size_t i = 0; i < u.size(); ++i)
  {
    for (std::size_t j = i + 1; j < u.size(); ++j)
    {
      if (block[i] == block[j] || u[i].head() != u[j].head() || u[i].arity() != u[j].arity()
          || u[i].is_leaf())
      {
        continue;
      }
      bool same_args = true;
      for (std::size_t c = 0; c < u[i].arity() && same_args; ++c)
      {
        same_args = block[idx(u[i].child(c))] == block[idx(u[j].child(c))];
      }
      if (same_args) return false;
    }
  }
  return true;
}

}  // namespace

std::size_t partition_universe_size(const Term& phi)
{
  return partition_universe(phi).size();
}

bool partition_valid(const Term& phi)
{
  const std::vector<Term> u = partition_universe(phi);
  // Restricted growth strings enumerate every set partition once.
  std::vector<int> block(u.size(), 0);
  std::function<bool(std::size_t, int)> rec = [&](std::size_t i, int used) {
    if (i == u.size())
    {
      if (!congruent(u, block)) return true;
      return PartitionModel(u, block).holds(phi);
    }
    for (int b = 0; b <= used; ++b)
    {
      block[i] = b;
      if (!rec(i + 1, std::max(used, b + 1))) return false;
    }
    return true;
  };
  return rec(0, 0);
}

std::vector<Term> all_terms(const std::map<std::string, std::size_t>& symbols,
                            std::size_t max_size)
{
  std::vector<std::vector<Term>> by_size(max_size + 1);
  for (std::size_t n = 1; n <= max_size; ++n)
  {
    for (const auto& [name, arity] : symbols)
    {
      if (arity == 0)
      {
        if (n == 1) by_size[1].emplace_back(name);
        continue;
      }
      std::vector<Term> pick;
      std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t slot, std::size_t left) {
        if (slot == arity)
        {
          if (left == 0) by_size[n].emplace_back(name, pick);
          return;
        }
        for (std::size_t s = 1; s <= left; ++s)
        {
          for (const Term& t : by_size[s])
          {
            pick.push_back(t);
            rec(slot + 1, left - s);
            pick.pop_back();
          }
        }
      };
      rec(0, n - 1);
    }
  }
  std::vector<Term> out;
  for (const auto& level : by_size) out.insert(out.end(), level.begin(), level.end());
  return out;
}

std::pair<std::string, std::string> pcp_model_value(const Term& w)
{
  std::function<std::pair<std::string, std::string>(const Term&)> value =
      [&](const Term& t) -> std::pair<std::string, std::string> {
    const std::string& h = t.head();
    if (t.is_leaf()) return {"", ""};
    auto inner = value(t.child(0));
    if (h == "g_a" || h == "g_b") return {h.back() + inner.first, inner.second};
    if (h == "gp_a" || h == "gp_b") return {inner.first, h.back() + inner.second};
    if (h == "h")
    {
      std::size_t k = 0;
      while (k < inner.first.size() && k < inner.second.size()
             && inner.first[k] == inner.second[k])
      {
        ++k;
      }
      return {inner.first.substr(k), inner.second.substr(k)};
    }
    throw std::logic_error("not a PCP term: " + to_string(t));
  };
  return value(Term("h", {w}));
}

int bool_eval(const Term& t, const std::map<std::string, int>& env)
{
  const std::string& h = t.head();
  if (t.is_leaf())
  {
    if (h == "true") return 1;
    if (h == "false") return 0;
    return env.at(h);
  }
  if (h == "not") return 1 - bool_eval(t.child(0), env);
  if (h == "xor") return bool_eval(t.child(0), env) ^ bool_eval(t.child(1), env);
  if (h == "and") return bool_eval(t.child(0), env) & bool_eval(t.child(1), env);
  if (h == "or") return bool_eval(t.child(0), env) | bool_eval(t.child(1), env);
  if (h == "=") return bool_eval(t.child(0), env) == bool_eval(t.child(1), env);
  throw std::logic_error("no boolean meaning for " + h);
}

std::vector<int> bool_table(const Term& t, const std::vector<std::string>& vars)
{
  std::vector<int> out;
  for (std::size_t row = 0; row < (std::size_t{1} << vars.size()); ++row)
  {
    std::map<std::string, int> env;
    for (std::size_t i = 0; i < vars.size(); ++i)
    {
      env[vars[i]] = static_cast<int>((row >> (vars.size() - 1 - i)) & 1);
    }
    out.push_back(bool_eval(t, env));
  }
  return out;
}

std::map<std::string, std::set<std::vector<int>>> derivable_tables(
    const TreeGrammar& g, const std::vector<std::string>& vars, std::size_t max_size)
{
  // tables[nt][n]: tables of derivations of size exactly n.
  std::map<std::string, std::vector<std::set<std::vector<int>>>> tables;
  for (const std::string& nt : g.nonterminals) tables[nt].resize(max_size + 1);
  const std::size_t rows = std::size_t{1} << vars.size();
  for (std::size_t n = 1; n <= max_size; ++n)
  {
    for (const Production& prod : g.productions)
    {
      // Replace nonterminal leaves by placeholder variables $0, $1, ...
      std::vector<std::string> slots;
      std::function<Term(const Term&)> mark = [&](const Term& t) {
        if (t.is_leaf() && g.is_nonterminal(t.head()))
        {
          slots.push_back(t.head());
          return Term("$" + std::to_string(slots.size() - 1));
        }
        if (t.is_leaf()) return t;
        std::vector<Term> kids;
        for (const Term& c : t.children()) kids.push_back(mark(c));
        return Term(t.head(), std::move(kids));
      };
      Term shape = mark(prod.rhs);
      const std::size_t base = prod.rhs.size() - slots.size();
      if (base > n) continue;
      std::vector<const std::vector<int>*> chosen(slots.size());
      std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t slot, std::size_t left) {
        if (slot == slots.size())
        {
          if (left != 0) return;
          std::vector<int> table;
          for (std::size_t row = 0; row < rows; ++row)
          {
            std::map<std::string, int> env;
            for (std::size_t i = 0; i < vars.size(); ++i)
            {
              env[vars[i]] = static_cast<int>((row >> (vars.size() - 1 - i)) & 1);
            }
            for (std::size_t s = 0; s < slots.size(); ++s)
            {
              env["$" + std::to_string(s)] = (*chosen[s])[row];
            }
            table.push_back(bool_eval(shape, env));
          }
          tables[prod.lhs][n].insert(std::move(table));
          return;
        }
        for (std::size_t s = 1; s <= left; ++s)
        {
          for (const std::vector<int>& t : tables[slots[slot]][s])
          {
            chosen[slot] = &t;
            rec(slot + 1, left - s);
          }
        }
      };
      rec(0, n - base);
    }
  }
  std::map<std::string, std::set<std::vector<int>>> out;
  for (const auto& [nt, levels] : tables)
  {
    for (const auto& level : levels) out[nt].insert(level.begin(), level.end());
  }
  return out;
}

bool product_nonempty(const std::vector<TreeAutomaton>& automata)
{
  using Tuple = std::vector<State>;
  std::vector<Tuple> reached;
  std::set<Tuple> seen;
  const Alphabet& sigma = automata.front().alphabet();
  bool changed = true;
  while (changed)
  {
    changed = false;
    for (const RankedSymbol& s : sigma.symbols())
    {
      std::vector<std::size_t> pick(s.arity, 0);
      const std::size_t n = reached.size();
      if (s.arity > 0 && n == 0) continue;
      while (true)
      {
        Tuple target;
        bool defined = true;
        for (std::size_t a = 0; a < automata.size() && defined; ++a)
        {
          std::vector<State> args;
          for (std::size_t i = 0; i < s.arity; ++i) args.push_back(reached[pick[i]][a]);
          auto q = automata[a].transition(s.name, args);
          defined = q.has_value();
          if (defined) target.push_back(*q);
        }
        if (defined && seen.insert(target).second)
        {
          reached.push_back(target);
          changed = true;
        }
        std::size_t i = s.arity;
        while (i > 0 && ++pick[i - 1] == n) pick[--i] = 0;
        if (i == 0) break;
      }
    }
  }
  for (const Tuple& t : reached)
  {
    bool all = true;
    for (std::size_t a = 0; a < automata.size(); ++a) all = all && automata[a].is_accepting(t[a]);
    if (all) return true;
  }
  return false;
}

}  // namespace regsyn::testing
