#include "regsyn/congruence.h"

#include <algorithm>
#include <set>

#include "regsyn/error.h"

namespace regsyn {

CongruenceClosure::CongruenceClosure(const EquationSet& equations)
{
  for (const auto& [s, t] : equations) merge(s, t);
}

std::size_t CongruenceClosure::find(std::size_t node) const
{
  std::size_t root = node;
  while (d_parent[root] != root) root = d_parent[root];
  while (d_parent[node] != root)
  {
    std::size_t next = d_parent[node];
    d_parent[node] = root;
    node = next;
  }
  return root;
}

std::size_t CongruenceClosure::num_classes() const
{
  std::size_t n = 0;
  for (std::size_t i = 0; i < d_nodes.size(); ++i)
  {
    if (find(i) == i) ++n;
  }
  return n;
}

CongruenceClosure::Signature CongruenceClosure::signature(std::size_t node) const
{
  Signature sig{d_nodes[node].head, {}};
  for (std::size_t c : d_nodes[node].children) sig.second.push_back(find(c));
  return sig;
}

std::size_t CongruenceClosure::add(const Term& t)
{
  auto it = d_ids.find(t);
  if (it != d_ids.end()) return it->second;
  Node node{t.head(), {}};
  for (const Term& c : t.children()) node.children.push_back(add(c));
  std::size_t id = d_nodes.size();
  d_nodes.push_back(std::move(node));
  d_parent.push_back(id);
  d_uses.emplace_back();
  d_ids.emplace(t, id);
  for (std::size_t c : d_nodes[id].children) d_uses[find(c)].push_back(id);
  auto [slot, inserted] = d_table.emplace(signature(id), id);
  if (!inserted)
  {
    d_pending.emplace_back(id, slot->second);
    process();
  }
  return id;
}

void CongruenceClosure::merge(const Term& s, const Term& t)
{
  std::size_t a = add(s);
  std::size_t b = add(t);
  d_pending.emplace_back(a, b);
  process();
}

bool CongruenceClosure::equivalent(const Term& s, const Term& t)
{
  std::size_t a = add(s);
  std::size_t b = add(t);
  return find(a) == find(b);
}

void CongruenceClosure::process()
{
  while (!d_pending.empty())
  {
    auto [a, b] = d_pending.back();
    d_pending.pop_back();
    std::size_t ra = find(a);
    std::size_t rb = find(b);
    if (ra == rb) continue;
    // Fold the class with fewer uses into the other one.
    if (d_uses[ra].size() > d_uses[rb].size()) std::swap(ra, rb);
    d_parent[ra] = rb;
    std::vector<std::size_t> moved = std::move(d_uses[ra]);
    d_uses[ra].clear();
    for (std::size_t p : moved)
    {
      auto [slot, inserted] = d_table.emplace(signature(p), p);
      if (!inserted && find(slot->second) != find(p))
      {
        d_pending.emplace_back(p, slot->second);
      }
      d_uses[rb].push_back(p);
    }
  }
}

bool entails(const EquationSet& e, const Term& s, const Term& t)
{
  if (s == t) return true;
  CongruenceClosure cc(e);
  return cc.equivalent(s, t);
}

std::vector<Term> subterm_closure(std::span<const Term> terms, const TermOrder& order)
{
  return subterms(terms, order);
}

namespace {

void collect_symbols(const Term& t, std::map<std::string, std::size_t>& out)
{
  out.emplace(t.head(), t.arity());
  for (const Term& c : t.children()) collect_symbols(c, out);
}

}  // namespace

TreeAutomaton subtree_automaton(std::span<const Term> terms, const TermOrder& order,
                                const std::optional<Alphabet>& alphabet)
{
  std::vector<Term> closed = subterm_closure(terms, order);
  std::map<std::string, std::size_t> symbols;
  for (const Term& t : closed) collect_symbols(t, symbols);
  Alphabet sigma(symbols);
  if (alphabet) sigma = alphabet->merged_with(sigma);
  TreeAutomaton a(sigma);
  std::unordered_map<Term, State, TermHash> state_of;
  for (std::size_t i = 0; i < closed.size(); ++i)
  {
    State q = static_cast<State>(i);
    state_of.emplace(closed[i], q);
    a.add_state(q);
    a.set_label(q, to_string(closed[i]));
  }
  for (std::size_t i = 0; i < closed.size(); ++i)
  {
    const Term& t = closed[i];
    std::vector<State> args;
    for (const Term& c : t.children()) args.push_back(state_of.at(c));
    a.add_transition(t.head(), std::move(args), static_cast<State>(i));
    a.set_accepting(static_cast<State>(i));
  }
  return a;
}

TreeAutomaton merge_all(const TreeAutomaton& a,
                        const std::vector<std::pair<State, State>>& pairs)
{
  std::map<State, State> renamed;
  auto find = [&](State q) {
    auto it = renamed.find(q);
    while (it != renamed.end())
    {
      q = it->second;
      it = renamed.find(q);
    }
    return q;
  };
  std::vector<std::pair<State, State>> pending(pairs.rbegin(), pairs.rend());
  std::map<TreeAutomaton::Key, State> delta = a.transitions();
  std::set<State> accepting = a.accepting();
  std::set<State> states = a.states();
  while (!pending.empty())
  {
    auto [p, p2] = pending.back();
    pending.pop_back();
    p = find(p);
    p2 = find(p2);
    if (p == p2) continue;
    renamed[p2] = p;
    states.erase(p2);
    if (accepting.erase(p2)) accepting.insert(p);
    std::map<TreeAutomaton::Key, State> next;
    std::vector<std::pair<State, State>> collisions;
    for (const auto& [key, target] : delta)
    {
      TreeAutomaton::Key k{key.first, {}};
      for (State q : key.second) k.second.push_back(q == p2 ? p : q);
      State t = target == p2 ? p : target;
      auto [slot, inserted] = next.emplace(std::move(k), t);
      if (!inserted && slot->second != t) collisions.emplace_back(slot->second, t);
    }
    delta = std::move(next);
    // Process cascades in discovery order.
    pending.insert(pending.end(), collisions.rbegin(), collisions.rend());
  }
  TreeAutomaton out(a.alphabet());
  for (State q : states)
  {
    out.add_state(q);
    std::string l = a.label(q);
    if (!l.empty()) out.set_label(q, l);
  }
  // Collision targets were merged above; re-key with final names.
  std::map<TreeAutomaton::Key, State> final_delta;
  for (const auto& [key, target] : delta)
  {
    TreeAutomaton::Key k{key.first, {}};
    for (State q : key.second) k.second.push_back(find(q));
    final_delta.emplace(std::move(k), find(target));
  }
  out.replace_transitions(std::move(final_delta));
  for (State q : accepting) out.set_accepting(find(q));
  return out;
}

TreeAutomaton merge(const TreeAutomaton& a, State q, State q2)
{
  return merge_all(a, {{q, q2}});
}

CongruentialAutomaton build_aec(const EquationSet& e, std::span<const Term> support,
                                const TermOrder& order,
                                const std::optional<Alphabet>& alphabet)
{
  TermSet in_support(support.begin(), support.end());
  for (const Term& t : support)
  {
    for (const Term& c : t.children())
    {
      if (!in_support.count(c))
      {
        fail(ErrorKind::InvalidSupport,
             "support is not subterm-closed: " + to_string(c) + " missing");
      }
    }
  }
  for (const auto& [s, t] : e)
  {
    if (!in_support.count(s) || !in_support.count(t))
    {
      fail(ErrorKind::InvalidSupport, "equation " + to_string(s) + " = "
                                          + to_string(t) + " not in support");
    }
  }
  TreeAutomaton sa = subtree_automaton(support, order, alphabet);
  sa.clear_accepting();
  std::vector<std::pair<State, State>> pairs;
  for (const auto& [s, t] : e) pairs.emplace_back(*sa.run(s), *sa.run(t));
  CongruentialAutomaton out{merge_all(sa, pairs), {}};
  for (const Term& t : subterm_closure(support, order))
  {
    State q = *out.automaton.run(t);
    out.representatives.emplace(q, t);
  }
  for (const auto& [q, u] : out.representatives) out.automaton.set_label(q, to_string(u));
  return out;
}

bool ground_clause_valid(const EquationSet& antecedent, const EquationSet& consequents)
{
  CongruenceClosure cc(antecedent);
  return std::any_of(consequents.begin(), consequents.end(), [&](const Equation& e) {
    return e.first == e.second || cc.equivalent(e.first, e.second);
  });
}

namespace {

void reserve_symbols(const Term& t, NameSupply& names)
{
  names.reserve(t.head());
  for (const Term& c : t.children()) reserve_symbols(c, names);
}

}  // namespace

bool ground_formula_valid(const Formula& phi, std::size_t clause_limit)
{
  NameSupply names;
  reserve_symbols(phi, names);
  Formula f = skolemize_universals(phi, names).formula;
  f = desugar_ite(f, names).formula;
  const Term truth(names.fresh_like("true_atom"));
  for (const Conjunction& cube : to_dnf(fm::neg(f), clause_limit))
  {
    EquationSet pos;
    EquationSet neg;
    for (const Literal& l : cube)
    {
      Equation e = fm::is_eq(l.atom) ? Equation{l.atom.child(0), l.atom.child(1)}
                                     : Equation{l.atom, truth};
      (l.positive ? pos : neg).push_back(std::move(e));
    }
    CongruenceClosure cc(pos);
    bool unsat = std::any_of(neg.begin(), neg.end(), [&](const Equation& e) {
      return e.first == e.second || cc.equivalent(e.first, e.second);
    });
    if (!unsat) return false;
  }
  return true;
}

}  // namespace regsyn
