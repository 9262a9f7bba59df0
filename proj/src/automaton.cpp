#include "regsyn/automaton.h"

#include <algorithm>
#include <deque>
#include <sstream>

#include "regsyn/error.h"

namespace regsyn {

Alphabet::Alphabet(const std::map<std::string, std::size_t>& symbols)
{
  for (const auto& [name, arity] : symbols) d_symbols.push_back({name, arity});
}

std::optional<std::size_t> Alphabet::index_of(const std::string& name) const
{
  auto it = std::lower_bound(
      d_symbols.begin(), d_symbols.end(), name,
      [](const RankedSymbol& s, const std::string& n) { return s.name < n; });
  if (it == d_symbols.end() || it->name != name) return std::nullopt;
  return static_cast<std::size_t>(it - d_symbols.begin());
}

std::size_t Alphabet::max_arity() const
{
  std::size_t m = 0;
  for (const RankedSymbol& s : d_symbols) m = std::max(m, s.arity);
  return m;
}

Alphabet Alphabet::merged_with(const Alphabet& other) const
{
  std::map<std::string, std::size_t> all = to_map();
  for (const RankedSymbol& s : other.d_symbols)
  {
    auto [it, inserted] = all.emplace(s.name, s.arity);
    if (!inserted && it->second != s.arity)
    {
      fail(ErrorKind::AlphabetMismatch,
           "symbol " + s.name + " has arities " + std::to_string(it->second)
               + " and " + std::to_string(s.arity));
    }
  }
  return Alphabet(all);
}

std::map<std::string, std::size_t> Alphabet::to_map() const
{
  std::map<std::string, std::size_t> out;
  for (const RankedSymbol& s : d_symbols) out.emplace(s.name, s.arity);
  return out;
}

State TreeAutomaton::add_state()
{
  State q = d_states.empty() ? 0 : *d_states.rbegin() + 1;
  d_states.insert(q);
  return q;
}

void TreeAutomaton::add_state(State q) { d_states.insert(q); }

void TreeAutomaton::add_transition(const std::string& symbol,
                                   std::vector<State> args, State target)
{
  auto idx = d_alphabet.index_of(symbol);
  if (!idx)
  {
    fail(ErrorKind::AlphabetMismatch, "symbol " + symbol + " not in alphabet");
  }
  add_transition(*idx, std::move(args), target);
}

void TreeAutomaton::add_transition(std::size_t symbol, std::vector<State> args,
                                   State target)
{
  const RankedSymbol& s = d_alphabet[symbol];
  if (args.size() != s.arity)
  {
    fail(ErrorKind::AlphabetMismatch, "symbol " + s.name + " has arity "
                                          + std::to_string(s.arity));
  }
  for (State q : args) d_states.insert(q);
  d_states.insert(target);
  auto [it, inserted] = d_delta.emplace(Key{symbol, std::move(args)}, target);
  if (!inserted && it->second != target)
  {
    fail(ErrorKind::Unsupported,
         "conflicting transition for symbol " + s.name);
  }
}

std::optional<State> TreeAutomaton::transition(
    std::size_t symbol, const std::vector<State>& args) const
{
  auto it = d_delta.find(Key{symbol, args});
  if (it == d_delta.end()) return std::nullopt;
  return it->second;
}

std::optional<State> TreeAutomaton::transition(
    const std::string& symbol, const std::vector<State>& args) const
{
  auto idx = d_alphabet.index_of(symbol);
  if (!idx) return std::nullopt;
  return transition(*idx, args);
}

void TreeAutomaton::set_accepting(State q, bool accepting)
{
  d_states.insert(q);
  if (accepting)
  {
    d_accepting.insert(q);
  }
  else
  {
    d_accepting.erase(q);
  }
}

std::optional<State> TreeAutomaton::run(const Term& t) const
{
  auto idx = d_alphabet.index_of(t.head());
  if (!idx || d_alphabet[*idx].arity != t.arity())
  {
    fail(ErrorKind::AlphabetMismatch,
         "term " + to_string(t) + " uses " + t.head() + "/"
             + std::to_string(t.arity()) + " outside the alphabet");
  }
  std::vector<State> args;
  args.reserve(t.arity());
  for (const Term& c : t.children())
  {
    auto q = run(c);
    if (!q) return std::nullopt;
    args.push_back(*q);
  }
  return transition(*idx, args);
}

bool TreeAutomaton::member(const Term& t) const
{
  auto q = run(t);
  return q && is_accepting(*q);
}

bool TreeAutomaton::is_complete() const
{
  std::size_t n = d_states.size();
  std::size_t expected = 0;
  for (const RankedSymbol& s : d_alphabet.symbols())
  {
    std::size_t combos = 1;
    for (std::size_t i = 0; i < s.arity; ++i) combos *= n;
    expected += combos;
  }
  if (n == 0) return false;
  return d_delta.size() == expected;
}

std::string TreeAutomaton::label(State q) const
{
  auto it = d_labels.find(q);
  return it == d_labels.end() ? std::string() : it->second;
}

void TreeAutomaton::replace_transitions(std::map<Key, State> delta)
{
  d_delta = std::move(delta);
}

void TreeAutomaton::remove_state(State q)
{
  d_states.erase(q);
  d_accepting.erase(q);
  d_labels.erase(q);
  for (auto it = d_delta.begin(); it != d_delta.end();)
  {
    const auto& args = it->first.second;
    if (it->second == q || std::find(args.begin(), args.end(), q) != args.end())
    {
      it = d_delta.erase(it);
    }
    else
    {
      ++it;
    }
  }
}

bool TreeAutomaton::operator==(const TreeAutomaton& other) const
{
  return d_alphabet == other.d_alphabet && d_states == other.d_states
         && d_delta == other.d_delta && d_accepting == other.d_accepting;
}

namespace {

/** Odometer step over [lower_i, upper_i); false once every tuple was seen. */
bool advance(std::vector<std::size_t>& tuple,
             const std::vector<std::size_t>& lower,
             const std::vector<std::size_t>& upper)
{
  for (std::size_t i = tuple.size(); i-- > 0;)
  {
    if (++tuple[i] < upper[i]) return true;
    tuple[i] = lower[i];
  }
  return false;
}

/**
 * Calls `fn` on every k-tuple over [0, hi) that has at least one component
 * in [lo, hi). Each tuple is produced exactly once: the first component in
 * [lo, hi) fixes the split.
 */
template <typename Fn>
void for_each_tuple(std::size_t k, std::size_t lo, std::size_t hi, Fn&& fn)
{
  if (k == 0 || lo >= hi) return;
  for (std::size_t first = 0; first < k; ++first)
  {
    if (first > 0 && lo == 0) break;
    std::vector<std::size_t> lower(k, 0), upper(k, hi);
    for (std::size_t i = 0; i < first; ++i) upper[i] = lo;
    lower[first] = lo;
    std::vector<std::size_t> tuple = lower;
    do
    {
      fn(tuple);
    } while (advance(tuple, lower, upper));
  }
}

}  // namespace

TreeAutomaton complete(const TreeAutomaton& a)
{
  if (a.is_complete()) return a;
  TreeAutomaton out = a;
  State sink = out.add_state();
  out.set_label(sink, "sink");
  std::vector<State> states(out.states().begin(), out.states().end());
  const Alphabet& sigma = a.alphabet();
  for (std::size_t s = 0; s < sigma.size(); ++s)
  {
    std::size_t k = sigma[s].arity;
    if (k == 0)
    {
      if (!out.transition(s, {})) out.add_transition(s, {}, sink);
      continue;
    }
    for_each_tuple(k, 0, states.size(), [&](const std::vector<std::size_t>& t) {
      std::vector<State> args;
      for (std::size_t i : t) args.push_back(states[i]);
      if (!out.transition(s, args)) out.add_transition(s, args, sink);
    });
  }
  return out;
}

TreeAutomaton extend_alphabet(const TreeAutomaton& a, const Alphabet& alphabet)
{
  Alphabet merged = a.alphabet().merged_with(alphabet);
  TreeAutomaton out(merged);
  for (State q : a.states())
  {
    out.add_state(q);
    std::string l = a.label(q);
    if (!l.empty()) out.set_label(q, l);
  }
  for (const auto& [key, target] : a.transitions())
  {
    out.add_transition(a.alphabet()[key.first].name, key.second, target);
  }
  for (State q : a.accepting()) out.set_accepting(q);
  return out;
}

TreeAutomaton product(const TreeAutomaton& a, const TreeAutomaton& b,
                      const std::function<bool(bool, bool)>& combiner)
{
  if (!(a.alphabet() == b.alphabet()))
  {
    fail(ErrorKind::AlphabetMismatch, "product of automata over different alphabets");
  }
  const Alphabet& sigma = a.alphabet();
  TreeAutomaton out(sigma);
  std::map<std::pair<State, State>, State> ids;
  std::vector<std::pair<State, State>> pairs;
  auto intern = [&](State qa, State qb) {
    auto [it, inserted] = ids.emplace(std::make_pair(qa, qb), pairs.size());
    if (inserted)
    {
      pairs.emplace_back(qa, qb);
      out.add_state(it->second);
      if (combiner(a.is_accepting(qa), b.is_accepting(qb)))
      {
        out.set_accepting(it->second);
      }
    }
    return it->second;
  };
  auto step = [&](std::size_t s, const std::vector<std::size_t>& tuple) {
    std::vector<State> aa, bb, args;
    for (std::size_t i : tuple)
    {
      aa.push_back(pairs[i].first);
      bb.push_back(pairs[i].second);
      args.push_back(static_cast<State>(i));
    }
    auto ta = a.transition(s, aa);
    if (!ta) return;
    auto tb = b.transition(s, bb);
    if (!tb) return;
    State target = intern(*ta, *tb);
    out.add_transition(s, std::move(args), target);
  };
  for (std::size_t s = 0; s < sigma.size(); ++s)
  {
    if (sigma[s].arity == 0) step(s, {});
  }
  for (std::size_t next = 0; next < pairs.size(); ++next)
  {
    for (std::size_t s = 0; s < sigma.size(); ++s)
    {
      std::size_t k = sigma[s].arity;
      if (k == 0) continue;
      for_each_tuple(k, next, next + 1,
                     [&](const std::vector<std::size_t>& t) { step(s, t); });
    }
  }
  return out;
}

TreeAutomaton intersect(const TreeAutomaton& a, const TreeAutomaton& b)
{
  return product(a, b, [](bool x, bool y) { return x && y; });
}

TreeAutomaton unite(const TreeAutomaton& a, const TreeAutomaton& b)
{
  return product(complete(a), complete(b), [](bool x, bool y) { return x || y; });
}

TreeAutomaton universal_automaton(const Alphabet& alphabet)
{
  TreeAutomaton out(alphabet);
  State q = out.add_state();
  for (std::size_t s = 0; s < alphabet.size(); ++s)
  {
    out.add_transition(s, std::vector<State>(alphabet[s].arity, q), q);
  }
  out.set_accepting(q);
  return out;
}

TreeAutomaton empty_automaton(const Alphabet& alphabet)
{
  return TreeAutomaton(alphabet);
}

std::set<State> reachable_states(const TreeAutomaton& a)
{
  std::set<State> reached;
  bool changed = true;
  while (changed)
  {
    changed = false;
    for (const auto& [key, target] : a.transitions())
    {
      if (reached.count(target)) continue;
      bool ok = std::all_of(key.second.begin(), key.second.end(),
                            [&](State q) { return reached.count(q) != 0; });
      if (ok)
      {
        reached.insert(target);
        changed = true;
      }
    }
  }
  return reached;
}

TreeAutomaton trim(const TreeAutomaton& a)
{
  std::set<State> reach = reachable_states(a);
  std::set<State> useful;
  for (State q : a.accepting())
  {
    if (reach.count(q)) useful.insert(q);
  }
  bool changed = true;
  while (changed)
  {
    changed = false;
    for (const auto& [key, target] : a.transitions())
    {
      if (!useful.count(target)) continue;
      bool ok = std::all_of(key.second.begin(), key.second.end(),
                            [&](State q) { return reach.count(q) != 0; });
      if (!ok) continue;
      for (State q : key.second)
      {
        if (useful.insert(q).second) changed = true;
      }
    }
  }
  TreeAutomaton out(a.alphabet());
  for (State q : useful)
  {
    out.add_state(q);
    std::string l = a.label(q);
    if (!l.empty()) out.set_label(q, l);
  }
  for (const auto& [key, target] : a.transitions())
  {
    if (!useful.count(target)) continue;
    bool ok = std::all_of(key.second.begin(), key.second.end(),
                          [&](State q) { return useful.count(q) != 0; });
    if (ok) out.add_transition(key.first, key.second, target);
  }
  for (State q : a.accepting())
  {
    if (useful.count(q)) out.set_accepting(q);
  }
  return out;
}

std::map<State, Term> minimal_terms(const TreeAutomaton& a, const TermOrder& order)
{
  std::map<State, Term> best;
  bool changed = true;
  while (changed)
  {
    changed = false;
    for (const auto& [key, target] : a.transitions())
    {
      std::vector<Term> kids;
      bool ok = true;
      std::size_t size = 1;
      for (State q : key.second)
      {
        auto it = best.find(q);
        if (it == best.end())
        {
          ok = false;
          break;
        }
        size += it->second.size();
        kids.push_back(it->second);
      }
      if (!ok) continue;
      auto cur = best.find(target);
      if (cur != best.end() && cur->second.size() < size) continue;
      Term cand(a.alphabet()[key.first].name, std::move(kids));
      if (cur == best.end())
      {
        best.emplace(target, std::move(cand));
        changed = true;
      }
      else if (order(cand, cur->second))
      {
        cur->second = std::move(cand);
        changed = true;
      }
    }
  }
  return best;
}

bool is_empty(const TreeAutomaton& a)
{
  std::set<State> reach = reachable_states(a);
  return std::none_of(a.accepting().begin(), a.accepting().end(),
                      [&](State q) { return reach.count(q) != 0; });
}

std::optional<Term> witness(const TreeAutomaton& a, const TermOrder& order)
{
  std::optional<Term> out;
  for (const auto& [q, t] : minimal_terms(a, order))
  {
    if (!a.is_accepting(q)) continue;
    if (!out || order(t, *out)) out = t;
  }
  return out;
}

LanguageEnumerator::LanguageEnumerator(const TreeAutomaton& a, TermOrder order)
    : d_automaton(a), d_order(std::move(order))
{
}

namespace {

/** Calls fn with each way of writing `total` as an ordered sum of k
 * positive parts. */
template <typename Fn>
void for_each_composition(std::size_t total, std::size_t k, Fn&& fn)
{
  std::vector<std::size_t> parts(k, 1);
  if (k == 0)
  {
    if (total == 0) fn(parts);
    return;
  }
  if (total < k) return;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i,
                                                          std::size_t left) {
    if (i + 1 == k)
    {
      parts[i] = left;
      fn(parts);
      return;
    }
    for (std::size_t p = 1; p + (k - i - 1) <= left; ++p)
    {
      parts[i] = p;
      rec(i + 1, left - p);
    }
  };
  rec(0, total);
}

}  // namespace

std::vector<Term> LanguageEnumerator::next_level()
{
  ++d_size;
  std::map<State, std::vector<Term>> level;
  for (const auto& [key, target] : d_automaton.transitions())
  {
    const std::string& name = d_automaton.alphabet()[key.first].name;
    std::size_t k = key.second.size();
    for_each_composition(d_size - 1, k, [&](const std::vector<std::size_t>& sizes) {
      std::vector<const std::vector<Term>*> pools;
      for (std::size_t i = 0; i < k; ++i)
      {
        const auto& by_state = d_by_size[sizes[i] - 1];
        auto it = by_state.find(key.second[i]);
        if (it == by_state.end() || it->second.empty()) return;
        pools.push_back(&it->second);
      }
      std::vector<std::size_t> pick(k, 0), zero(k, 0), limit(k);
      for (std::size_t i = 0; i < k; ++i) limit[i] = pools[i]->size();
      do
      {
        std::vector<Term> kids;
        kids.reserve(k);
        for (std::size_t i = 0; i < k; ++i) kids.push_back((*pools[i])[pick[i]]);
        level[target].emplace_back(name, std::move(kids));
      } while (advance(pick, zero, limit));
    });
  }
  std::vector<Term> accepted;
  for (auto& [q, terms] : level)
  {
    if (d_automaton.is_accepting(q))
    {
      accepted.insert(accepted.end(), terms.begin(), terms.end());
    }
  }
  d_by_size.push_back(std::move(level));
  std::sort(accepted.begin(), accepted.end(), d_order);
  return accepted;
}

std::vector<Term> enumerate_language(const TreeAutomaton& a, std::size_t max_size,
                                     const TermOrder& order)
{
  TreeAutomaton trimmed = trim(a);
  LanguageEnumerator e(trimmed, order);
  std::vector<Term> out;
  for (std::size_t n = 1; n <= max_size; ++n)
  {
    std::vector<Term> level = e.next_level();
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

bool language_equal_up_to(const TreeAutomaton& a, const TreeAutomaton& b,
                          std::size_t depth)
{
  Alphabet sigma = a.alphabet().merged_with(b.alphabet());
  using Run = std::optional<State>;
  using Pair = std::pair<Run, Run>;
  std::vector<Pair> pairs;
  std::set<Pair> seen;
  auto accepts = [](const TreeAutomaton& m, const Run& r) {
    return r && m.is_accepting(*r);
  };
  auto step_one = [](const TreeAutomaton& m, const std::string& name,
                     const std::vector<Run>& args) -> Run {
    std::vector<State> qs;
    for (const Run& r : args)
    {
      if (!r) return std::nullopt;
      qs.push_back(*r);
    }
    return m.transition(name, qs);
  };
  bool equal = true;
  auto add = [&](const Pair& p, std::vector<Pair>& fresh) {
    if (!p.first && !p.second) return;
    if (!seen.insert(p).second) return;
    if (accepts(a, p.first) != accepts(b, p.second)) equal = false;
    fresh.push_back(p);
  };
  std::size_t lo = 0;
  for (std::size_t d = 1; d <= depth && equal; ++d)
  {
    std::size_t hi = pairs.size();
    std::vector<Pair> fresh;
    for (const RankedSymbol& s : sigma.symbols())
    {
      if (s.arity == 0)
      {
        if (d == 1) add({step_one(a, s.name, {}), step_one(b, s.name, {})}, fresh);
        continue;
      }
      for_each_tuple(s.arity, lo, hi, [&](const std::vector<std::size_t>& t) {
        std::vector<Run> ra, rb;
        for (std::size_t i : t)
        {
          ra.push_back(pairs[i].first);
          rb.push_back(pairs[i].second);
        }
        add({step_one(a, s.name, ra), step_one(b, s.name, rb)}, fresh);
      });
    }
    if (fresh.empty() && d > 1) break;
    lo = hi;
    pairs.insert(pairs.end(), fresh.begin(), fresh.end());
  }
  return equal;
}

TreeAutomaton canonical_form(const TreeAutomaton& a, const TermOrder& order)
{
  std::map<State, Term> best = minimal_terms(a, order);
  std::vector<std::pair<Term, State>> ranked;
  for (const auto& [q, t] : best) ranked.emplace_back(t, q);
  std::sort(ranked.begin(), ranked.end(),
            [&](const auto& x, const auto& y) { return order(x.first, y.first); });
  std::map<State, State> rename;
  for (std::size_t i = 0; i < ranked.size(); ++i)
  {
    rename.emplace(ranked[i].second, static_cast<State>(i));
  }
  TreeAutomaton out(a.alphabet());
  for (std::size_t i = 0; i < ranked.size(); ++i) out.add_state(static_cast<State>(i));
  for (const auto& [key, target] : a.transitions())
  {
    if (!rename.count(target)) continue;
    std::vector<State> args;
    for (State q : key.second) args.push_back(rename.at(q));
    out.add_transition(key.first, std::move(args), rename.at(target));
  }
  for (State q : a.accepting())
  {
    if (rename.count(q)) out.set_accepting(rename.at(q));
  }
  return out;
}

bool isomorphic(const TreeAutomaton& a, const TreeAutomaton& b)
{
  return canonical_form(a) == canonical_form(b);
}

namespace {

std::string dot_escape(const std::string& s)
{
  std::string out;
  for (char c : s)
  {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string to_dot(const TreeAutomaton& a, const std::string& name)
{
  std::ostringstream os;
  os << "digraph \"" << dot_escape(name) << "\" {\n";
  os << "  rankdir=LR;\n";
  os << "  node [shape=circle];\n";
  for (State q : a.states())
  {
    os << "  q" << q << " [label=\"" << q << "\"";
    if (a.is_accepting(q)) os << ", shape=doublecircle";
    std::string l = a.label(q);
    if (!l.empty()) os << ", tooltip=\"" << dot_escape(l) << "\"";
    os << "];\n";
  }
  std::size_t aux = 0;
  for (const auto& [key, target] : a.transitions())
  {
    const std::string& sym = dot_escape(a.alphabet()[key.first].name);
    const auto& args = key.second;
    if (args.size() == 1)
    {
      os << "  q" << args[0] << " -> q" << target << " [label=\"" << sym << "\"];\n";
      continue;
    }
    std::string node = "t" + std::to_string(aux++);
    os << "  " << node << " [shape=point, label=\"\"];\n";
    for (std::size_t i = 0; i < args.size(); ++i)
    {
      os << "  q" << args[i] << " -> " << node << " [label=\"" << sym << "."
         << (i + 1) << "\", arrowhead=none];\n";
    }
    os << "  " << node << " -> q" << target << " [label=\"" << sym << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

namespace {

void collect_grammar_symbols(const Term& t, const TreeGrammar& g,
                             std::map<std::string, std::size_t>& out)
{
  if (t.is_leaf() && g.is_nonterminal(t.head())) return;
  auto [it, inserted] = out.emplace(t.head(), t.arity());
  if (!inserted && it->second != t.arity())
  {
    fail(ErrorKind::AlphabetMismatch,
         "symbol " + t.head() + " used with two arities in the grammar");
  }
  for (const Term& c : t.children()) collect_grammar_symbols(c, g, out);
}

struct NtaRule
{
  std::size_t symbol;
  std::vector<std::size_t> args;
  std::size_t target;
};

}  // namespace

Alphabet grammar_alphabet(const TreeGrammar& g)
{
  std::map<std::string, std::size_t> symbols;
  for (const Production& p : g.productions)
  {
    collect_grammar_symbols(p.rhs, g, symbols);
  }
  return Alphabet(symbols);
}

TreeAutomaton grammar_to_automaton(const TreeGrammar& g, const Alphabet& alphabet)
{
  g.validate();
  const std::size_t num_nt = g.nonterminals.size();
  std::map<std::string, std::size_t> nt_index;
  for (std::size_t i = 0; i < num_nt; ++i) nt_index.emplace(g.nonterminals[i], i);

  std::size_t num_nta = num_nt;
  std::unordered_map<Term, std::size_t, TermHash> pattern;
  std::vector<std::vector<NtaRule>> rules(alphabet.size());
  // chain[B] lists A with a rule A -> B.
  std::vector<std::vector<std::size_t>> chain(num_nt);

  auto symbol_of = [&](const Term& t) {
    auto idx = alphabet.index_of(t.head());
    if (!idx || alphabet[*idx].arity != t.arity())
    {
      fail(ErrorKind::AlphabetMismatch,
           "grammar symbol " + t.head() + "/" + std::to_string(t.arity())
               + " is not in the alphabet");
    }
    return *idx;
  };
  std::function<std::size_t(const Term&)> compile = [&](const Term& t) {
    if (t.is_leaf())
    {
      auto nt = nt_index.find(t.head());
      if (nt != nt_index.end()) return nt->second;
    }
    auto it = pattern.find(t);
    if (it != pattern.end()) return it->second;
    std::vector<std::size_t> args;
    for (const Term& c : t.children()) args.push_back(compile(c));
    std::size_t q = num_nta++;
    pattern.emplace(t, q);
    std::size_t s = symbol_of(t);
    rules[s].push_back({s, std::move(args), q});
    return q;
  };
  for (const Production& p : g.productions)
  {
    std::size_t lhs = nt_index.at(p.lhs);
    if (p.rhs.is_leaf() && nt_index.count(p.rhs.head()))
    {
      chain[nt_index.at(p.rhs.head())].push_back(lhs);
      continue;
    }
    std::vector<std::size_t> args;
    for (const Term& c : p.rhs.children()) args.push_back(compile(c));
    std::size_t s = symbol_of(p.rhs);
    rules[s].push_back({s, std::move(args), lhs});
  }

  auto closure = [&](std::vector<bool>& set) {
    std::deque<std::size_t> work;
    for (std::size_t i = 0; i < num_nt; ++i)
    {
      if (set[i]) work.push_back(i);
    }
    while (!work.empty())
    {
      std::size_t b = work.front();
      work.pop_front();
      for (std::size_t a : chain[b])
      {
        if (!set[a])
        {
          set[a] = true;
          work.push_back(a);
        }
      }
    }
  };

  TreeAutomaton out(alphabet);
  std::vector<std::vector<bool>> dstates;
  std::map<std::vector<bool>, State> ids;
  auto intern = [&](std::vector<bool> set) -> State {
    auto it = ids.find(set);
    if (it != ids.end()) return it->second;
    State q = static_cast<State>(dstates.size());
    ids.emplace(set, q);
    out.add_state(q);
    if (set[0]) out.set_accepting(q);
    std::string label;
    for (std::size_t i = 0; i < num_nt; ++i)
    {
      if (!set[i]) continue;
      label += (label.empty() ? "" : ",") + g.nonterminals[i];
    }
    out.set_label(q, "{" + label + "}");
    dstates.push_back(std::move(set));
    return q;
  };
  auto step = [&](std::size_t s, const std::vector<std::size_t>& tuple) {
    std::vector<bool> target(num_nta, false);
    bool any = false;
    for (const NtaRule& r : rules[s])
    {
      bool ok = true;
      for (std::size_t i = 0; i < tuple.size() && ok; ++i)
      {
        ok = dstates[tuple[i]][r.args[i]];
      }
      if (ok)
      {
        target[r.target] = true;
        any = true;
      }
    }
    if (!any) return;
    closure(target);
    State q = intern(std::move(target));
    std::vector<State> args(tuple.begin(), tuple.end());
    out.add_transition(s, std::move(args), q);
  };
  for (std::size_t s = 0; s < alphabet.size(); ++s)
  {
    if (alphabet[s].arity == 0) step(s, {});
  }
  for (std::size_t next = 0; next < dstates.size(); ++next)
  {
    for (std::size_t s = 0; s < alphabet.size(); ++s)
    {
      std::size_t k = alphabet[s].arity;
      if (k == 0 || rules[s].empty()) continue;
      for_each_tuple(k, next, next + 1,
                     [&](const std::vector<std::size_t>& t) { step(s, t); });
    }
  }
  return out;
}

}  // namespace regsyn
