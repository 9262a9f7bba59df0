#include "regsyn/formula.h"

#include <algorithm>
#include <map>

#include "regsyn/error.h"

namespace regsyn {

namespace fm {

Formula eq(Term a, Term b)
{
  return Term(std::string(builtin::kEq), {std::move(a), std::move(b)});
}

Formula neg(Formula f) { return Term(std::string(builtin::kNot), {std::move(f)}); }

Formula conj(std::vector<Formula> fs)
{
  if (fs.empty()) return top();
  if (fs.size() == 1) return fs.front();
  return Term(std::string(builtin::kAnd), std::move(fs));
}

Formula disj(std::vector<Formula> fs)
{
  if (fs.empty()) return bottom();
  if (fs.size() == 1) return fs.front();
  return Term(std::string(builtin::kOr), std::move(fs));
}

Formula implies(Formula a, Formula b)
{
  return Term(std::string(builtin::kImplies), {std::move(a), std::move(b)});
}

Term ite(Formula c, Term then_term, Term else_term)
{
  return Term(std::string(builtin::kIte),
              {std::move(c), std::move(then_term), std::move(else_term)});
}

Formula top() { return Term(std::string(builtin::kTrue)); }
Formula bottom() { return Term(std::string(builtin::kFalse)); }

bool is_eq(const Formula& f) { return f.head() == builtin::kEq && f.arity() == 2; }
bool is_true(const Formula& f) { return f.head() == builtin::kTrue && f.is_leaf(); }
bool is_false(const Formula& f) { return f.head() == builtin::kFalse && f.is_leaf(); }

}  // namespace fm

Formula to_formula(const Literal& lit)
{
  return lit.positive ? lit.atom : fm::neg(lit.atom);
}

std::string NameSupply::fresh_indexed(const std::string& prefix)
{
  while (true)
  {
    std::string name = prefix + std::to_string(d_counter++);
    if (d_used.insert(name).second) return name;
  }
}

std::string NameSupply::fresh_like(const std::string& name)
{
  if (d_used.insert(name).second) return name;
  for (std::size_t i = 1;; ++i)
  {
    std::string candidate = name + "_" + std::to_string(i);
    if (d_used.insert(candidate).second) return candidate;
  }
}

namespace {

bool is_quantifier(const Term& f)
{
  return f.head() == builtin::kForall || f.head() == builtin::kExists;
}

// Builds an n-ary and/or node, flattening nested nodes of the same kind and
// folding the neutral and absorbing constants.
Formula junction(bool is_and, std::vector<Formula> parts)
{
  std::vector<Formula> flat;
  const std::string_view op = is_and ? builtin::kAnd : builtin::kOr;
  for (Formula& p : parts)
  {
    if (is_and ? fm::is_true(p) : fm::is_false(p)) continue;
    if (is_and ? fm::is_false(p) : fm::is_true(p))
    {
      return is_and ? fm::bottom() : fm::top();
    }
    if (p.head() == op)
    {
      flat.insert(flat.end(), p.children().begin(), p.children().end());
    }
    else
    {
      flat.push_back(std::move(p));
    }
  }
  return is_and ? fm::conj(std::move(flat)) : fm::disj(std::move(flat));
}

Formula nnf(const Formula& f, bool positive)
{
  const std::string& h = f.head();
  if (fm::is_true(f) || fm::is_false(f))
  {
    return fm::is_true(f) == positive ? fm::top() : fm::bottom();
  }
  if (h == builtin::kNot && f.arity() == 1) return nnf(f.child(0), !positive);
  if ((h == builtin::kAnd || h == builtin::kOr) && !f.is_leaf())
  {
    std::vector<Formula> parts;
    for (const Formula& c : f.children()) parts.push_back(nnf(c, positive));
    bool is_and = (h == builtin::kAnd) == positive;
    return junction(is_and, std::move(parts));
  }
  if (h == builtin::kImplies && f.arity() == 2)
  {
    // a => b  ==  (not a) or b
    std::vector<Formula> parts{nnf(f.child(0), !positive),
                               nnf(f.child(1), positive)};
    return junction(!positive, std::move(parts));
  }
  if (h == builtin::kIte && f.arity() == 3)
  {
    // boolean ite in formula position: (c and t) or (not c and e)
    Formula then_part = junction(
        true, {nnf(f.child(0), true), nnf(f.child(1), positive)});
    Formula else_part = junction(
        true, {nnf(f.child(0), false), nnf(f.child(2), positive)});
    return junction(false, {then_part, else_part});
  }
  if (is_quantifier(f))
  {
    fail(ErrorKind::Unsupported,
         "quantifier in normal-form conversion: " + to_string(f));
  }
  return positive ? f : fm::neg(f);
}

Literal as_literal(const Formula& f)
{
  if (f.head() == builtin::kNot && f.arity() == 1) return {false, f.child(0)};
  return {true, f};
}

void dedupe(std::vector<Literal>& lits)
{
  std::vector<Literal> out;
  for (Literal& l : lits)
  {
    if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
  }
  lits = std::move(out);
}

// Shared distribution: `outer_and` selects CNF (a list of disjunctive
// clauses) versus DNF (a list of conjunctive cubes).
std::vector<std::vector<Literal>> distribute(const Formula& f, bool outer_and,
                                             std::size_t limit)
{
  using Sets = std::vector<std::vector<Literal>>;
  const std::string_view outer = outer_and ? builtin::kAnd : builtin::kOr;
  const std::string_view inner = outer_and ? builtin::kOr : builtin::kAnd;
  if (fm::is_true(f)) return outer_and ? Sets{} : Sets{{}};
  if (fm::is_false(f)) return outer_and ? Sets{{}} : Sets{};
  if (f.head() == outer && !f.is_leaf())
  {
    Sets out;
    for (const Formula& c : f.children())
    {
      Sets part = distribute(c, outer_and, limit);
      out.insert(out.end(), part.begin(), part.end());
      if (out.size() > limit)
      {
        fail(ErrorKind::ResourceLimit, "normal form exceeds "
                                           + std::to_string(limit)
                                           + " clauses");
      }
    }
    return out;
  }
  if (f.head() == inner && !f.is_leaf())
  {
    Sets acc{{}};
    for (const Formula& c : f.children())
    {
      Sets part = distribute(c, outer_and, limit);
      if (acc.size() * part.size() > limit)
      {
        fail(ErrorKind::ResourceLimit, "normal form exceeds "
                                           + std::to_string(limit)
                                           + " clauses");
      }
      Sets next;
      next.reserve(acc.size() * part.size());
      for (const auto& a : acc)
      {
        for (const auto& p : part)
        {
          std::vector<Literal> merged = a;
          merged.insert(merged.end(), p.begin(), p.end());
          dedupe(merged);
          next.push_back(std::move(merged));
        }
      }
      acc = std::move(next);
    }
    return acc;
  }
  return {{as_literal(f)}};
}

}  // namespace

Formula to_nnf(const Formula& f) { return nnf(f, true); }

ClauseSet to_cnf(const Formula& f, std::size_t limit)
{
  return distribute(to_nnf(f), true, limit);
}

std::vector<Conjunction> to_dnf(const Formula& f, std::size_t limit)
{
  return distribute(to_nnf(f), false, limit);
}

Formula clauses_to_formula(const ClauseSet& clauses)
{
  std::vector<Formula> conjuncts;
  for (const Clause& c : clauses)
  {
    std::vector<Formula> lits;
    for (const Literal& l : c) lits.push_back(to_formula(l));
    conjuncts.push_back(fm::disj(std::move(lits)));
  }
  return fm::conj(std::move(conjuncts));
}

bool contains_ite(const Term& t) { return contains_symbol(t, builtin::kIte); }

bool contains_quantifier(const Formula& f)
{
  return contains_symbol(f, builtin::kForall)
         || contains_symbol(f, builtin::kExists);
}

namespace {

class IteEliminator
{
 public:
  explicit IteEliminator(NameSupply& names) : d_names(names) {}

  Formula formula(const Formula& f)
  {
    const std::string& h = f.head();
    if (is_quantifier(f))
    {
      if (contains_ite(f))
      {
        fail(ErrorKind::Unsupported,
             "ITE below a quantifier; skolemize first: " + to_string(f));
      }
      return f;
    }
    bool connective = (h == builtin::kNot || h == builtin::kAnd
                       || h == builtin::kOr || h == builtin::kImplies)
                      && !f.is_leaf();
    bool bool_ite = h == builtin::kIte && f.arity() == 3;
    if (connective || bool_ite)
    {
      std::vector<Formula> kids;
      for (const Formula& c : f.children()) kids.push_back(formula(c));
      return Term(h, std::move(kids));
    }
    // Atom: every child is in term position.
    std::vector<Term> kids;
    for (const Term& c : f.children()) kids.push_back(term(c));
    return f.is_leaf() ? f : Term(h, std::move(kids));
  }

  Term term(const Term& t)
  {
    if (t.is_leaf()) return t;
    if (t.head() == builtin::kIte && t.arity() == 3)
    {
      Term cond = formula(t.child(0));
      Term then_term = term(t.child(1));
      Term else_term = term(t.child(2));
      Term key = fm::ite(cond, then_term, else_term);
      auto it = d_memo.find(key);
      if (it != d_memo.end()) return it->second;
      Term k(d_names.fresh_indexed("c_ite_"));
      d_constants.push_back(k.head());
      d_defs.push_back(fm::implies(cond, fm::eq(k, then_term)));
      d_defs.push_back(fm::implies(fm::neg(cond), fm::eq(k, else_term)));
      d_memo.emplace(key, k);
      return k;
    }
    std::vector<Term> kids;
    for (const Term& c : t.children()) kids.push_back(term(c));
    return Term(t.head(), std::move(kids));
  }

  std::vector<Formula> d_defs;
  std::vector<std::string> d_constants;

 private:
  NameSupply& d_names;
  std::unordered_map<Term, Term, TermHash> d_memo;
};

}  // namespace

DesugarResult desugar_ite(const Formula& phi, NameSupply& names)
{
  if (!contains_ite(phi)) return {phi, {}};
  IteEliminator elim(names);
  Formula body = elim.formula(phi);
  if (elim.d_defs.empty()) return {body, {}};
  return {fm::implies(fm::conj(elim.d_defs), body), elim.d_constants};
}

SkolemResult skolemize_universals(const Formula& phi, NameSupply& names)
{
  SkolemResult result{phi, {}};
  std::map<std::string, Term> renaming;
  while (result.formula.head() == builtin::kForall
         && result.formula.arity() >= 1)
  {
    const Formula& q = result.formula;
    for (std::size_t i = 0; i + 1 < q.arity(); ++i)
    {
      const std::string& var = q.child(i).head();
      std::string sk = names.fresh_like("sk_" + var);
      result.constants.emplace_back(var, sk);
      renaming[var] = Term(sk);
    }
    result.formula = q.child(q.arity() - 1);
  }
  if (contains_quantifier(result.formula))
  {
    fail(ErrorKind::Unsupported,
         "only top-level universal quantifiers are supported: "
             + to_string(phi));
  }
  if (!renaming.empty())
  {
    result.formula = substitute_leaves(result.formula, renaming);
  }
  return result;
}

}  // namespace regsyn
