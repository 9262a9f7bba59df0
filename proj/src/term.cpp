#include "regsyn/term.h"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "regsyn/error.h"

namespace regsyn {

const char* to_string(ErrorKind kind)
{
  switch (kind)
  {
    case ErrorKind::Syntax: return "SyntaxError";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ErrorKind::DuplicateDeclaration: return "DuplicateDeclaration";
    case ErrorKind::MissingConstraint: return "MissingConstraint";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
    case ErrorKind::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorKind::InvalidSupport: return "InvalidSupport";
    case ErrorKind::NotRegular: return "NotRegular";
    case ErrorKind::IteInGrammar: return "IteInGrammar";
    case ErrorKind::EmptyLanguage: return "EmptyLanguage";
    case ErrorKind::ModelMismatch: return "ModelMismatch";
    case ErrorKind::MalformedCandidate: return "MalformedCandidate";
    case ErrorKind::UnassignedVariable: return "UnassignedVariable";
    case ErrorKind::Usage: return "UsageError";
  }
  return "Error";
}

struct Term::Node
{
  std::string head;
  std::vector<Term> children;
  std::size_t size;
  std::size_t depth;
  std::size_t hash;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t value)
{
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Term::Term(std::string head) : Term(std::move(head), {}) {}

Term::Term(std::string head, std::vector<Term> children)
{
  auto node = std::make_shared<Node>();
  node->size = 1;
  node->depth = 1;
  node->hash = std::hash<std::string>()(head);
  for (const Term& c : children)
  {
    assert(!c.empty());
    node->size += c.size();
    node->depth = std::max(node->depth, c.depth() + 1);
    node->hash = mix(node->hash, c.hash());
  }
  node->head = std::move(head);
  node->children = std::move(children);
  d_node = std::move(node);
}

const std::string& Term::head() const { return d_node->head; }

std::span<const Term> Term::children() const { return d_node->children; }

const Term& Term::child(std::size_t i) const { return d_node->children.at(i); }

std::size_t Term::arity() const { return d_node->children.size(); }

std::size_t Term::size() const { return d_node->size; }

std::size_t Term::depth() const { return d_node->depth; }

std::size_t Term::hash() const { return d_node ? d_node->hash : 0; }

bool Term::operator==(const Term& other) const
{
  if (d_node == other.d_node) return true;
  if (!d_node || !other.d_node) return false;
  if (d_node->hash != other.d_node->hash || d_node->size != other.d_node->size
      || d_node->head != other.d_node->head)
  {
    return false;
  }
  return d_node->children == other.d_node->children;
}

TermOrder::TermOrder(std::vector<std::string> preferred)
    : d_preferred(std::move(preferred))
{
  for (std::size_t i = 0; i < d_preferred.size(); ++i)
  {
    d_rank.emplace(d_preferred[i], i);
  }
}

int TermOrder::compare_heads(const std::string& a, const std::string& b) const
{
  if (a == b) return 0;
  auto ia = d_rank.find(a);
  auto ib = d_rank.find(b);
  bool pa = ia != d_rank.end();
  bool pb = ib != d_rank.end();
  if (pa && pb) return ia->second < ib->second ? -1 : 1;
  if (pa) return -1;
  if (pb) return 1;
  return a < b ? -1 : 1;
}

int TermOrder::compare(const Term& a, const Term& b) const
{
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  if (a == b) return 0;
  if (int h = compare_heads(a.head(), b.head()); h != 0) return h;
  if (a.arity() != b.arity()) return a.arity() < b.arity() ? -1 : 1;
  for (std::size_t i = 0; i < a.arity(); ++i)
  {
    if (int c = compare(a.child(i), b.child(i)); c != 0) return c;
  }
  return 0;
}

namespace {

void collect(const Term& t, TermSet& seen, std::vector<Term>& out)
{
  if (seen.count(t)) return;
  for (const Term& c : t.children()) collect(c, seen, out);
  seen.insert(t);
  out.push_back(t);
}

}  // namespace

std::vector<Term> subterms(std::span<const Term> terms, const TermOrder& order)
{
  TermSet seen;
  std::vector<Term> out;
  for (const Term& t : terms) collect(t, seen, out);
  std::sort(out.begin(), out.end(), order);
  return out;
}

std::vector<Term> subterms(const Term& t, const TermOrder& order)
{
  return subterms(std::span<const Term>(&t, 1), order);
}

bool contains_symbol(const Term& t, std::string_view symbol)
{
  if (t.head() == symbol) return true;
  return std::any_of(t.children().begin(), t.children().end(),
                     [&](const Term& c) { return contains_symbol(c, symbol); });
}

std::size_t count_symbol(const Term& t, std::string_view symbol)
{
  std::size_t n = t.head() == symbol ? 1 : 0;
  for (const Term& c : t.children()) n += count_symbol(c, symbol);
  return n;
}

Term substitute_leaves(const Term& t, const std::map<std::string, Term>& map)
{
  if (t.is_leaf())
  {
    auto it = map.find(t.head());
    return it == map.end() ? t : it->second;
  }
  std::vector<Term> kids;
  kids.reserve(t.arity());
  bool changed = false;
  for (const Term& c : t.children())
  {
    kids.push_back(substitute_leaves(c, map));
    changed = changed || kids.back() != c;
  }
  return changed ? Term(t.head(), std::move(kids)) : t;
}

Term replace_subterm(const Term& t, const Term& from, const Term& to)
{
  if (t == from) return to;
  if (t.size() <= from.size()) return t;
  std::vector<Term> kids;
  kids.reserve(t.arity());
  bool changed = false;
  for (const Term& c : t.children())
  {
    kids.push_back(replace_subterm(c, from, to));
    changed = changed || kids.back() != c;
  }
  return changed ? Term(t.head(), std::move(kids)) : t;
}

namespace {

void print(std::ostream& os, const Term& t)
{
  if (t.empty())
  {
    os << "<empty>";
    return;
  }
  if (t.is_leaf())
  {
    os << t.head();
    return;
  }
  os << '(' << t.head();
  for (const Term& c : t.children())
  {
    os << ' ';
    print(os, c);
  }
  os << ')';
}

}  // namespace

std::string to_string(const Term& t)
{
  std::ostringstream os;
  print(os, t);
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Term& t)
{
  print(os, t);
  return os;
}

const std::string Context::kHole = "[]";

Context::Context() : d_term(kHole) {}

Context::Context(Term with_hole) : d_term(std::move(with_hole))
{
  if (count_symbol(d_term, kHole) != 1)
  {
    fail(ErrorKind::Unsupported,
         "context must contain exactly one hole: " + to_string(d_term));
  }
}

Term Context::plug(const Term& s) const
{
  return substitute_leaves(d_term, {{kHole, s}});
}

std::vector<Term> Context::hole_free_subterms() const
{
  std::vector<Term> out;
  for (const Term& t : subterms(d_term))
  {
    if (!contains_symbol(t, kHole)) out.push_back(t);
  }
  return out;
}

std::pair<Context, Term> factor_occurrence(const Term& t,
                                           std::string_view symbol)
{
  if (t.head() == symbol) return {Context(), t};
  for (std::size_t i = 0; i < t.arity(); ++i)
  {
    if (!contains_symbol(t.child(i), symbol)) continue;
    auto [inner, occ] = factor_occurrence(t.child(i), symbol);
    std::vector<Term> kids(t.children().begin(), t.children().end());
    kids[i] = inner.term();
    return {Context(Term(t.head(), std::move(kids))), occ};
  }
  fail(ErrorKind::Unsupported,
       "no occurrence of " + std::string(symbol) + " in " + to_string(t));
}

Term apply_second_order(const Term& s, const SecondOrderSubstitution& w)
{
  if (s.is_leaf() && s.head() != w.target) return s;
  std::vector<Term> kids;
  kids.reserve(s.arity());
  for (const Term& c : s.children()) kids.push_back(apply_second_order(c, w));
  if (s.head() != w.target) return Term(s.head(), std::move(kids));
  std::map<std::string, Term> binding;
  for (std::size_t i = 0; i < w.params.size() && i < kids.size(); ++i)
  {
    binding.emplace(w.params[i], kids[i]);
  }
  return substitute_leaves(w.body, binding);
}

namespace builtin {

bool is_connective(std::string_view name)
{
  return name == kEq || name == kNot || name == kAnd || name == kOr
         || name == kImplies || name == kTrue || name == kFalse;
}

bool is_reserved(std::string_view name)
{
  return is_connective(name) || name == kIte || name == kForall
         || name == kExists || name == Context::kHole;
}

}  // namespace builtin

}  // namespace regsyn
