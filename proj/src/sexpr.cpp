#include "regsyn/sexpr.h"

#include <cctype>

#include "regsyn/error.h"

namespace regsyn {

std::string Sexpr::where() const
{
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

namespace {

class Reader
{
 public:
  explicit Reader(std::string_view text) : d_text(text) {}

  bool at_end()
  {
    skip_space();
    return d_pos >= d_text.size();
  }

  Sexpr read()
  {
    skip_space();
    if (d_pos >= d_text.size()) error("unexpected end of input");
    Sexpr e;
    e.line = d_line;
    e.column = d_col;
    char c = d_text[d_pos];
    if (c == '(')
    {
      advance();
      e.kind = Sexpr::Kind::List;
      while (true)
      {
        skip_space();
        if (d_pos >= d_text.size())
        {
          fail(ErrorKind::Syntax, "unclosed '(' opened at " + e.where());
        }
        if (d_text[d_pos] == ')')
        {
          advance();
          break;
        }
        e.items.push_back(read());
      }
      return e;
    }
    if (c == ')') error("unexpected ')'");
    if (c == '"')
    {
      e.kind = Sexpr::Kind::String;
      advance();
      while (true)
      {
        if (d_pos >= d_text.size())
        {
          fail(ErrorKind::Syntax, "unterminated string at " + e.where());
        }
        char d = d_text[d_pos];
        advance();
        if (d == '"')
        {
          if (d_pos < d_text.size() && d_text[d_pos] == '"')
          {
            advance();
            e.atom += '"';
            continue;
          }
          break;
        }
        e.atom += d;
      }
      return e;
    }
    e.kind = Sexpr::Kind::Symbol;
    if (c == '|')
    {
      advance();
      while (d_pos < d_text.size() && d_text[d_pos] != '|')
      {
        e.atom += d_text[d_pos];
        advance();
      }
      if (d_pos >= d_text.size())
      {
        fail(ErrorKind::Syntax, "unterminated |symbol| at " + e.where());
      }
      advance();
      return e;
    }
    while (d_pos < d_text.size())
    {
      char d = d_text[d_pos];
      if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')'
          || d == ';' || d == '"')
      {
        break;
      }
      e.atom += d;
      advance();
    }
    return e;
  }

 private:
  [[noreturn]] void error(const std::string& msg)
  {
    fail(ErrorKind::Syntax, msg + " at line " + std::to_string(d_line)
                                + ", column " + std::to_string(d_col));
  }

  void advance()
  {
    if (d_text[d_pos] == '\n')
    {
      ++d_line;
      d_col = 1;
    }
    else
    {
      ++d_col;
    }
    ++d_pos;
  }

  void skip_space()
  {
    while (d_pos < d_text.size())
    {
      char c = d_text[d_pos];
      if (c == ';')
      {
        while (d_pos < d_text.size() && d_text[d_pos] != '\n') advance();
      }
      else if (std::isspace(static_cast<unsigned char>(c)))
      {
        advance();
      }
      else
      {
        break;
      }
    }
  }

  std::string_view d_text;
  std::size_t d_pos = 0;
  std::size_t d_line = 1;
  std::size_t d_col = 1;
};

bool needs_bars(const std::string& s)
{
  if (s.empty()) return true;
  for (char c : s)
  {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')'
        || c == ';' || c == '"' || c == '|')
    {
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<Sexpr> read_sexprs(std::string_view text)
{
  Reader r(text);
  std::vector<Sexpr> out;
  while (!r.at_end()) out.push_back(r.read());
  return out;
}

Sexpr read_sexpr(std::string_view text)
{
  Reader r(text);
  Sexpr e = r.read();
  if (!r.at_end())
  {
    fail(ErrorKind::Syntax, "trailing input after s-expression");
  }
  return e;
}

std::string quote_string(std::string_view s)
{
  std::string out = "\"";
  for (char c : s)
  {
    out += c;
    if (c == '"') out += '"';
  }
  out += '"';
  return out;
}

std::string to_string(const Sexpr& e)
{
  switch (e.kind)
  {
    case Sexpr::Kind::Symbol:
      return needs_bars(e.atom) ? "|" + e.atom + "|" : e.atom;
    case Sexpr::Kind::String: return quote_string(e.atom);
    case Sexpr::Kind::List: break;
  }
  std::string out = "(";
  for (std::size_t i = 0; i < e.items.size(); ++i)
  {
    if (i) out += ' ';
    out += to_string(e.items[i]);
  }
  return out + ")";
}

}  // namespace regsyn
