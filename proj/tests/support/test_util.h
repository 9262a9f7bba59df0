#ifndef REGSYN_TESTS_TEST_UTIL_H
#define REGSYN_TESTS_TEST_UTIL_H

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "regsyn/error.h"
#include "regsyn/sexpr.h"
#include "regsyn/term.h"

namespace regsyn::testing {

/** Term from s-expression text, with no signature checks. */
inline Term from_sexpr(const Sexpr& e)
{
  if (!e.is_list()) return Term(e.atom);
  std::vector<Term> kids;
  for (std::size_t i = 1; i < e.size(); ++i) kids.push_back(from_sexpr(e[i]));
  return Term(e[0].atom, std::move(kids));
}

inline Term T(std::string_view text) { return from_sexpr(read_sexpr(text)); }

inline std::string data_path(const std::string& name)
{
  return std::string(REGSYN_DATA_DIR) + "/" + name;
}

inline std::string read_data(const std::string& name)
{
  std::ifstream in(data_path(name), std::ios::binary);
  if (!in) fail(ErrorKind::Usage, "missing test data " + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/** Kind of the Error thrown by `f`, or nullopt if it returns normally. */
template <class F>
std::optional<ErrorKind> error_kind(F&& f)
{
  try
  {
    f();
  }
  catch (const Error& e)
  {
    return e.kind();
  }
  return std::nullopt;
}

}  // namespace regsyn::testing

#endif
