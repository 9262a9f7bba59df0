#ifndef REGSYN_VERDICT_H
#define REGSYN_VERDICT_H

#include <cstddef>
#include <optional>
#include <string>

#include "regsyn/automaton.h"
#include "regsyn/term.h"

namespace regsyn {

enum class Outcome
{
  Solvable,
  Unsolvable,
  Unknown,
};

const char* to_string(Outcome o);

/** Solver result. `solutions` is set by the automaton-based engine only;
 * `bound` is meaningful for Unknown. */
struct Verdict
{
  Outcome outcome = Outcome::Unknown;
  std::optional<Term> witness;
  std::optional<TreeAutomaton> solutions;
  std::size_t bound = 0;
  std::string engine;

  static Verdict solvable(Term witness, std::string engine);
  static Verdict unsolvable(std::string engine);
  static Verdict unknown(std::size_t bound, std::string engine);
};

}  // namespace regsyn

#endif
