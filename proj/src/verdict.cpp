#include "regsyn/verdict.h"

namespace regsyn {

const char* to_string(Outcome o)
{
  switch (o)
  {
    case Outcome::Solvable: return "solvable";
    case Outcome::Unsolvable: return "unsolvable";
    case Outcome::Unknown: return "unknown";
  }
  return "?";
}

Verdict Verdict::solvable(Term witness, std::string engine)
{
  Verdict v;
  v.outcome = Outcome::Solvable;
  v.witness = std::move(witness);
  v.engine = std::move(engine);
  return v;
}

Verdict Verdict::unsolvable(std::string engine)
{
  Verdict v;
  v.outcome = Outcome::Unsolvable;
  v.engine = std::move(engine);
  return v;
}

Verdict Verdict::unknown(std::size_t bound, std::string engine)
{
  Verdict v;
  v.outcome = Outcome::Unknown;
  v.bound = bound;
  v.engine = std::move(engine);
  return v;
}

}  // namespace regsyn
