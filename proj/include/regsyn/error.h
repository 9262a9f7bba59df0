#ifndef REGSYN_ERROR_H
#define REGSYN_ERROR_H

#include <stdexcept>
#include <string>

namespace regsyn {

enum class ErrorKind
{
  Syntax,
  ArityMismatch,
  UnknownSymbol,
  DuplicateDeclaration,
  MissingConstraint,
  Unsupported,
  ResourceLimit,
  AlphabetMismatch,
  InvalidSupport,
  NotRegular,
  IteInGrammar,
  EmptyLanguage,
  ModelMismatch,
  MalformedCandidate,
  UnassignedVariable,
  Usage,
};

const char* to_string(ErrorKind kind);

/**
 * The single exception type thrown by the library. The kind is what callers
 * dispatch on (the CLI maps it to an exit code); the message is for humans.
 */
class Error : public std::runtime_error
{
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), d_kind(kind)
  {
  }

  ErrorKind kind() const { return d_kind; }

 private:
  ErrorKind d_kind;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message)
{
  throw Error(kind, message);
}

}  // namespace regsyn

#endif
