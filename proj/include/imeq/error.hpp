#pragma once

#include <stdexcept>
#include <string>

namespace imeq {

// Error categories surfaced by the library.  Kept in one enum so callers
// (tests, CLI exit-code mapping) can switch on the kind without parsing
// messages.
enum class Errc {
  DuplicateActionEdge,
  DeadEnd,
  UnknownVertex,
  UnknownAction,
  UnknownPlayer,
  UnknownOwner,
  UndefinedMove,
  NoCandidateFound,
  InstanceTooLarge,
  ParseError,
  ValidationError,
  UnsupportedObject,
};

const char *errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string &message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code(code) {}

  Errc code;
};

}  // namespace imeq
