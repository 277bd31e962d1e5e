#pragma once

#include <stdexcept>
#include <string>

namespace idrl {

// Base class for every domain error raised by the library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define IDRL_ERROR_TYPE(Name)                                        \
  class Name : public Error {                                        \
  public:                                                            \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

IDRL_ERROR_TYPE(EmptyInput);
IDRL_ERROR_TYPE(NoSeedPrice);
IDRL_ERROR_TYPE(InsufficientData);
IDRL_ERROR_TYPE(IncompleteProduct);
IDRL_ERROR_TYPE(EpisodeDone);
IDRL_ERROR_TYPE(IncompleteEpisode);
IDRL_ERROR_TYPE(NonFiniteInput);
IDRL_ERROR_TYPE(NoForwardPass);
IDRL_ERROR_TYPE(ShapeMismatch);
IDRL_ERROR_TYPE(NonFiniteLoss);
IDRL_ERROR_TYPE(AgentViolation);
IDRL_ERROR_TYPE(IoError);
IDRL_ERROR_TYPE(ParseError);
IDRL_ERROR_TYPE(UsageError);

#undef IDRL_ERROR_TYPE

}  // namespace idrl
