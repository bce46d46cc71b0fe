#pragma once

#include <stdexcept>
#include <string>

namespace idealconv {

/// Root of every error raised by the engine.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define IDEALCONV_ERROR(Name)                                                  \
  class Name : public Error {                                                  \
  public:                                                                      \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {}       \
  }

IDEALCONV_ERROR(FiniteSetExhausted);
IDEALCONV_ERROR(InvalidAlpha);
IDEALCONV_ERROR(Undecidable);
IDEALCONV_ERROR(UnsupportedFamily);
IDEALCONV_ERROR(NotAPIdeal);
IDEALCONV_ERROR(NotAGIdeal);
IDEALCONV_ERROR(NotConvergent);
IDEALCONV_ERROR(HypothesisViolated);
IDEALCONV_ERROR(UnknownCheckId);
IDEALCONV_ERROR(SchemaError);
IDEALCONV_ERROR(InvalidArgument);

#undef IDEALCONV_ERROR

} // namespace idealconv
