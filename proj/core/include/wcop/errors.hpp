#pragma once

#include <stdexcept>
#include <string>

namespace wcop {

// Base for every error raised by the library. kind() is a stable tag used in
// the structured error objects the CLI prints.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define WCOP_DEFINE_ERROR(Name, tag)                                   \
  class Name : public Error {                                          \
   public:                                                             \
    explicit Name(const std::string& what) : Error(tag, what) {}       \
  };

WCOP_DEFINE_ERROR(DomainError, "domain")
WCOP_DEFINE_ERROR(UnsupportedOperation, "unsupported_operation")
WCOP_DEFINE_ERROR(SamplingError, "sampling")
WCOP_DEFINE_ERROR(AliasingError, "aliasing")
WCOP_DEFINE_ERROR(ParameterError, "parameter")
WCOP_DEFINE_ERROR(PreconditionError, "precondition")
WCOP_DEFINE_ERROR(ParseError, "parse")
WCOP_DEFINE_ERROR(ResourceLimit, "resource_limit")
WCOP_DEFINE_ERROR(IoError, "io")

#undef WCOP_DEFINE_ERROR

}  // namespace wcop
