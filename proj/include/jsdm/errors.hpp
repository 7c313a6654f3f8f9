#pragma once

#include <stdexcept>
#include <string>

namespace jsdm {

/// Base class for every domain error raised by the library. `code()` is a
/// stable snake_case identifier used by the CLI's machine-readable
/// diagnostics.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define JSDM_DEFINE_ERROR(Name, code_str)                                  \
  class Name : public Error {                                              \
   public:                                                                 \
    explicit Name(const std::string& message) : Error(code_str, message) {} \
  }

JSDM_DEFINE_ERROR(DomainError, "domain_error");
JSDM_DEFINE_ERROR(InvalidDistribution, "invalid_distribution");
JSDM_DEFINE_ERROR(DimensionMismatch, "dimension_mismatch");
JSDM_DEFINE_ERROR(AbsoluteContinuityViolation, "absolute_continuity_violation");
JSDM_DEFINE_ERROR(Divergent, "divergent");
JSDM_DEFINE_ERROR(InvalidGenerator, "invalid_generator");
JSDM_DEFINE_ERROR(EmptyWindow, "empty_window");
JSDM_DEFINE_ERROR(SequenceTooShort, "sequence_too_short");
JSDM_DEFINE_ERROR(InvalidState, "invalid_state");
JSDM_DEFINE_ERROR(InvalidPovm, "invalid_povm");
JSDM_DEFINE_ERROR(UnsupportedDimension, "unsupported_dimension");
JSDM_DEFINE_ERROR(ParseError, "parse_error");
JSDM_DEFINE_ERROR(IoError, "io_error");

#undef JSDM_DEFINE_ERROR

}  // namespace jsdm
