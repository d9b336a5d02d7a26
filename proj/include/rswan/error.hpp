#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rswan {

/// Base class of every error raised by the library. `kind()` is the stable
/// identifier that ends up in task-level error records of a report.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define RSWAN_DEFINE_ERROR(Name)                                      \
  class Name : public Error {                                         \
   public:                                                            \
    explicit Name(const std::string& message) : Error(#Name, message) {} \
  }

RSWAN_DEFINE_ERROR(PrecisionExhausted);
RSWAN_DEFINE_ERROR(TowerMismatch);
RSWAN_DEFINE_ERROR(ZeroInput);
RSWAN_DEFINE_ERROR(UnknownVariable);
RSWAN_DEFINE_ERROR(NonEmbedding);
RSWAN_DEFINE_ERROR(NonPolynomialTail);
RSWAN_DEFINE_ERROR(OrdOutOfRange);
RSWAN_DEFINE_ERROR(DegreeOverflow);
RSWAN_DEFINE_ERROR(DegreeMismatch);
RSWAN_DEFINE_ERROR(NotTopDegree);
RSWAN_DEFINE_ERROR(NoPthRoot);
RSWAN_DEFINE_ERROR(WindowTooWide);
RSWAN_DEFINE_ERROR(NotReduced);
RSWAN_DEFINE_ERROR(UnramifiedCharacter);
RSWAN_DEFINE_ERROR(InconsistentValue);
RSWAN_DEFINE_ERROR(NotTopological);
RSWAN_DEFINE_ERROR(ZeroEntry);
RSWAN_DEFINE_ERROR(NonPerfectBase);
RSWAN_DEFINE_ERROR(ConfigError);
RSWAN_DEFINE_ERROR(Unsupported);

#undef RSWAN_DEFINE_ERROR

/// Raised by the series-literal parser; carries the byte offset of the
/// offending token.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error("ParseError", message + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace rswan
