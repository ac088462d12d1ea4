#pragma once

#include <stdexcept>
#include <string>

namespace grpkc {

/// Broad failure classes. The CLI maps each class to one exit code.
enum class ErrorClass {
  validation,  // bad parameters, guard violations
  crypto,      // non-units, points at infinity
  format,      // malformed files and text
  exhausted,   // search bound reached without a hit
};

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, const std::string& what)
      : std::runtime_error(what), cls_(cls) {}

  ErrorClass error_class() const noexcept { return cls_; }

 private:
  ErrorClass cls_;
};

#define GRPKC_DEFINE_ERROR(Name, Class)                                  \
  class Name : public Error {                                            \
   public:                                                               \
    explicit Name(const std::string& what)                               \
        : Error(ErrorClass::Class, std::string(#Name ": ") + what) {}    \
  };

GRPKC_DEFINE_ERROR(ParameterError, validation)
GRPKC_DEFINE_ERROR(DomainError, validation)
GRPKC_DEFINE_ERROR(SpecError, validation)
GRPKC_DEFINE_ERROR(BadPrime, validation)
GRPKC_DEFINE_ERROR(SingularCurve, validation)
GRPKC_DEFINE_ERROR(PointNotOnCurve, validation)
GRPKC_DEFINE_ERROR(TooLarge, validation)
GRPKC_DEFINE_ERROR(BlockTooLong, validation)
GRPKC_DEFINE_ERROR(DigitOutOfRange, validation)
GRPKC_DEFINE_ERROR(UnsupportedCharacter, validation)
GRPKC_DEFINE_ERROR(SmallOrderUnit, validation)
GRPKC_DEFINE_ERROR(SmallOrderPoint, validation)
GRPKC_DEFINE_ERROR(NotAUnit, crypto)
GRPKC_DEFINE_ERROR(InfinityEncountered, crypto)
GRPKC_DEFINE_ERROR(FormatError, format)
GRPKC_DEFINE_ERROR(NotFound, exhausted)

#undef GRPKC_DEFINE_ERROR

}  // namespace grpkc
