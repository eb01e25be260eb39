#pragma once

#include <stdexcept>
#include <string>

namespace chistar {

// Base of every error raised by the library. kind() is the short error name
// reported by the command-line tool (e.g. "NotInSubfield").
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define CHISTAR_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                        \
   public:                                                           \
    explicit Name(const std::string& what) : Error(#Name, what) {}   \
  }

// exactalg
CHISTAR_DEFINE_ERROR(NotInSubfield);
CHISTAR_DEFINE_ERROR(DivisionByZero);
// qseries
CHISTAR_DEFINE_ERROR(NonUnitLeading);
CHISTAR_DEFINE_ERROR(OutOfTruncation);
// hecke
CHISTAR_DEFINE_ERROR(NotPrimitive);
CHISTAR_DEFINE_ERROR(PrecisionLoss);
// numeval
CHISTAR_DEFINE_ERROR(DomainError);
// modpoly
CHISTAR_DEFINE_ERROR(TruncationTooSmall);
CHISTAR_DEFINE_ERROR(CancellationFailure);
CHISTAR_DEFINE_ERROR(NoSolution);
CHISTAR_DEFINE_ERROR(ParseError);
// cm
CHISTAR_DEFINE_ERROR(InvalidDiscriminant);
CHISTAR_DEFINE_ERROR(LevelUnavailable);
CHISTAR_DEFINE_ERROR(FormulaPole);
CHISTAR_DEFINE_ERROR(SmallDenominator);
CHISTAR_DEFINE_ERROR(ReconstructionFailed);
// generic precondition violations
CHISTAR_DEFINE_ERROR(InvalidArgument);

#undef CHISTAR_DEFINE_ERROR

}  // namespace chistar
