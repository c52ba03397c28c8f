#pragma once

#include <stdexcept>
#include <string>

namespace gsp4 {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define GSP4_ERROR(Name)                                     \
  struct Name : Error {                                      \
    explicit Name(const std::string& what = #Name) : Error(what) {} \
  };

GSP4_ERROR(DivisionByZero)
GSP4_ERROR(IrrationalResidue)
GSP4_ERROR(PoleAtOne)
GSP4_ERROR(SymbolicMode)
GSP4_ERROR(ParityViolation)
GSP4_ERROR(VanishingEulerFactor)
GSP4_ERROR(VanishingDenominator)
GSP4_ERROR(InvariantViolation)
GSP4_ERROR(UnderdeterminedSystem)
GSP4_ERROR(PrecisionExceeded)
GSP4_ERROR(UnsupportedTag)
GSP4_ERROR(PoleDetected)
GSP4_ERROR(WeightZeroSupport)
GSP4_ERROR(UnsupportedLocalDatum)
GSP4_ERROR(TruncationTooShort)
GSP4_ERROR(CharacterConductorMismatch)
GSP4_ERROR(RangeViolation)
GSP4_ERROR(DegreeBudgetExceeded)
GSP4_ERROR(NonOrdinary)
GSP4_ERROR(ConfigError)

#undef GSP4_ERROR

}  // namespace gsp4
