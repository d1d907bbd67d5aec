#pragma once

#include <stdexcept>
#include <string>

namespace somor {

// Root of the somor exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rejected input: inconsistent dimensions, parse failures, bad parameters.
// The CLI maps these to exit code 1.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Failure discovered while computing. The CLI maps these to exit code 2.
class NumericalError : public Error {
 public:
  using Error::Error;
};

#define SOMOR_DEFINE_ERROR(NAME, BASE) \
  class NAME : public BASE {           \
   public:                             \
    using BASE::BASE;                  \
  }

SOMOR_DEFINE_ERROR(DimensionMismatch, ValidationError);
SOMOR_DEFINE_ERROR(InvalidParameter, ValidationError);
SOMOR_DEFINE_ERROR(OddDimension, ValidationError);
SOMOR_DEFINE_ERROR(EmptySpectrum, ValidationError);
SOMOR_DEFINE_ERROR(RankDeficient, ValidationError);
SOMOR_DEFINE_ERROR(GridMismatch, ValidationError);
SOMOR_DEFINE_ERROR(NonDecayingInput, ValidationError);
SOMOR_DEFINE_ERROR(FullRank, ValidationError);
SOMOR_DEFINE_ERROR(ParseError, ValidationError);

SOMOR_DEFINE_ERROR(SingularMatrix, NumericalError);
SOMOR_DEFINE_ERROR(SingularPencil, NumericalError);
SOMOR_DEFINE_ERROR(SingularStepMatrix, NumericalError);
SOMOR_DEFINE_ERROR(ConvergenceFailure, NumericalError);
SOMOR_DEFINE_ERROR(IndefiniteMatrix, NumericalError);
SOMOR_DEFINE_ERROR(UnstablePencil, NumericalError);
SOMOR_DEFINE_ERROR(NumericalInconsistency, NumericalError);

#undef SOMOR_DEFINE_ERROR

}  // namespace somor
