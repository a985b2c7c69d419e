#pragma once

#include <stdexcept>
#include <string>

namespace repot {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

#define REPOT_DEFINE_ERROR(Name)             \
    class Name : public Error {              \
      public:                                \
        using Error::Error;                  \
    }

REPOT_DEFINE_ERROR(SchemaError);
REPOT_DEFINE_ERROR(ValidationError);
REPOT_DEFINE_ERROR(DimensionMismatch);
REPOT_DEFINE_ERROR(InstanceTooLarge);
REPOT_DEFINE_ERROR(NotUnimodal);
REPOT_DEFINE_ERROR(NotLogConcave);
REPOT_DEFINE_ERROR(AssumptionViolated);
REPOT_DEFINE_ERROR(QuadratureNotConverged);
REPOT_DEFINE_ERROR(OutOfRange);
REPOT_DEFINE_ERROR(OriginInput);
REPOT_DEFINE_ERROR(WeightTooLarge);
REPOT_DEFINE_ERROR(RejectionBudgetExceeded);

#undef REPOT_DEFINE_ERROR

} // namespace repot
