#pragma once

#include <stdexcept>
#include <string>

namespace pcrot {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept = 0;
};

#define PCROT_ERROR(Name)                                                  \
    struct Name : Error {                                                  \
        using Error::Error;                                                \
        const char* kind() const noexcept override { return #Name; }      \
    }

PCROT_ERROR(BoundaryAmbiguous);
PCROT_ERROR(PrecisionExhausted);
PCROT_ERROR(OutOfM);
PCROT_ERROR(InfeasibleGoal);
PCROT_ERROR(Inconclusive);
PCROT_ERROR(FixedPointRegion);
PCROT_ERROR(HypothesisViolated);
PCROT_ERROR(InsufficientLength);
PCROT_ERROR(OutOfRange);
PCROT_ERROR(OutOfDomain);

#undef PCROT_ERROR

}  // namespace pcrot
