#pragma once

#include <stdexcept>
#include <string>

namespace dtc {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define DTC_DEFINE_ERROR(Name)                                                  \
    class Name : public Error {                                                 \
    public:                                                                     \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {}    \
    }

DTC_DEFINE_ERROR(InvalidArgument);
DTC_DEFINE_ERROR(TotalMassZero);
DTC_DEFINE_ERROR(AmbientMismatch);
DTC_DEFINE_ERROR(OddParityRequired);
DTC_DEFINE_ERROR(EvenParityRequired);
DTC_DEFINE_ERROR(VertexCollision);
DTC_DEFINE_ERROR(EmptinessViolated);
DTC_DEFINE_ERROR(SupportBoundViolated);
DTC_DEFINE_ERROR(SectionPropertyViolated);
DTC_DEFINE_ERROR(InvalidDimension);

#undef DTC_DEFINE_ERROR

}  // namespace dtc
