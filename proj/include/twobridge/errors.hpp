#pragma once

#include <stdexcept>
#include <string>

namespace twobridge {

struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

#define TWOBRIDGE_ERROR(NAME)                                        \
    struct NAME : error {                                            \
        explicit NAME(const std::string& msg = #NAME) : error(msg) {} \
    }

TWOBRIDGE_ERROR(DegreeZero);
TWOBRIDGE_ERROR(NoConvergence);
TWOBRIDGE_ERROR(InexactDivision);
TWOBRIDGE_ERROR(NotUnimodular);
TWOBRIDGE_ERROR(IndexOutOfRange);
TWOBRIDGE_ERROR(ZeroParameter);
TWOBRIDGE_ERROR(ParameterTooLarge);
TWOBRIDGE_ERROR(SingularS);
TWOBRIDGE_ERROR(DegenerateDenominator);
TWOBRIDGE_ERROR(NotTriangular);
TWOBRIDGE_ERROR(ParabolicMeridian);
TWOBRIDGE_ERROR(MeridianTraceDegenerate);
TWOBRIDGE_ERROR(JacobianSingular);
// internal dual-path consistency assertions (not part of the public contract)
TWOBRIDGE_ERROR(InternalCheckFailed);

#undef TWOBRIDGE_ERROR

} // namespace twobridge
