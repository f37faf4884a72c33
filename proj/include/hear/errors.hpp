#pragma once

#include <stdexcept>
#include <string>

namespace hear {

// All library failures derive from Error so callers can catch one type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    // Short stable identifier, printed by the CLI.
    virtual const char* kind() const noexcept { return "Error"; }
};

#define HEAR_DEFINE_ERROR(Name)                                              \
    class Name : public Error {                                              \
    public:                                                                  \
        using Error::Error;                                                  \
        const char* kind() const noexcept override { return #Name; }         \
    };

HEAR_DEFINE_ERROR(TriangleInequalityViolated)
HEAR_DEFINE_ERROR(NonPositiveSide)
HEAR_DEFINE_ERROR(DomainError)
HEAR_DEFINE_ERROR(InfeasibleTarget)
HEAR_DEFINE_ERROR(NoConvergence)
HEAR_DEFINE_ERROR(InconsistentInvariants)
HEAR_DEFINE_ERROR(UnsupportedDomain)
HEAR_DEFINE_ERROR(NotEnoughInteriorNodes)
HEAR_DEFINE_ERROR(SolverDivergence)
HEAR_DEFINE_ERROR(MismatchedInputs)
HEAR_DEFINE_ERROR(IllConditionedWindow)
HEAR_DEFINE_ERROR(TailTooLarge)
HEAR_DEFINE_ERROR(NonPhysical)
HEAR_DEFINE_ERROR(WrongKind)
HEAR_DEFINE_ERROR(ParseError)

#undef HEAR_DEFINE_ERROR

} // namespace hear
