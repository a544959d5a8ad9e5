#pragma once

#include <stdexcept>
#include <string>

namespace covtop {

/// Base of all library errors. `code()` is stable and maps 1:1 onto CLI
/// exit codes.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

#define COVTOP_ERROR(Name)                                               \
    class Name : public Error {                                          \
    public:                                                              \
        explicit Name(const std::string& what) : Error(#Name, what) {}   \
    }

COVTOP_ERROR(MixedDimension);
COVTOP_ERROR(DuplicateFacet);
COVTOP_ERROR(DegenerateFacet);
COVTOP_ERROR(NotPseudomanifold);
COVTOP_ERROR(NotStronglyConnected);
COVTOP_ERROR(NonOrientable);
COVTOP_ERROR(HasBoundary);
COVTOP_ERROR(EmptyBoundary);
COVTOP_ERROR(SizeLimit);
COVTOP_ERROR(LabelOutOfRange);
COVTOP_ERROR(NotSubordinate);
COVTOP_ERROR(MissingVertex);
COVTOP_ERROR(NotClosed);
COVTOP_ERROR(ImageNotInBoundary);
COVTOP_ERROR(GenericityExhausted);
COVTOP_ERROR(NoRealization);
COVTOP_ERROR(PoleOnCurve);
COVTOP_ERROR(CurvesIntersect);
COVTOP_ERROR(NotSperner);
COVTOP_ERROR(BudgetExceeded);
COVTOP_ERROR(CoveringSimplexInInput);
COVTOP_ERROR(DimensionMismatch);
COVTOP_ERROR(ParseError);
COVTOP_ERROR(ValidationError);
COVTOP_ERROR(UnknownCommand);

#undef COVTOP_ERROR

}  // namespace covtop
