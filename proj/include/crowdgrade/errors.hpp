#pragma once

#include <stdexcept>
#include <string>

namespace crowdgrade {

// Base of every error the library raises. Callers that only need a message
// can catch this; the CLI maps it to a nonzero exit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define CROWDGRADE_ERROR(Name)                 \
    class Name : public Error {                \
    public:                                    \
        using Error::Error;                    \
    }

CROWDGRADE_ERROR(IoError);
CROWDGRADE_ERROR(MalformedInput);
CROWDGRADE_ERROR(UnknownFormat);
CROWDGRADE_ERROR(WeightOutOfRange);
CROWDGRADE_ERROR(EmptyLexicon);
CROWDGRADE_ERROR(LexiconConflict);
CROWDGRADE_ERROR(ModelMissing);
CROWDGRADE_ERROR(UnknownAnswer);
CROWDGRADE_ERROR(AllDefault);
CROWDGRADE_ERROR(UnknownWork);
CROWDGRADE_ERROR(InvalidArgument);
CROWDGRADE_ERROR(DegenerateInput);
CROWDGRADE_ERROR(MismatchedWorks);
CROWDGRADE_ERROR(Conflict);
CROWDGRADE_ERROR(NotFound);

#undef CROWDGRADE_ERROR

}  // namespace crowdgrade
