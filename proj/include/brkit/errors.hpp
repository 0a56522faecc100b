#ifndef BRKIT_ERRORS_HPP
#define BRKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace brkit {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define BRKIT_DEFINE_ERROR(Name)                                              \
    struct Name : Error {                                                     \
        using Error::Error;                                                   \
    }

BRKIT_DEFINE_ERROR(UnsupportedCardinality);
BRKIT_DEFINE_ERROR(DivisionByZero);
BRKIT_DEFINE_ERROR(SingularBlock);
BRKIT_DEFINE_ERROR(IndexOutOfRange);
BRKIT_DEFINE_ERROR(KindMismatch);
BRKIT_DEFINE_ERROR(BudgetExceeded);
BRKIT_DEFINE_ERROR(NoAdaptedHyperplane);
BRKIT_DEFINE_ERROR(InvalidModel);
BRKIT_DEFINE_ERROR(InvalidParams);
BRKIT_DEFINE_ERROR(ThresholdNotMet);
BRKIT_DEFINE_ERROR(RankBoundViolated);
BRKIT_DEFINE_ERROR(UnsupportedField);
BRKIT_DEFINE_ERROR(DimensionTooSmall);
BRKIT_DEFINE_ERROR(AnnihilatorDegenerate);
BRKIT_DEFINE_ERROR(ConfigError);
BRKIT_DEFINE_ERROR(IoError);

#undef BRKIT_DEFINE_ERROR

} // namespace brkit

#endif
