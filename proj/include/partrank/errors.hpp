#pragma once

#include <stdexcept>
#include <string>

namespace partrank {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularMatrix : Error {
    using Error::Error;
};
struct SingularBlock : Error {
    using Error::Error;
};
struct IndexOutOfRange : Error {
    using Error::Error;
};
struct FieldMismatch : Error {
    using Error::Error;
};
struct UnsupportedField : Error {
    using Error::Error;
};

/// A configured search/evaluation budget was exhausted. The result is
/// "unknown", never a wrong answer.
struct BudgetExceeded : Error {
    using Error::Error;
};
struct SizeCapExceeded : Error {
    using Error::Error;
};

struct NotWeightHomogeneous : Error {
    using Error::Error;
};
struct WeightTooLow : Error {
    using Error::Error;
};
struct BadCharacteristic : Error {
    using Error::Error;
};
struct DimensionSumTooLarge : Error {
    using Error::Error;
};
struct ZeroTensor : Error {
    using Error::Error;
};
struct NonSliceTerm : Error {
    using Error::Error;
};
struct HypothesisViolated : Error {
    using Error::Error;
};
struct ChainEvaluationZero : Error {
    using Error::Error;
};
struct NoWitnessFound : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};

} // namespace partrank
