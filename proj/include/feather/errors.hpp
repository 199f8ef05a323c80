#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace feather {

// CLI exit-code category: 1 usage/config error, 2 data error, 3 numerical failure.
enum class ErrorCategory { Usage = 1, Data = 2, Numerical = 3 };

class Error : public std::runtime_error {
public:
    Error(std::string message, ErrorCategory category)
        : std::runtime_error(std::move(message)), category_(category) {}

    ErrorCategory category() const noexcept { return category_; }

private:
    ErrorCategory category_;
};

#define FEATHER_DEFINE_ERROR(NAME, CATEGORY)                         \
    class NAME : public Error {                                      \
    public:                                                          \
        explicit NAME(const std::string& message)                    \
            : Error(#NAME ": " + message, ErrorCategory::CATEGORY) {} \
    }

FEATHER_DEFINE_ERROR(InvalidWeight, Data);
FEATHER_DEFINE_ERROR(IndexOutOfRange, Data);
FEATHER_DEFINE_ERROR(TooDense, Data);
FEATHER_DEFINE_ERROR(InvalidPermutation, Data);
FEATHER_DEFINE_ERROR(InvalidDomain, Usage);
FEATHER_DEFINE_ERROR(ShapeMismatch, Data);
FEATHER_DEFINE_ERROR(OracleSizeExceeded, Data);
FEATHER_DEFINE_ERROR(EmptyEmbedding, Data);
FEATHER_DEFINE_ERROR(EmptyTrainSet, Data);
FEATHER_DEFINE_ERROR(DivergenceDetected, Numerical);
FEATHER_DEFINE_ERROR(FeatureCountMismatch, Data);
FEATHER_DEFINE_ERROR(IncompatibleCheckpoint, Data);
FEATHER_DEFINE_ERROR(EmptyInput, Data);
FEATHER_DEFINE_ERROR(ParseError, Data);
FEATHER_DEFINE_ERROR(ConfigError, Usage);

#undef FEATHER_DEFINE_ERROR

}  // namespace feather
