#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace coa {

enum class ErrorKind {
    NotHermitian,
    NotPSD,
    BadTrace,
    BadShape,
    BadDimension,
    NotNormalized,
    NoConvergence,
    InvalidDistribution,
    InvalidEnsemble,
    NotUnitary,
    ZeroDiagonal,
    NotMixed,
    NoCoordinatePair,
    NotPurification,
    ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every library failure is reported through this type; `kind()` is stable
// for callers that branch on it, `what()` carries a single-line diagnostic.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail)
        : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace coa
