#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace potapov {

enum class ErrorKind {
    MalformedInput,
    NotUnitary,
    Unstable,
    NonpositiveDelay,
    DomainError,
    NearPole,
    AtRoot,
    ContourThroughZero,
    NoConvergence,
    CountMismatch,
    UnstablePoleFound,
    NotCommensurate,
    DegenerateLeadingCoefficient,
    NotIsolated,
    ZeroResidue,
    RankTooHigh,
    DegeneratePole,
    AtPole,
    PoleOfMap,
    NotEqualDelays,
    DeflationStall,
    NotRealizable,
    PortMismatch,
    NonuniformGrid,
};

[[nodiscard]] std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace potapov
