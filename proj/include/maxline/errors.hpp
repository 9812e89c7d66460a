#pragma once

#include <stdexcept>
#include <string>

namespace maxline {

// One exception type per failure mode so callers can map them to exit codes
// without matching on message text.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error { using Error::Error; };
struct BadTopology : Error { using Error::Error; };
struct BadOccupancy : Error { using Error::Error; };
struct InfeasiblePlacement : Error { using Error::Error; };
struct CyclicZeroDelay : Error { using Error::Error; };
struct NoCycle : Error { using Error::Error; };
struct ZeroDurationCycle : Error { using Error::Error; };
struct NegativeDelayResidue : Error { using Error::Error; };
struct NotIrreducible : Error { using Error::Error; };
struct InsufficientHorizon : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

} // namespace maxline
