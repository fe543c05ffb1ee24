#pragma once

#include "potapov/network.hpp"

namespace potapov::catalog {

/// Two-port network with three beamsplitters (r = 0.9, 0.4, 0.8) and delays
/// (0.1, 0.23, 0.1, 0.17). Its M1 is invertible.
[[nodiscard]] DelayNetwork example1();

/// Two-port interferometer/cavity hybrid (r = 0.9) with delays
/// (0.1, 0.039, 0.11, 0.08). Its M1 is singular.
[[nodiscard]] DelayNetwork example2();

/// Fabry-Perot cavity: two mirrors of reflectivity r separated by round_trip / 2
/// each way. Port 0 enters at the first mirror, port 1 at the second; output 0 is
/// the reflection and output 1 the transmission.
[[nodiscard]] DelayNetwork fabry_perot(double r, double round_trip);

/// Four delay nodes wired in sequence (nilpotent M1) on the through-path of port 0;
/// port 1 passes straight through. T(z) = diag(exp(-4 z t0), 1).
[[nodiscard]] DelayNetwork feedforward_chain(double t0);

}  // namespace potapov::catalog
