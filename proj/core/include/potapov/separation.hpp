#pragma once

#include <vector>

#include "potapov/network.hpp"

namespace potapov {

/// One feedforward stage: gain diag(exp(-z delays)) gain^H with a unitary gain.
struct FeedforwardStage {
    CMatrix gain;
    std::vector<double> delays;
};

/// Stages listed input to output; the chain evaluates to F_m(z) ... F_1(z).
struct FeedforwardChain {
    Eigen::Index ports = 0;
    std::vector<FeedforwardStage> stages;

    [[nodiscard]] bool empty() const { return stages.empty(); }
    /// Sum over stages of the largest stage delay.
    [[nodiscard]] double total_delay() const;
};

/// Entire inner function of the chain; the identity for an empty chain.
[[nodiscard]] CMatrix eval_feedforward(const FeedforwardChain& ff, Complex z);

/// Original T(z) = core T(z) * feedforward(z).
struct SeparationResult {
    FeedforwardChain feedforward;
    DelayNetwork core;
};

/// Replaces every delay k t0 by k unit delays of length t0 linked by identity couplings.
/// Throws NotCommensurate.
[[nodiscard]] DelayNetwork to_commensurate(const DelayNetwork& net, double t0);

/// Peels zero eigenvalues off M1 one at a time by unitary kernel deflation until M1 is
/// invertible. Each pass removes one internal node and emits one stage. Requires equal
/// delays (NotEqualDelays); throws DeflationStall if a pass cannot shrink the network.
[[nodiscard]] SeparationResult separate(const DelayNetwork& net);

struct RationalizedNetwork {
    DelayNetwork network;
    double t0 = 0.0;
    /// Largest |rounded - original| over the delays.
    double max_shift = 0.0;
};

/// Rounds every delay to a multiple of grid and picks t0 as their greatest common divisor.
/// Throws DomainError if a delay rounds to zero.
[[nodiscard]] RationalizedNetwork rationalize_delays(const DelayNetwork& net, double grid = 1e-3);

}  // namespace potapov
