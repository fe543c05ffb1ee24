#pragma once

#include <vector>

#include "potapov/potapov.hpp"

namespace potapov {

/// Linear input-output model  da/dt = A a + B u,  y = C a + D u.
///
/// A physically realizable (passive) model has D unitary, A + A^H + C^H C = 0 and
/// B + C^H D = 0; then A = -C^H C / 2 - i Omega with Hermitian Omega.
struct StateSpace {
    CMatrix a;
    CMatrix b;
    CMatrix c;
    CMatrix d;

    [[nodiscard]] Eigen::Index modes() const { return a.rows(); }
    [[nodiscard]] Eigen::Index ports() const { return d.rows(); }
};

/// Static system with no modes and D = u.
[[nodiscard]] StateSpace static_statespace(const CMatrix& u);

/// One-mode realization A = [p], C = g v, B = -g v^H, D = I with g = sqrt(-2 Re p).
/// Throws DegeneratePole.
[[nodiscard]] StateSpace factor_to_statespace(const BlaschkeFactor& f);

/// Composite system feeding first's output into second: tf = tf2 * tf1. Throws PortMismatch.
[[nodiscard]] StateSpace cascade(const StateSpace& first, const StateSpace& second);

/// Cascade whose transfer function equals eval_product: B_M acts first, U last.
[[nodiscard]] StateSpace product_to_statespace(const PotapovProduct& prod);

/// C (zI - A)^{-1} B + D. Throws AtPole when zI - A is numerically singular.
[[nodiscard]] CMatrix tf_of_statespace(const StateSpace& ss, Complex z);

/// Frobenius-norm residuals of the realizability conditions.
struct RealizabilityReport {
    double d_unitary = 0.0;    ///< ||D D^H - I||
    double passivity = 0.0;    ///< ||A + A^H + C^H C||
    double coupling = 0.0;     ///< ||B + C^H D||
    double max_real_eig = 0.0; ///< largest Re of an eigenvalue of A (-inf without modes)
    bool pass = false;
};

[[nodiscard]] RealizabilityReport realizability_check(const StateSpace& ss, double tol = 1e-10);

/// Omega = (i/2)(A - A^H), Hermitian with A = -C^H C / 2 - i Omega.
/// Throws NotRealizable when ss fails realizability_check(ss, tol).
[[nodiscard]] CMatrix omega_of(const StateSpace& ss, double tol = 1e-10);

/// 1 / |max Re eig(A)|; throws DomainError for a system without modes.
[[nodiscard]] double decay_time(const StateSpace& ss);

/// Samples of a vector-valued signal on a strictly increasing time grid.
struct Signal {
    std::vector<double> t;
    std::vector<CVector> values;
};

/// n + 1 points 0, dt, ..., n dt.
[[nodiscard]] std::vector<double> uniform_time_grid(double t_end, int steps);

/// u(t) = u for every sample.
[[nodiscard]] Signal constant_drive(const std::vector<double>& t, const CVector& u);

/// u(t) = u exp(i omega t).
[[nodiscard]] Signal sinusoidal_drive(const std::vector<double>& t, const CVector& u, double omega);

/// Exact exponential stepping with the input interpolated linearly between samples,
/// so piecewise-linear inputs are integrated without error; output y_k = C a_k + D u_k.
/// When states is non-null it receives a_k for every sample.
/// Throws NonuniformGrid; DomainError on shape mismatches.
[[nodiscard]] Signal simulate(const StateSpace& ss, const Signal& input, const CVector& a0,
                              std::vector<CVector>* states = nullptr);

}  // namespace potapov
