#pragma once

#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "potapov/errors.hpp"
#include "potapov/types.hpp"

namespace potapov {

/// Numerical thresholds shared by the network routines.
struct NetworkTolerances {
    static constexpr double unitary = 1e-9;
    static constexpr double cond_max = 1e12;
    static constexpr double eps_root = 1e-12;
    /// Relative to the largest singular value.
    static constexpr double eps_rank = 1e-10;
};

/// Complex Schur form M1 = Z S Z^H with the port couplings rotated into the same basis.
struct SchurForm {
    CMatrix s;
    CMatrix m2z;  ///< Z^H M2
    CMatrix m3z;  ///< M3 Z
};

/// A passive network of beamsplitters and delays.
///
/// The internal signals x (taken before each delay) and the ports obey
///
///     x     = M1 E(z) x + M2 x_in
///     x_out = M3 E(z) x + M4 x_in,      E(z) = diag(exp(-z T_k)).
///
/// The stacked scattering matrix [[M1, M2], [M3, M4]] must be unitary, M1 must have
/// spectral radius below one and every delay must be positive. A network with zero
/// internal nodes is a static unitary M4. Instances are immutable.
class DelayNetwork {
public:
    DelayNetwork(CMatrix m1, CMatrix m2, CMatrix m3, CMatrix m4, std::vector<double> delays);

    [[nodiscard]] Eigen::Index internal_size() const { return m1_.rows(); }
    [[nodiscard]] Eigen::Index port_count() const { return m4_.rows(); }

    [[nodiscard]] const CMatrix& m1() const { return m1_; }
    [[nodiscard]] const CMatrix& m2() const { return m2_; }
    [[nodiscard]] const CMatrix& m3() const { return m3_; }
    [[nodiscard]] const CMatrix& m4() const { return m4_; }
    [[nodiscard]] const std::vector<double>& delays() const { return delays_; }

    /// The full (n+N)x(n+N) scattering matrix.
    [[nodiscard]] CMatrix stacked() const;

    [[nodiscard]] double total_delay() const;
    [[nodiscard]] double max_delay() const;
    [[nodiscard]] bool has_equal_delays(double rel_tol = 1e-12) const;

    /// diag(exp(-z T_k)).
    [[nodiscard]] CVector delay_diagonal(Complex z) const;

    /// Schur data for large networks with equal delays, where E(z) is scalar and
    /// I - M1 E(z) becomes triangular; null otherwise.
    [[nodiscard]] const SchurForm* schur_form() const { return schur_.get(); }

    /// Networks at least this large with equal delays carry a Schur form.
    static constexpr Eigen::Index kSchurThreshold = 24;

private:
    CMatrix m1_;
    CMatrix m2_;
    CMatrix m3_;
    CMatrix m4_;
    std::vector<double> delays_;
    std::shared_ptr<const SchurForm> schur_;
};

/// Parse the JSON network document
/// {"n", "ports", "m1".."m4" as nested [re, im] arrays, "delays"}.
[[nodiscard]] DelayNetwork parse_network(std::string_view text);

/// Single-beamsplitter cavity with reflectivity r and loop delay tau:
/// T(z) = (exp(-tau z) - r) / (1 - r exp(-tau z)).
[[nodiscard]] DelayNetwork build_cavity(double r, double tau);

/// T(z) = M3 E(z) (I - M1 E(z))^{-1} M2 + M4.
/// Throws NearPole when I - M1 E(z) is numerically singular.
[[nodiscard]] CMatrix eval_tf(const DelayNetwork& net, Complex z);

/// The same transfer function written as M3 (E(-z) - M1)^{-1} M2 + M4.
[[nodiscard]] CMatrix eval_tf_inverse_form(const DelayNetwork& net, Complex z);

/// Convenience wrapper capturing a copy of the network.
[[nodiscard]] MatrixFunction transfer_function(const DelayNetwork& net);

struct PoleFunctionValue {
    Complex value;
    Complex log_derivative;
};

/// det(I - M1 E(z)) together with its analytic derivative. Never throws.
struct DeterminantSample {
    Complex value;
    Complex derivative;
};
[[nodiscard]] DeterminantSample pole_determinant(const DelayNetwork& net, Complex z);

/// f(z) = det(I - M1 E(z)) and f'/f = tr((I - M1 E)^{-1} M1 diag(T_k exp(-z T_k))).
/// Throws AtRoot when |f| falls below eps_root.
[[nodiscard]] PoleFunctionValue pole_function(const DelayNetwork& net, Complex z);

/// lim T(z) as Re z -> -infinity, i.e. M4 - M3 M1^{-1} M2 when M1 is invertible;
/// nullopt marks divergence (singular M1).
[[nodiscard]] std::optional<CMatrix> limit_neg_infinity(const DelayNetwork& net);

/// Smallest singular value of M1 relative to the largest (1 when M1 is empty).
[[nodiscard]] double relative_min_singular_value(const CMatrix& m);

}  // namespace potapov
