#pragma once

#include <vector>

#include "potapov/network.hpp"
#include "potapov/potapov.hpp"

namespace potapov {

/// Diagonal [n, n] Pade approximant of exp(-T z), equal to Q_n(z T) / Q_n(-z T) with
/// Q_n(x) = sum_k (2n - k)! n! / ((2n)! k! (n - k)!) (-x)^k.
struct PadeApproximant {
    int order = 0;
    double delay = 0.0;
    /// Coefficients of Q_n, constant term first.
    std::vector<double> coefficients;
    /// Roots of Q_n; all have positive real part.
    std::vector<Complex> q_roots;

    [[nodiscard]] Complex value(Complex z) const;
    /// Poles -q_k / T of the approximant.
    [[nodiscard]] std::vector<Complex> poles() const;
};

/// Coefficients of Q_n from the closed form, constant term first.
[[nodiscard]] std::vector<double> pade_coefficients(int n);

/// Throws DomainError unless n >= 1 and T > 0.
[[nodiscard]] PadeApproximant pade_exp(int n, double delay);

/// The approximant as (-1)^n prod_k B_k(z) with scalar factors at the poles -q_k / T.
[[nodiscard]] PotapovProduct pade_as_product(const PadeApproximant& p);

/// n_k = max(1, round(n_base T_k / max T)). Throws DomainError for n_base < 1.
[[nodiscard]] std::vector<int> pade_orders(const DelayNetwork& net, int n_base);

/// The network transfer function with every exp(-z T_k) replaced by its [n_k, n_k]
/// approximant. Throws DomainError for orders below 1 or of the wrong length; the
/// returned function throws NearPole like eval_tf.
[[nodiscard]] MatrixFunction pade_network_tf(const DelayNetwork& net, const std::vector<int>& orders);

}  // namespace potapov
