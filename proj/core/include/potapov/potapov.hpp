#pragma once

#include <vector>

#include "potapov/network.hpp"
#include "potapov/roots.hpp"

namespace potapov {

/// Rank-one Blaschke-Potapov factor B(z) = I - v v^H + v v^H (z + conj(p)) / (z - p).
///
/// B is unitary on the imaginary axis, contractive in the right half-plane, has its
/// pole at p and its (rank-one) zero at -conj(p).
struct BlaschkeFactor {
    Complex pole;
    CVector v;

    /// Validates Re(pole) < 0 and normalizes v; throws DegeneratePole / DomainError.
    BlaschkeFactor(Complex pole, CVector v);

    [[nodiscard]] Eigen::Index dimension() const { return v.size(); }
    /// Throws AtPole at z = pole.
    [[nodiscard]] CMatrix value(Complex z) const;
    /// B(z)^{-1} = I - v v^H + v v^H (z - p) / (z + conj(p)); throws AtPole at -conj(p).
    [[nodiscard]] CMatrix inverse_value(Complex z) const;
};

/// Truncated product U B_1(z) B_2(z) ... B_M(z).
struct PotapovProduct {
    CMatrix u;
    std::vector<BlaschkeFactor> factors;

    [[nodiscard]] Eigen::Index port_count() const { return u.rows(); }
};

struct PotapovTolerances {
    static constexpr double rank_gap = 1e-6;
    static constexpr double residue_agreement = 1e-10;
    static constexpr double unitary = 1e-10;
};

/// L = lim_{z->p} T(z)(z - p) from the trapezoid rule on |z - p| = rho, halving rho
/// until two radii agree. Throws NotIsolated otherwise.
[[nodiscard]] CMatrix residue_at(const MatrixFunction& t, Complex p, double rho);

struct FactorExtraction {
    BlaschkeFactor factor;
    /// T(z) B(z)^{-1}, analytic at the extracted pole.
    MatrixFunction deflated;
};

/// Extract the factor at the simple pole p from the residue's row space.
/// Throws DegeneratePole, ZeroResidue or RankTooHigh.
[[nodiscard]] FactorExtraction extract_factor(const MatrixFunction& t, Complex p, double rho);

/// Default residue radius: min(0.25 * distance to the nearest other pole, 0.1).
[[nodiscard]] double default_residue_radius(Complex p, const std::vector<Complex>& others);

/// Sequential zero-pole interpolation. Factors are extracted in order of |Im p|
/// (ties by Im ascending); U is the unitary polar factor of T(z0) B(z0)^{-1}.
[[nodiscard]] PotapovProduct interpolate(const MatrixFunction& t, const RootSet& poles,
                                         Complex z0 = Complex(0.0));

/// U B_1(z) ... B_M(z). Throws AtPole.
[[nodiscard]] CMatrix eval_product(const PotapovProduct& prod, Complex z);

[[nodiscard]] MatrixFunction product_function(const PotapovProduct& prod);

/// Uniform grid omega_k on [-omega_max, omega_max] with grid_points >= 2 samples.
[[nodiscard]] std::vector<double> omega_grid(double omega_max, int grid_points);

/// max_k || a(i omega_k) - b(i omega_k) ||_2 over the uniform grid.
[[nodiscard]] double sup_error(const MatrixFunction& a, const MatrixFunction& b, double omega_max,
                               int grid_points);

/// sup_error between an exact transfer function and a Potapov product.
[[nodiscard]] double approximation_error(const MatrixFunction& t, const PotapovProduct& prod,
                                         double omega_max, int grid_points);

/// max_k |arg a_ij(i omega_k) - arg b_ij(i omega_k)| wrapped to [0, pi]. Grid points where
/// the reference entry a_ij is below 1e-6 in modulus are skipped.
[[nodiscard]] double entry_phase_error(const MatrixFunction& a, const MatrixFunction& b, Eigen::Index row,
                                       Eigen::Index col, double omega_max, int grid_points);

/// True iff M1 is numerically full rank; a sufficient condition for a trivial singular term.
[[nodiscard]] bool singular_is_trivial(const DelayNetwork& net);

struct SingularBound {
    /// Upper bound on the length of the multiplicative integral (sum of delays).
    double ell = 0.0;
    double negligible_radius = 0.0;

    /// |z| < 0.1 / ell.
    [[nodiscard]] bool negligible_at(Complex z) const;
};

[[nodiscard]] SingularBound singular_bound(const DelayNetwork& net);

/// Right half-plane to unit disc, (z - 1) / (z + 1). Throws PoleOfMap at z = -1.
[[nodiscard]] Complex cayley_to_disc(Complex z);
/// Unit disc to right half-plane, (1 + w) / (1 - w). Throws PoleOfMap at w = 1.
[[nodiscard]] Complex cayley_from_disc(Complex w);

}  // namespace potapov
