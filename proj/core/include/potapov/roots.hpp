#pragma once

#include <functional>
#include <string>
#include <vector>

#include "potapov/network.hpp"

namespace potapov {

/// Axis-aligned rectangle in the s-plane.
struct ContourRegion {
    double re_min = 0.0;
    double re_max = 0.0;
    double im_min = 0.0;
    double im_max = 0.0;

    /// Throws DomainError unless re_min < re_max and im_min < im_max.
    void validate() const;
    [[nodiscard]] bool contains(Complex z) const;
    [[nodiscard]] Complex center() const {
        return {0.5 * (re_min + re_max), 0.5 * (im_min + im_max)};
    }
};

struct Root {
    Complex location;
    double residual = 0.0;
};

/// Roots sorted by (Im, Re) ascending.
struct RootSet {
    ContourRegion region;
    std::vector<Root> roots;
    std::vector<std::string> warnings;

    [[nodiscard]] std::size_t size() const { return roots.size(); }
    [[nodiscard]] std::vector<Complex> locations() const;
};

struct AnalyticSample {
    Complex value;
    Complex derivative;
    /// Magnitude of value's terms; roots are accepted when |value| / scale < eps_residual.
    double scale = 1.0;
};

/// An analytic function evaluated together with its derivative.
using AnalyticFunction = std::function<AnalyticSample(Complex)>;

struct ZeroSearchOptions {
    int max_per_cell = 5;
    /// Gauss-Legendre order of each contour panel.
    int quad_points = 16;
    /// Cap on f evaluations per contour; exceeding it raises ContourThroughZero.
    int max_quad_points = 1 << 17;
    /// Absolute accuracy of the normalized moments under adaptive panel refinement.
    double moment_tol = 1e-10;
    /// Distance of the zeroth moment from an integer that is still accepted.
    double integer_tol = 0.01;
    double eps_residual = 1e-10;
    int max_newton = 100;
    int max_depth = 48;
    /// Roots closer than this are flagged as a possible multiple root.
    double multiplicity_radius = 1e-7;
};

/// Number of zeros inside the region, (1 / 2 pi i) \oint f'/f dz.
/// Throws ContourThroughZero when the quadrature does not settle on an integer.
[[nodiscard]] int count_zeros(const AnalyticFunction& f, const ContourRegion& region,
                              const ZeroSearchOptions& opts = {});

/// All zeros inside the region via moment recovery with recursive bisection and
/// Newton polishing.
[[nodiscard]] RootSet find_zeros(const AnalyticFunction& f, const ContourRegion& region,
                                 const ZeroSearchOptions& opts = {});

/// Zeros of det(I - M1 E(z)). Residuals are |det| / prod_k max(1, |exp(-z T_k)|), the determinant
/// after equilibrating the columns of I - M1 E. Throws UnstablePoleFound for any root with Re >= 0.
[[nodiscard]] RootSet find_poles(const DelayNetwork& net, const ContourRegion& region,
                                 const ZeroSearchOptions& opts = {});

/// Transfer-function zeros paired with the poles, z -> -conj(z). Residuals are zero.
[[nodiscard]] RootSet zeros_from_poles(const RootSet& poles);

/// As above with residuals |det T(z)| recomputed on the network.
[[nodiscard]] RootSet zeros_from_poles(const RootSet& poles, const DelayNetwork& net);

/// Poles of a network whose delays are integer multiples of t0, obtained from
/// the polynomial det(I - M1 diag(w^{k_i})) in w = exp(-z t0).
[[nodiscard]] RootSet commensurate_poles(const DelayNetwork& net, double t0,
                                         const ContourRegion& region);

/// Integer multiples k_i with delays[i] = k_i t0 within rel_tol, or NotCommensurate.
[[nodiscard]] std::vector<long> commensurate_multiples(const DelayNetwork& net, double t0,
                                                       double rel_tol = 1e-9);

/// Strip for pole searches: Re from min(2 ln rho(M1) / max_delay, ln sigma_min(M1) / min_delay)
/// (with 5% margin) to 0. The second term is a rigorous bound for invertible M1; for singular
/// M1 it is replaced by ln(1e-3) / min_delay.
[[nodiscard]] ContourRegion default_pole_strip(const DelayNetwork& net, double im_min, double im_max);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
[[nodiscard]] const GaussLegendreRule& gauss_legendre(int points);

}  // namespace potapov
