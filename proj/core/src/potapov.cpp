#include "potapov/potapov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/SVD>

#include "potapov/parallel.hpp"

namespace potapov {

BlaschkeFactor::BlaschkeFactor(Complex pole_, CVector v_) : pole(pole_), v(std::move(v_)) {
    if (!is_finite(pole) || !(pole.real() < 0.0)) {
        std::ostringstream os;
        os << "factor pole " << pole << " must lie in the open left half-plane";
        throw Error(ErrorKind::DegeneratePole, os.str());
    }
    const double norm = v.norm();
    if (v.size() == 0 || !(norm > 0.0) || !v.allFinite()) {
        throw Error(ErrorKind::DomainError, "factor direction must be a nonzero finite vector");
    }
    v /= norm;
}

CMatrix BlaschkeFactor::value(Complex z) const {
    const Complex denom = z - pole;
    if (std::abs(denom) <= 1e-14 * (1.0 + std::abs(pole))) {
        throw Error(ErrorKind::AtPole, "evaluation at a factor pole");
    }
    const Complex scale = (pole + std::conj(pole)) / denom;
    CMatrix out = CMatrix::Identity(v.size(), v.size());
    out.noalias() += scale * (v * v.adjoint());
    return out;
}

CMatrix BlaschkeFactor::inverse_value(Complex z) const {
    const Complex denom = z + std::conj(pole);
    if (std::abs(denom) <= 1e-14 * (1.0 + std::abs(pole))) {
        throw Error(ErrorKind::AtPole, "evaluation of the inverse factor at its pole");
    }
    // (z - p) / (z + conj p) - 1 = -(p + conj p) / (z + conj p)
    const Complex scale = -(pole + std::conj(pole)) / denom;
    CMatrix out = CMatrix::Identity(v.size(), v.size());
    out.noalias() += scale * (v * v.adjoint());
    return out;
}

namespace {

CMatrix trapezoid_residue(const MatrixFunction& t, Complex p, double rho, int points) {
    CMatrix acc;
    for (int k = 0; k < points; ++k) {
        const Complex w = std::polar(1.0, 2.0 * kPi * k / points);
        const CMatrix value = t(p + rho * w);
        if (k == 0) {
            acc = CMatrix::Zero(value.rows(), value.cols());
        }
        acc += value * w;
    }
    return acc * (rho / points);
}

/// Trapezoid estimate at fixed radius, doubling the node count until it settles.
CMatrix residue_at_radius(const MatrixFunction& t, Complex p, double rho) {
    int points = 32;
    CMatrix prev = trapezoid_residue(t, p, rho, points);
    while (points < 4096) {
        points *= 2;
        CMatrix cur = trapezoid_residue(t, p, rho, points);
        const double diff = (cur - prev).norm();
        // Function noise near the pole floors the achievable agreement around 1e-13.
        if (diff <= 1e-12 * std::max(1.0, cur.norm())) {
            return cur;
        }
        prev = std::move(cur);
    }
    throw Error(ErrorKind::NotIsolated, "trapezoid rule did not converge on the residue circle");
}

}  // namespace

CMatrix residue_at(const MatrixFunction& t, Complex p, double rho) {
    if (!(rho > 0.0) || !std::isfinite(rho)) {
        throw Error(ErrorKind::DomainError, "residue radius must be positive");
    }
    try {
        CMatrix prev = residue_at_radius(t, p, rho);
        for (int halving = 0; halving < 8; ++halving) {
            rho *= 0.5;
            CMatrix cur = residue_at_radius(t, p, rho);
            if ((cur - prev).norm() <= PotapovTolerances::residue_agreement * std::max(1.0, cur.norm())) {
                return cur;
            }
            prev = std::move(cur);
        }
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::NearPole || e.kind() == ErrorKind::AtPole) {
            throw Error(ErrorKind::NotIsolated, std::string("residue circle meets a singularity: ") + e.what());
        }
        throw;
    }
    std::ostringstream os;
    os << "residue estimates at " << p << " did not stabilize under radius halving";
    throw Error(ErrorKind::NotIsolated, os.str());
}

FactorExtraction extract_factor(const MatrixFunction& t, Complex p, double rho) {
    if (!(p.real() < 0.0)) {
        std::ostringstream os;
        os << "pole " << p << " is not in the open left half-plane";
        throw Error(ErrorKind::DegeneratePole, os.str());
    }
    const CMatrix residue = residue_at(t, p, rho);
    Eigen::JacobiSVD<CMatrix> svd(residue, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (!(sv(0) > 1e-12)) {
        std::ostringstream os;
        os << "residue at " << p << " vanishes; not a pole of the function";
        throw Error(ErrorKind::ZeroResidue, os.str());
    }
    if (sv.size() > 1 && sv(1) / sv(0) >= PotapovTolerances::rank_gap) {
        std::ostringstream os;
        os << "residue at " << p << " has rank above one (sigma2/sigma1 = " << sv(1) / sv(0) << ")";
        throw Error(ErrorKind::RankTooHigh, os.str());
    }
    // The residue equals (p + conj p) T~(p) v v^H, so v spans its row space.
    CVector v = svd.matrixV().col(0);
    Eigen::Index largest = 0;
    v.cwiseAbs().maxCoeff(&largest);
    v *= std::polar(1.0, -std::arg(v(largest)));
    BlaschkeFactor factor(p, v);
    MatrixFunction deflated = [t, factor](Complex z) { return CMatrix(t(z) * factor.inverse_value(z)); };
    return {std::move(factor), std::move(deflated)};
}

double default_residue_radius(Complex p, const std::vector<Complex>& others) {
    double nearest = std::numeric_limits<double>::infinity();
    for (Complex q : others) {
        const double d = std::abs(q - p);
        if (d > 0.0) {
            nearest = std::min(nearest, d);
        }
    }
    return std::min(0.25 * nearest, 0.1);
}

PotapovProduct interpolate(const MatrixFunction& t, const RootSet& poles, Complex z0) {
    std::vector<Complex> order = poles.locations();
    std::stable_sort(order.begin(), order.end(), [](Complex a, Complex b) {
        if (std::abs(a.imag()) != std::abs(b.imag())) {
            return std::abs(a.imag()) < std::abs(b.imag());
        }
        return a.imag() < b.imag();
    });
    for (Complex p : order) {
        if (!(p.real() < 0.0)) {
            std::ostringstream os;
            os << "pole " << p << " is not in the open left half-plane";
            throw Error(ErrorKind::DegeneratePole, os.str());
        }
    }

    std::vector<BlaschkeFactor> extracted;
    extracted.reserve(order.size());
    auto deflated = [&](Complex z) {
        CMatrix m = t(z);
        for (const BlaschkeFactor& f : extracted) {
            m = m * f.inverse_value(z);
        }
        return m;
    };
    for (Complex p : order) {
        const double rho = default_residue_radius(p, order);
        FactorExtraction step = extract_factor(deflated, p, rho);
        extracted.push_back(std::move(step.factor));
    }

    PotapovProduct prod;
    prod.u = polar_unitary(deflated(z0));
    // T = T_M B_M ... B_1 for extraction order B_1, B_2, ...
    prod.factors.assign(extracted.rbegin(), extracted.rend());
    return prod;
}

CMatrix eval_product(const PotapovProduct& prod, Complex z) {
    CMatrix out = prod.u;
    for (const BlaschkeFactor& f : prod.factors) {
        out = out * f.value(z);
    }
    return out;
}

MatrixFunction product_function(const PotapovProduct& prod) {
    return [prod](Complex z) { return eval_product(prod, z); };
}

std::vector<double> omega_grid(double omega_max, int grid_points) {
    if (grid_points < 2 || !(omega_max >= 0.0)) {
        throw Error(ErrorKind::DomainError, "frequency grid needs omega_max >= 0 and at least two points");
    }
    std::vector<double> grid(static_cast<std::size_t>(grid_points));
    for (int k = 0; k < grid_points; ++k) {
        grid[static_cast<std::size_t>(k)] = -omega_max + 2.0 * omega_max * k / (grid_points - 1);
    }
    return grid;
}

double sup_error(const MatrixFunction& a, const MatrixFunction& b, double omega_max, int grid_points) {
    const std::vector<double> grid = omega_grid(omega_max, grid_points);
    std::vector<double> errors(grid.size());
    parallel_for(grid.size(), [&](std::size_t k) {
        const Complex z(0.0, grid[k]);
        errors[k] = spectral_norm(a(z) - b(z));
    });
    return *std::max_element(errors.begin(), errors.end());
}

double approximation_error(const MatrixFunction& t, const PotapovProduct& prod, double omega_max,
                           int grid_points) {
    return sup_error(t, product_function(prod), omega_max, grid_points);
}

namespace {
/// Reference entries smaller than this carry no meaningful phase.
constexpr double kPhaseFloor = 1e-6;
}  // namespace

double entry_phase_error(const MatrixFunction& a, const MatrixFunction& b, Eigen::Index row, Eigen::Index col,
                         double omega_max, int grid_points) {
    const std::vector<double> grid = omega_grid(omega_max, grid_points);
    std::vector<double> errors(grid.size());
    parallel_for(grid.size(), [&](std::size_t k) {
        const Complex z(0.0, grid[k]);
        const Complex x = a(z)(row, col);
        const Complex y = b(z)(row, col);
        errors[k] = std::abs(x) < kPhaseFloor ? 0.0 : std::abs(std::arg(x * std::conj(y)));
    });
    return *std::max_element(errors.begin(), errors.end());
}

bool singular_is_trivial(const DelayNetwork& net) {
    return relative_min_singular_value(net.m1()) > NetworkTolerances::eps_rank;
}

bool SingularBound::negligible_at(Complex z) const {
    return std::abs(z) < 0.1 * negligible_radius;
}

SingularBound singular_bound(const DelayNetwork& net) {
    SingularBound b;
    b.ell = net.total_delay();
    b.negligible_radius = b.ell > 0.0 ? 1.0 / b.ell : std::numeric_limits<double>::infinity();
    return b;
}

Complex cayley_to_disc(Complex z) {
    if (std::abs(z + 1.0) < 1e-15) {
        throw Error(ErrorKind::PoleOfMap, "z = -1 has no image in the disc");
    }
    return (z - 1.0) / (z + 1.0);
}

Complex cayley_from_disc(Complex w) {
    if (std::abs(1.0 - w) < 1e-15) {
        throw Error(ErrorKind::PoleOfMap, "w = 1 has no image in the half-plane");
    }
    return (1.0 + w) / (1.0 - w);
}

}  // namespace potapov
