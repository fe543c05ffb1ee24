#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace potapov {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Matrix-valued function of the Laplace variable z = sigma + i omega.
using MatrixFunction = std::function<CMatrix(Complex)>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kI{0.0, 1.0};

[[nodiscard]] inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

[[nodiscard]] inline bool is_finite(const CMatrix& m) {
    return m.allFinite();
}

/// Largest singular value.
[[nodiscard]] double spectral_norm(const CMatrix& m);

/// Frobenius norm of M M^dagger - I.
[[nodiscard]] double unitarity_defect(const CMatrix& m);

/// Unitary factor W V^dagger of the polar decomposition of a square matrix.
[[nodiscard]] CMatrix polar_unitary(const CMatrix& m);

/// Largest eigenvalue modulus (0 for an empty matrix).
[[nodiscard]] double spectral_radius(const CMatrix& m);

/// Complex Schur decomposition m = u t u^H with t upper triangular.
struct SchurDecomposition {
    CMatrix u;
    CMatrix t;
};
[[nodiscard]] SchurDecomposition complex_schur(const CMatrix& m);

/// Eigenvalues of a square matrix, in no particular order.
[[nodiscard]] CVector eigenvalues(const CMatrix& m);

}  // namespace potapov
