#include "potapov/pade.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/LU>

namespace potapov {

namespace {

Complex horner(const std::vector<double>& coeffs, Complex x) {
    Complex acc(0.0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

}  // namespace

Complex PadeApproximant::value(Complex z) const {
    const Complex x = z * delay;
    return horner(coefficients, x) / horner(coefficients, -x);
}

std::vector<Complex> PadeApproximant::poles() const {
    std::vector<Complex> out;
    out.reserve(q_roots.size());
    for (Complex q : q_roots) {
        out.push_back(-q / delay);
    }
    return out;
}

std::vector<double> pade_coefficients(int n) {
    if (n < 1) {
        throw Error(ErrorKind::DomainError, "Pade order must be at least 1");
    }
    // c_k = (2n - k)! n! / ((2n)! k! (n - k)!), built from c_0 = 1 by the ratio of consecutive terms.
    std::vector<double> c(static_cast<std::size_t>(n) + 1);
    c[0] = 1.0;
    for (int k = 1; k <= n; ++k) {
        const double ratio = static_cast<double>(n - k + 1) / (static_cast<double>(k) * (2.0 * n - k + 1));
        c[static_cast<std::size_t>(k)] = c[static_cast<std::size_t>(k - 1)] * ratio;
    }
    for (int k = 1; k <= n; k += 2) {
        c[static_cast<std::size_t>(k)] = -c[static_cast<std::size_t>(k)];
    }
    return c;
}

PadeApproximant pade_exp(int n, double delay) {
    if (n < 1) {
        throw Error(ErrorKind::DomainError, "Pade order must be at least 1");
    }
    if (!(delay > 0.0) || !std::isfinite(delay)) {
        throw Error(ErrorKind::DomainError, "Pade delay must be positive");
    }
    PadeApproximant p;
    p.order = n;
    p.delay = delay;
    p.coefficients = pade_coefficients(n);
    const double lead = p.coefficients.back();
    CMatrix companion = CMatrix::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        companion(0, k) = -p.coefficients[static_cast<std::size_t>(n - 1 - k)] / lead;
    }
    for (int i = 1; i < n; ++i) {
        companion(i, i - 1) = 1.0;
    }
    const CVector ev = eigenvalues(companion);
    std::vector<double> derivative(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) {
        derivative[static_cast<std::size_t>(k - 1)] = k * p.coefficients[static_cast<std::size_t>(k)];
    }
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        Complex x = ev(i);
        for (int iter = 0; iter < 8; ++iter) {
            const Complex step = horner(p.coefficients, x) / horner(derivative, x);
            if (!is_finite(step)) {
                break;
            }
            x -= step;
        }
        p.q_roots.push_back(x);
    }
    std::sort(p.q_roots.begin(), p.q_roots.end(), [](Complex a, Complex b) {
        return a.imag() != b.imag() ? a.imag() < b.imag() : a.real() < b.real();
    });
    return p;
}

PotapovProduct pade_as_product(const PadeApproximant& p) {
    PotapovProduct prod;
    prod.u = CMatrix::Constant(1, 1, (p.order % 2 == 0) ? 1.0 : -1.0);
    for (Complex pole : p.poles()) {
        prod.factors.emplace_back(pole, CVector::Ones(1));
    }
    return prod;
}

std::vector<int> pade_orders(const DelayNetwork& net, int n_base) {
    if (n_base < 1) {
        throw Error(ErrorKind::DomainError, "Pade base order must be at least 1");
    }
    const double tmax = net.max_delay();
    std::vector<int> orders;
    orders.reserve(net.delays().size());
    for (double t : net.delays()) {
        orders.push_back(std::max(1, static_cast<int>(std::lround(n_base * t / tmax))));
    }
    return orders;
}

MatrixFunction pade_network_tf(const DelayNetwork& net, const std::vector<int>& orders) {
    if (orders.size() != net.delays().size()) {
        throw Error(ErrorKind::DomainError, "one Pade order per delay is required");
    }
    std::vector<PadeApproximant> approx;
    approx.reserve(orders.size());
    for (std::size_t k = 0; k < orders.size(); ++k) {
        if (orders[k] < 1) {
            std::ostringstream os;
            os << "Pade order " << orders[k] << " for delay " << k << " must be at least 1";
            throw Error(ErrorKind::DomainError, os.str());
        }
        approx.push_back(pade_exp(orders[k], net.delays()[k]));
    }
    return [net, approx](Complex z) {
        const Eigen::Index n = net.internal_size();
        if (n == 0) {
            return CMatrix(net.m4());
        }
        CVector e(n);
        for (Eigen::Index k = 0; k < n; ++k) {
            e(k) = approx[static_cast<std::size_t>(k)].value(z);
        }
        if (!e.allFinite()) {
            throw Error(ErrorKind::NearPole, "Pade substitute evaluated at one of its poles");
        }
        const CMatrix x = CMatrix::Identity(n, n) - net.m1() * e.asDiagonal();
        Eigen::PartialPivLU<CMatrix> lu(x);
        if (!(lu.rcond() * NetworkTolerances::cond_max > 1.0)) {
            std::ostringstream os;
            os << "I - M1 E_pade(z) is singular to working precision at z = " << z;
            throw Error(ErrorKind::NearPole, os.str());
        }
        return CMatrix(net.m3() * e.asDiagonal() * lu.solve(net.m2()) + net.m4());
    };
}

}  // namespace potapov
