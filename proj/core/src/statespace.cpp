#include "potapov/statespace.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/LU>
#include <unsupported/Eigen/MatrixFunctions>

namespace potapov {

StateSpace static_statespace(const CMatrix& u) {
    const Eigen::Index n = u.rows();
    return {CMatrix(0, 0), CMatrix(0, n), CMatrix(n, 0), u};
}

StateSpace factor_to_statespace(const BlaschkeFactor& f) {
    if (!(f.pole.real() < 0.0)) {
        throw Error(ErrorKind::DegeneratePole, "factor pole must lie in the open left half-plane");
    }
    const Eigen::Index n = f.dimension();
    const double g = std::sqrt(-2.0 * f.pole.real());
    StateSpace ss;
    ss.a = CMatrix::Constant(1, 1, f.pole);
    ss.c = g * f.v;
    ss.b = -g * f.v.adjoint();
    ss.d = CMatrix::Identity(n, n);
    return ss;
}

StateSpace cascade(const StateSpace& first, const StateSpace& second) {
    if (first.ports() != second.ports()) {
        std::ostringstream os;
        os << "cannot cascade a " << first.ports() << "-port system into a " << second.ports() << "-port system";
        throw Error(ErrorKind::PortMismatch, os.str());
    }
    const Eigen::Index m1 = first.modes();
    const Eigen::Index m2 = second.modes();
    const Eigen::Index n = first.ports();
    StateSpace out;
    out.a = CMatrix::Zero(m1 + m2, m1 + m2);
    out.a.topLeftCorner(m1, m1) = first.a;
    out.a.bottomLeftCorner(m2, m1) = second.b * first.c;
    out.a.bottomRightCorner(m2, m2) = second.a;
    out.b.resize(m1 + m2, n);
    out.b.topRows(m1) = first.b;
    out.b.bottomRows(m2) = second.b * first.d;
    out.c.resize(n, m1 + m2);
    out.c.leftCols(m1) = second.d * first.c;
    out.c.rightCols(m2) = second.c;
    out.d = second.d * first.d;
    return out;
}

StateSpace product_to_statespace(const PotapovProduct& prod) {
    StateSpace ss = static_statespace(CMatrix::Identity(prod.port_count(), prod.port_count()));
    for (auto it = prod.factors.rbegin(); it != prod.factors.rend(); ++it) {
        ss = cascade(ss, factor_to_statespace(*it));
    }
    return cascade(ss, static_statespace(prod.u));
}

CMatrix tf_of_statespace(const StateSpace& ss, Complex z) {
    const Eigen::Index m = ss.modes();
    if (m == 0) {
        return ss.d;
    }
    const CMatrix x = z * CMatrix::Identity(m, m) - ss.a;
    Eigen::PartialPivLU<CMatrix> lu(x);
    if (!(lu.rcond() * 1e14 > 1.0)) {
        std::ostringstream os;
        os << "zI - A is singular at z = " << z;
        throw Error(ErrorKind::AtPole, os.str());
    }
    return ss.c * lu.solve(ss.b) + ss.d;
}

RealizabilityReport realizability_check(const StateSpace& ss, double tol) {
    RealizabilityReport r;
    r.d_unitary = unitarity_defect(ss.d);
    r.passivity = (ss.a + ss.a.adjoint() + ss.c.adjoint() * ss.c).norm();
    r.coupling = (ss.b + ss.c.adjoint() * ss.d).norm();
    r.max_real_eig = -std::numeric_limits<double>::infinity();
    if (ss.modes() > 0) {
        r.max_real_eig = eigenvalues(ss.a).real().maxCoeff();
    }
    const bool shapes = ss.a.rows() == ss.a.cols() && ss.b.rows() == ss.a.rows() && ss.c.cols() == ss.a.rows() &&
                        ss.d.rows() == ss.d.cols() && ss.b.cols() == ss.d.cols() && ss.c.rows() == ss.d.rows();
    r.pass = shapes && r.d_unitary <= tol && r.passivity <= tol && r.coupling <= tol && r.max_real_eig < 0.0;
    return r;
}

CMatrix omega_of(const StateSpace& ss, double tol) {
    const RealizabilityReport r = realizability_check(ss, tol);
    if (!r.pass) {
        std::ostringstream os;
        os << "system is not physically realizable (D defect " << r.d_unitary << ", passivity " << r.passivity
           << ", coupling " << r.coupling << ", max Re eig " << r.max_real_eig << ")";
        throw Error(ErrorKind::NotRealizable, os.str());
    }
    return CMatrix(Complex(0.0, 0.5) * (ss.a - ss.a.adjoint()));
}

double decay_time(const StateSpace& ss) {
    if (ss.modes() == 0) {
        throw Error(ErrorKind::DomainError, "a system without modes has no decay time");
    }
    const double re = eigenvalues(ss.a).real().maxCoeff();
    if (!(re < 0.0)) {
        throw Error(ErrorKind::DomainError, "system is not strictly stable");
    }
    return 1.0 / std::abs(re);
}

std::vector<double> uniform_time_grid(double t_end, int steps) {
    if (steps < 1 || !(t_end > 0.0) || !std::isfinite(t_end)) {
        throw Error(ErrorKind::DomainError, "time grid needs t_end > 0 and at least one step");
    }
    std::vector<double> t(static_cast<std::size_t>(steps) + 1);
    for (int k = 0; k <= steps; ++k) {
        t[static_cast<std::size_t>(k)] = t_end * k / steps;
    }
    return t;
}

Signal constant_drive(const std::vector<double>& t, const CVector& u) {
    return Signal{t, std::vector<CVector>(t.size(), u)};
}

Signal sinusoidal_drive(const std::vector<double>& t, const CVector& u, double omega) {
    Signal s{t, {}};
    s.values.reserve(t.size());
    for (double tk : t) {
        s.values.push_back(u * std::polar(1.0, omega * tk));
    }
    return s;
}

Signal simulate(const StateSpace& ss, const Signal& input, const CVector& a0, std::vector<CVector>* states) {
    const Eigen::Index m = ss.modes();
    const Eigen::Index n = ss.ports();
    if (input.t.size() != input.values.size()) {
        throw Error(ErrorKind::DomainError, "signal times and values differ in length");
    }
    if (a0.size() != m) {
        throw Error(ErrorKind::DomainError, "initial state does not match the mode count");
    }
    for (const CVector& u : input.values) {
        if (u.size() != n) {
            throw Error(ErrorKind::DomainError, "input sample does not match the port count");
        }
    }
    const std::size_t samples = input.t.size();
    double dt = 0.0;
    if (samples >= 2) {
        dt = input.t[1] - input.t[0];
        if (!(dt > 0.0)) {
            throw Error(ErrorKind::NonuniformGrid, "time grid must be strictly increasing");
        }
        for (std::size_t k = 1; k < samples; ++k) {
            const double step = input.t[k] - input.t[k - 1];
            if (!(std::abs(step - dt) <= 1e-9 * std::max(dt, std::abs(input.t[k])))) {
                std::ostringstream os;
                os << "time step " << step << " at sample " << k << " differs from " << dt;
                throw Error(ErrorKind::NonuniformGrid, os.str());
            }
        }
    }
    // With u linear on each step, exp([[A, B, 0], [0, 0, I], [0, 0, 0]] dt) maps (a_k, u_k, (u_{k+1} - u_k) / dt)
    // to a_{k+1} through its first block row [Phi, Gamma0, Gamma1].
    CMatrix phi = CMatrix::Identity(m, m);
    CMatrix gamma0 = CMatrix::Zero(m, n);
    CMatrix gamma1 = CMatrix::Zero(m, n);
    if (samples >= 2 && m > 0) {
        CMatrix aug = CMatrix::Zero(m + 2 * n, m + 2 * n);
        aug.topLeftCorner(m, m) = ss.a * dt;
        aug.block(0, m, m, n) = ss.b * dt;
        aug.block(m, m + n, n, n) = CMatrix::Identity(n, n) * dt;
        const CMatrix e = aug.exp();
        phi = e.topLeftCorner(m, m);
        gamma0 = e.block(0, m, m, n);
        gamma1 = e.block(0, m + n, m, n) / dt;
    }
    Signal out{input.t, {}};
    out.values.reserve(samples);
    if (states != nullptr) {
        states->clear();
        states->reserve(samples);
    }
    CVector a = a0;
    for (std::size_t k = 0; k < samples; ++k) {
        const CVector& u = input.values[k];
        out.values.push_back(ss.c * a + ss.d * u);
        if (states != nullptr) {
            states->push_back(a);
        }
        if (k + 1 < samples) {
            a = phi * a + gamma0 * u + gamma1 * (input.values[k + 1] - u);
        }
    }
    return out;
}

}  // namespace potapov
