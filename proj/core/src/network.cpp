#include "potapov/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "json.hpp"

namespace potapov {

namespace {

std::string shape_of(const CMatrix& m) {
    std::ostringstream os;
    os << m.rows() << "x" << m.cols();
    return os.str();
}

void require_shape(const CMatrix& m, Eigen::Index rows, Eigen::Index cols, const char* name) {
    if (m.rows() != rows || m.cols() != cols) {
        throw Error(ErrorKind::MalformedInput, std::string(name) + " has shape " + shape_of(m) +
                                                   ", expected " + std::to_string(rows) + "x" +
                                                   std::to_string(cols));
    }
}

}  // namespace

DelayNetwork::DelayNetwork(CMatrix m1, CMatrix m2, CMatrix m3, CMatrix m4, std::vector<double> delays)
    : m1_(std::move(m1)), m2_(std::move(m2)), m3_(std::move(m3)), m4_(std::move(m4)),
      delays_(std::move(delays)) {
    const Eigen::Index n = m1_.rows();
    const Eigen::Index ports = m4_.rows();
    if (ports < 1) {
        throw Error(ErrorKind::MalformedInput, "network needs at least one port");
    }
    require_shape(m1_, n, n, "m1");
    require_shape(m2_, n, ports, "m2");
    require_shape(m3_, ports, n, "m3");
    require_shape(m4_, ports, ports, "m4");
    if (static_cast<Eigen::Index>(delays_.size()) != n) {
        throw Error(ErrorKind::MalformedInput, "expected " + std::to_string(n) + " delays, got " +
                                                   std::to_string(delays_.size()));
    }
    if (!m1_.allFinite() || !m2_.allFinite() || !m3_.allFinite() || !m4_.allFinite()) {
        throw Error(ErrorKind::MalformedInput, "non-finite matrix entry");
    }
    for (double t : delays_) {
        if (!std::isfinite(t) || !(t > 0.0)) {
            throw Error(ErrorKind::NonpositiveDelay, "delay " + std::to_string(t) + " is not positive");
        }
    }
    const double defect = unitarity_defect(stacked());
    if (!(defect <= NetworkTolerances::unitary)) {
        std::ostringstream os;
        os << "stacked scattering matrix deviates from unitary by " << defect;
        throw Error(ErrorKind::NotUnitary, os.str());
    }
    double rho = 0.0;
    if (n >= kSchurThreshold && has_equal_delays()) {
        SchurDecomposition schur = complex_schur(m1_);
        auto form = std::make_shared<SchurForm>();
        form->m2z = schur.u.adjoint() * m2_;
        form->m3z = m3_ * schur.u;
        form->s = std::move(schur.t);
        rho = form->s.diagonal().cwiseAbs().maxCoeff();
        schur_ = std::move(form);
    } else {
        rho = spectral_radius(m1_);
    }
    if (!(rho < 1.0)) {
        std::ostringstream os;
        os << "spectral radius of M1 is " << rho;
        throw Error(ErrorKind::Unstable, os.str());
    }
}

CMatrix DelayNetwork::stacked() const {
    const Eigen::Index n = internal_size();
    const Eigen::Index ports = port_count();
    CMatrix s(n + ports, n + ports);
    s.topLeftCorner(n, n) = m1_;
    s.topRightCorner(n, ports) = m2_;
    s.bottomLeftCorner(ports, n) = m3_;
    s.bottomRightCorner(ports, ports) = m4_;
    return s;
}

double DelayNetwork::total_delay() const {
    return std::accumulate(delays_.begin(), delays_.end(), 0.0);
}

double DelayNetwork::max_delay() const {
    return delays_.empty() ? 0.0 : *std::max_element(delays_.begin(), delays_.end());
}

bool DelayNetwork::has_equal_delays(double rel_tol) const {
    if (delays_.empty()) {
        return true;
    }
    const double first = delays_.front();
    return std::all_of(delays_.begin(), delays_.end(),
                       [&](double t) { return std::abs(t - first) <= rel_tol * first; });
}

CVector DelayNetwork::delay_diagonal(Complex z) const {
    CVector e(internal_size());
    for (Eigen::Index k = 0; k < e.size(); ++k) {
        e(k) = std::exp(-z * delays_[static_cast<std::size_t>(k)]);
    }
    return e;
}

DelayNetwork parse_network(std::string_view text) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::MalformedInput, std::string("invalid JSON: ") + e.what());
    }
    auto require_key = [&](const char* key) -> const json& {
        if (!doc.is_object() || !doc.contains(key)) {
            throw Error(ErrorKind::MalformedInput, std::string("missing key '") + key + "'");
        }
        return doc.at(key);
    };
    const json& jn = require_key("n");
    const json& jports = require_key("ports");
    if (!jn.is_number_integer() || !jports.is_number_integer() || jn.get<long>() < 0 ||
        jports.get<long>() < 1) {
        throw Error(ErrorKind::MalformedInput, "'n' must be a nonnegative integer and 'ports' positive");
    }
    const auto n = static_cast<Eigen::Index>(jn.get<long>());
    const auto ports = static_cast<Eigen::Index>(jports.get<long>());

    auto read_matrix = [&](const char* key, Eigen::Index rows, Eigen::Index cols) {
        const json& jm = require_key(key);
        if (!jm.is_array() || static_cast<Eigen::Index>(jm.size()) != rows) {
            throw Error(ErrorKind::MalformedInput, std::string(key) + " must have " +
                                                       std::to_string(rows) + " rows");
        }
        CMatrix m(rows, cols);
        for (Eigen::Index i = 0; i < rows; ++i) {
            const json& row = jm[static_cast<std::size_t>(i)];
            if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
                throw Error(ErrorKind::MalformedInput, std::string(key) + " row " + std::to_string(i) +
                                                           " must have " + std::to_string(cols) +
                                                           " entries");
            }
            for (Eigen::Index j = 0; j < cols; ++j) {
                const json& entry = row[static_cast<std::size_t>(j)];
                if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
                    !entry[1].is_number()) {
                    throw Error(ErrorKind::MalformedInput,
                                std::string(key) + " entries must be [re, im] pairs");
                }
                m(i, j) = Complex(entry[0].get<double>(), entry[1].get<double>());
            }
        }
        return m;
    };

    CMatrix m1 = read_matrix("m1", n, n);
    CMatrix m2 = read_matrix("m2", n, ports);
    CMatrix m3 = read_matrix("m3", ports, n);
    CMatrix m4 = read_matrix("m4", ports, ports);

    const json& jd = require_key("delays");
    if (!jd.is_array() || static_cast<Eigen::Index>(jd.size()) != n) {
        throw Error(ErrorKind::MalformedInput, "'delays' must list n numbers");
    }
    std::vector<double> delays;
    delays.reserve(jd.size());
    for (const json& t : jd) {
        if (!t.is_number()) {
            throw Error(ErrorKind::MalformedInput, "delays must be numbers");
        }
        delays.push_back(t.get<double>());
    }
    return DelayNetwork(std::move(m1), std::move(m2), std::move(m3), std::move(m4), std::move(delays));
}

DelayNetwork build_cavity(double r, double tau) {
    if (!(r > 0.0 && r < 1.0)) {
        throw Error(ErrorKind::DomainError, "cavity reflectivity must lie in (0, 1)");
    }
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        throw Error(ErrorKind::DomainError, "cavity delay must be positive");
    }
    const double t = std::sqrt(1.0 - r * r);
    CMatrix m1(1, 1), m2(1, 1), m3(1, 1), m4(1, 1);
    m1(0, 0) = r;
    m2(0, 0) = t;
    m3(0, 0) = t;
    m4(0, 0) = -r;
    return DelayNetwork(m1, m2, m3, m4, {tau});
}

namespace {

/// The scalar exp(-z T0) of an equal-delay network.
Complex scalar_delay(const DelayNetwork& net, Complex z) {
    return std::exp(-z * net.delays().front());
}

CMatrix eval_tf_schur(const DelayNetwork& net, const SchurForm& form, Complex z) {
    const Complex e = scalar_delay(net, z);
    const Eigen::Index n = form.s.rows();
    double dmin = std::numeric_limits<double>::infinity();
    double dmax = 0.0;
    CVector diag(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        diag(i) = 1.0 - e * form.s(i, i);
        dmin = std::min(dmin, std::abs(diag(i)));
        dmax = std::max(dmax, std::abs(diag(i)));
    }
    if (!(dmin * NetworkTolerances::cond_max > dmax)) {
        std::ostringstream os;
        os << "I - M1 E(z) is singular to working precision at z = " << z;
        throw Error(ErrorKind::NearPole, os.str());
    }
    // Column-oriented back substitution for (I - e S) y = Z^H M2.
    CMatrix y = form.m2z;
    for (Eigen::Index c = 0; c < y.cols(); ++c) {
        Complex* col = y.col(c).data();
        for (Eigen::Index i = n - 1; i >= 0; --i) {
            col[i] /= diag(i);
            const Complex scaled = e * col[i];
            const double sr = scaled.real();
            const double si = scaled.imag();
            const Complex* s_col = form.s.col(i).data();
            // Plain real arithmetic; std::complex products carry NaN-recovery overhead.
            for (Eigen::Index k = 0; k < i; ++k) {
                const double ar = s_col[k].real();
                const double ai = s_col[k].imag();
                col[k] += Complex(ar * sr - ai * si, ar * si + ai * sr);
            }
        }
    }
    if (!y.allFinite()) {
        throw Error(ErrorKind::NearPole, "triangular solve overflowed");
    }
    return e * (form.m3z * y) + net.m4();
}

}  // namespace

CMatrix eval_tf(const DelayNetwork& net, Complex z) {
    const Eigen::Index n = net.internal_size();
    if (n == 0) {
        return net.m4();
    }
    if (const SchurForm* form = net.schur_form()) {
        return eval_tf_schur(net, *form, z);
    }
    const CVector e = net.delay_diagonal(z);
    const CMatrix x = CMatrix::Identity(n, n) - net.m1() * e.asDiagonal();
    Eigen::PartialPivLU<CMatrix> lu(x);
    const double rcond = lu.rcond();
    if (!(rcond * NetworkTolerances::cond_max > 1.0)) {
        std::ostringstream os;
        os << "I - M1 E(z) is singular to working precision at z = " << z;
        throw Error(ErrorKind::NearPole, os.str());
    }
    const CMatrix inner = lu.solve(net.m2());
    const double residual = (x * inner - net.m2()).norm();
    if (!std::isfinite(residual) || residual > 1e-6 * (1.0 + net.m2().norm())) {
        throw Error(ErrorKind::NearPole, "linear solve residual too large");
    }
    return net.m3() * e.asDiagonal() * inner + net.m4();
}

CMatrix eval_tf_inverse_form(const DelayNetwork& net, Complex z) {
    const Eigen::Index n = net.internal_size();
    if (n == 0) {
        return net.m4();
    }
    const CVector e_minus = net.delay_diagonal(-z);
    const CMatrix x = CMatrix(e_minus.asDiagonal()) - net.m1();
    Eigen::PartialPivLU<CMatrix> lu(x);
    if (!(lu.rcond() * NetworkTolerances::cond_max > 1.0)) {
        throw Error(ErrorKind::NearPole, "E(-z) - M1 is singular to working precision");
    }
    return net.m3() * lu.solve(net.m2()) + net.m4();
}

MatrixFunction transfer_function(const DelayNetwork& net) {
    return [net](Complex z) { return eval_tf(net, z); };
}

DeterminantSample pole_determinant(const DelayNetwork& net, Complex z) {
    const Eigen::Index n = net.internal_size();
    if (n == 0) {
        return {Complex(1.0), Complex(0.0)};
    }
    if (const SchurForm* form = net.schur_form()) {
        // det = prod(1 - e s_ii) and f'/f = sum T0 e s_ii / (1 - e s_ii).
        const Complex e = scalar_delay(net, z);
        const double t0 = net.delays().front();
        Complex f(1.0);
        Complex log_derivative(0.0);
        for (Eigen::Index i = 0; i < n; ++i) {
            const Complex es = e * form->s(i, i);
            f *= 1.0 - es;
            log_derivative += t0 * es / (1.0 - es);
        }
        return {f, f * log_derivative};
    }
    const CVector e = net.delay_diagonal(z);
    const CMatrix x = CMatrix::Identity(n, n) - net.m1() * e.asDiagonal();
    Eigen::PartialPivLU<CMatrix> lu(x);
    const Complex f = lu.determinant();
    // dX/dz = M1 diag(T_k exp(-z T_k)), so f' = f tr(X^{-1} dX/dz).
    CVector te(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        te(k) = net.delays()[static_cast<std::size_t>(k)] * e(k);
    }
    const CMatrix dx = net.m1() * te.asDiagonal();
    const Complex trace = lu.solve(dx).trace();
    return {f, f * trace};
}

PoleFunctionValue pole_function(const DelayNetwork& net, Complex z) {
    const DeterminantSample s = pole_determinant(net, z);
    if (!(std::abs(s.value) >= NetworkTolerances::eps_root)) {
        std::ostringstream os;
        os << "|det(I - M1 E(z))| = " << std::abs(s.value) << " at z = " << z;
        throw Error(ErrorKind::AtRoot, os.str());
    }
    return {s.value, s.derivative / s.value};
}

double relative_min_singular_value(const CMatrix& m) {
    if (m.size() == 0) {
        return 1.0;
    }
    Eigen::BDCSVD<CMatrix> svd(m);
    const auto& sv = svd.singularValues();
    const double smax = sv(0);
    if (smax == 0.0) {
        return 0.0;
    }
    return sv(sv.size() - 1) / smax;
}

std::optional<CMatrix> limit_neg_infinity(const DelayNetwork& net) {
    if (net.internal_size() == 0) {
        return net.m4();
    }
    if (!(relative_min_singular_value(net.m1()) > NetworkTolerances::eps_rank)) {
        return std::nullopt;
    }
    Eigen::PartialPivLU<CMatrix> lu(net.m1());
    return CMatrix(net.m4() - net.m3() * lu.solve(net.m2()));
}

}  // namespace potapov
