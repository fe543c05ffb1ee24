#include "potapov/separation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "potapov/roots.hpp"

namespace potapov {

double FeedforwardChain::total_delay() const {
    double total = 0.0;
    for (const FeedforwardStage& s : stages) {
        if (!s.delays.empty()) {
            total += *std::max_element(s.delays.begin(), s.delays.end());
        }
    }
    return total;
}

CMatrix eval_feedforward(const FeedforwardChain& ff, Complex z) {
    CMatrix out = CMatrix::Identity(ff.ports, ff.ports);
    for (const FeedforwardStage& s : ff.stages) {
        CVector d(static_cast<Eigen::Index>(s.delays.size()));
        for (std::size_t k = 0; k < s.delays.size(); ++k) {
            d(static_cast<Eigen::Index>(k)) = std::exp(-z * s.delays[k]);
        }
        out = s.gain * d.asDiagonal() * s.gain.adjoint() * out;
    }
    return out;
}

DelayNetwork to_commensurate(const DelayNetwork& net, double t0) {
    const std::vector<long> k = commensurate_multiples(net, t0);
    const Eigen::Index n = net.internal_size();
    const Eigen::Index ports = net.port_count();
    // first[i]: index of the chain node carrying the undelayed x_i; last[i]: the chain's tail.
    std::vector<Eigen::Index> first(static_cast<std::size_t>(n));
    std::vector<Eigen::Index> last(static_cast<std::size_t>(n));
    Eigen::Index size = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        first[static_cast<std::size_t>(i)] = size;
        size += static_cast<Eigen::Index>(k[static_cast<std::size_t>(i)]);
        last[static_cast<std::size_t>(i)] = size - 1;
    }
    CMatrix m1 = CMatrix::Zero(size, size);
    CMatrix m2 = CMatrix::Zero(size, ports);
    CMatrix m3 = CMatrix::Zero(ports, size);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index fi = first[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < n; ++j) {
            m1(fi, last[static_cast<std::size_t>(j)]) = net.m1()(i, j);
        }
        m2.row(fi) = net.m2().row(i);
        m3.col(last[static_cast<std::size_t>(i)]) = net.m3().col(i);
        for (Eigen::Index c = fi + 1; c <= last[static_cast<std::size_t>(i)]; ++c) {
            m1(c, c - 1) = 1.0;
        }
    }
    return DelayNetwork(std::move(m1), std::move(m2), std::move(m3), net.m4(),
                        std::vector<double>(static_cast<std::size_t>(size), t0));
}

namespace {

/// Unitary H = phase * (I - 2 w w^H / w^H w) with H e_index = target (a unit vector).
struct Reflector {
    CVector w;
    double w2 = 0.0;
    Complex phase{1.0, 0.0};

    /// w = target + s e_index with s = sign(target(index)), so w^H w >= 2 and nothing cancels.
    Reflector(const CVector& target, Eigen::Index index) {
        const Complex a = target(index);
        const Complex s = std::abs(a) > 0.0 ? a / std::abs(a) : Complex(1.0);
        phase = -s;
        w = target;
        w(index) += s;
        w2 = w.squaredNorm();
    }

    /// (I - 2 w w^H / w^H w) x, without the phase.
    void reflect_rows(CMatrix& x) const {
        if (w2 > 0.0) {
            x -= (2.0 / w2) * w * (w.adjoint() * x);
        }
    }
    /// x (I - 2 w w^H / w^H w), without the phase.
    void reflect_cols(CMatrix& x) const {
        if (w2 > 0.0) {
            x -= (2.0 / w2) * (x * w) * w.adjoint();
        }
    }
    [[nodiscard]] CMatrix dense() const {
        CMatrix h = CMatrix::Identity(w.size(), w.size());
        reflect_rows(h);
        return phase * h;
    }
};

/// Unit q with q^H M1 = 0 within eps_rank, or an empty vector when M1 is invertible.
CVector left_kernel_vector(const CMatrix& m1) {
    const Eigen::Index n = m1.rows();
    Eigen::ColPivHouseholderQR<CMatrix> qr(m1);
    const auto& r = qr.matrixR();
    const double rmax = std::abs(r(0, 0));
    if (rmax == 0.0) {
        CVector q = CVector::Zero(n);
        q(n - 1) = 1.0;
        return q;
    }
    if (std::abs(r(n - 1, n - 1)) <= NetworkTolerances::eps_rank * rmax) {
        CVector last = CVector::Zero(n);
        last(n - 1) = 1.0;
        return qr.householderQ() * last;
    }
    // Pivoted QR can miss near-singularity; confirm with the singular values.
    Eigen::BDCSVD<CMatrix> svd(m1, Eigen::ComputeFullU);
    const auto& sv = svd.singularValues();
    if (sv(n - 1) <= NetworkTolerances::eps_rank * sv(0)) {
        return svd.matrixU().col(n - 1);
    }
    return {};
}

}  // namespace

SeparationResult separate(const DelayNetwork& net) {
    const Eigen::Index n0 = net.internal_size();
    if (n0 > 0 && !net.has_equal_delays(1e-9)) {
        throw Error(ErrorKind::NotEqualDelays, "separation requires a network whose delays are all equal");
    }
    const double t0 = n0 > 0 ? net.delays().front() : 0.0;
    const Eigen::Index ports = net.port_count();
    CMatrix m1 = net.m1();
    CMatrix m2 = net.m2();
    CMatrix m3 = net.m3();
    CMatrix m4 = net.m4();
    FeedforwardChain chain;
    chain.ports = ports;

    for (Eigen::Index n = n0; n > 0; --n) {
        const CVector q = left_kernel_vector(m1);
        if (q.size() == 0) {
            break;
        }
        // Rotate q to the last coordinate: M1 -> H^H M1 H, M2 -> H^H M2, M3 -> M3 H.
        const Reflector h(q, n - 1);
        h.reflect_rows(m1);
        h.reflect_cols(m1);
        h.reflect_rows(m2);
        m2 *= std::conj(h.phase);
        h.reflect_cols(m3);
        m3 *= h.phase;

        const double leak = m1.row(n - 1).norm();
        if (!(leak <= 1e-8)) {
            std::ostringstream os;
            os << "kernel row after rotation has norm " << leak;
            throw Error(ErrorKind::DeflationStall, os.str());
        }
        // The eliminated node carries p^H u one step late into the rest of the network.
        const CVector p = m2.row(n - 1).adjoint();
        const double pnorm = p.norm();
        if (!(std::abs(pnorm - 1.0) <= 1e-8)) {
            std::ostringstream os;
            os << "eliminated node couples to the ports with norm " << pnorm << " instead of 1";
            throw Error(ErrorKind::DeflationStall, os.str());
        }
        const CVector g = m1.col(n - 1).head(n - 1);
        const CVector c = m3.col(n - 1);

        CMatrix k = m1.topLeftCorner(n - 1, n - 1);
        CMatrix m2_next = m2.topRows(n - 1) + g * p.adjoint();
        CMatrix m3_next = m3.leftCols(n - 1);
        m4 += c * p.adjoint();
        m1 = std::move(k);
        m2 = std::move(m2_next);
        m3 = std::move(m3_next);

        FeedforwardStage stage;
        stage.gain = Reflector(p / pnorm, 0).dense();
        stage.delays.assign(static_cast<std::size_t>(ports), 0.0);
        stage.delays.front() = t0;
        chain.stages.push_back(std::move(stage));
    }

    const auto remaining = static_cast<std::size_t>(m1.rows());
    try {
        DelayNetwork core(std::move(m1), std::move(m2), std::move(m3), std::move(m4),
                          std::vector<double>(remaining, t0));
        return SeparationResult{std::move(chain), std::move(core)};
    } catch (const Error& e) {
        throw Error(ErrorKind::DeflationStall, std::string("deflated core is not a valid network: ") + e.what());
    }
}

RationalizedNetwork rationalize_delays(const DelayNetwork& net, double grid) {
    if (!(grid > 0.0) || !std::isfinite(grid)) {
        throw Error(ErrorKind::DomainError, "rationalization grid must be positive");
    }
    std::vector<long long> k;
    long long g = 0;
    double shift = 0.0;
    for (double t : net.delays()) {
        const long long m = std::llround(t / grid);
        if (m < 1) {
            std::ostringstream os;
            os << "delay " << t << " rounds to zero on grid " << grid;
            throw Error(ErrorKind::DomainError, os.str());
        }
        shift = std::max(shift, std::abs(static_cast<double>(m) * grid - t));
        g = std::gcd(g, m);
        k.push_back(m);
    }
    std::vector<double> delays;
    delays.reserve(k.size());
    for (long long m : k) {
        delays.push_back(static_cast<double>(m) * grid);
    }
    const double t0 = g > 0 ? static_cast<double>(g) * grid : grid;
    return RationalizedNetwork{DelayNetwork(net.m1(), net.m2(), net.m3(), net.m4(), std::move(delays)), t0, shift};
}

}  // namespace potapov
