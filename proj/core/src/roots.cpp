#include "potapov/roots.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include <Eigen/SVD>

namespace potapov {

namespace {
constexpr double kSingularStripAttenuation = 1e-3;
}  // namespace

void ContourRegion::validate() const {
    if (!(re_min < re_max) || !(im_min < im_max) || !std::isfinite(re_min) || !std::isfinite(re_max) ||
        !std::isfinite(im_min) || !std::isfinite(im_max)) {
        throw Error(ErrorKind::DomainError, "contour region must satisfy re_min < re_max and im_min < im_max");
    }
}

bool ContourRegion::contains(Complex z) const {
    return z.real() > re_min && z.real() < re_max && z.imag() > im_min && z.imag() < im_max;
}

std::vector<Complex> RootSet::locations() const {
    std::vector<Complex> out;
    out.reserve(roots.size());
    for (const Root& r : roots) {
        out.push_back(r.location);
    }
    return out;
}

const GaussLegendreRule& gauss_legendre(int points) {
    static std::mutex mutex;
    static std::map<int, GaussLegendreRule> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(points);
    if (it != cache.end()) {
        return it->second;
    }
    GaussLegendreRule rule;
    rule.nodes.resize(static_cast<std::size_t>(points));
    rule.weights.resize(static_cast<std::size_t>(points));
    const int half = (points + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (points + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= points; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = points * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        // Recompute the derivative at the converged node for the weight.
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= points; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = points * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(points - 1 - i);
        rule.nodes[lo] = -x;
        rule.nodes[hi] = x;
        rule.weights[lo] = w;
        rule.weights[hi] = w;
    }
    return cache.emplace(points, std::move(rule)).first->second;
}

namespace {

/// Normalized moments s_p = (1 / 2 pi i) \oint zeta^p f'/f dz, zeta = (z - center) / scale.
struct CellMoments {
    std::vector<Complex> s;
    Complex center;
    double scale = 1.0;
};

/// Adaptive composite Gauss-Legendre integration of zeta^p f'/f along the contour.
class MomentIntegrator {
public:
    MomentIntegrator(const AnalyticFunction& f, const ContourRegion& region, int count,
                     const ZeroSearchOptions& opts)
        : f_(f), count_(count), opts_(opts), rule_(gauss_legendre(std::max(opts.quad_points, 2))) {
        center_ = region.center();
        scale_ = 0.5 * std::max(region.re_max - region.re_min, region.im_max - region.im_min);
        corners_ = {Complex(region.re_min, region.im_min), Complex(region.re_max, region.im_min),
                    Complex(region.re_max, region.im_max), Complex(region.re_min, region.im_max)};
        perimeter_ = 2.0 * ((region.re_max - region.re_min) + (region.im_max - region.im_min));
        short_side_ = std::min(region.re_max - region.re_min, region.im_max - region.im_min);
    }

    /// False when f'/f is not finite on the contour or refinement exceeds the budget.
    bool run(CellMoments& out) {
        out.center = center_;
        out.scale = scale_;
        out.s.assign(static_cast<std::size_t>(count_ + 1), Complex(0.0));
        for (std::size_t edge = 0; edge < 4; ++edge) {
            const Complex a = corners_[edge];
            const Complex b = corners_[(edge + 1) % 4];
            const double len = std::abs(b - a);
            const int pieces = std::clamp(static_cast<int>(std::ceil(len / short_side_)), 1, 64);
            for (int k = 0; k < pieces; ++k) {
                const Complex pa = a + (b - a) * (static_cast<double>(k) / pieces);
                const Complex pb = a + (b - a) * (static_cast<double>(k + 1) / pieces);
                std::vector<Complex> whole;
                if (!panel(pa, pb, whole) || !refine(pa, pb, whole, 0, out.s)) {
                    return false;
                }
            }
        }
        for (Complex& v : out.s) {
            v /= 2.0 * kPi * kI;
        }
        return true;
    }

private:
    bool panel(Complex a, Complex b, std::vector<Complex>& sums) {
        const Complex mid = 0.5 * (a + b);
        const Complex half = 0.5 * (b - a);
        sums.assign(static_cast<std::size_t>(count_ + 1), Complex(0.0));
        for (std::size_t j = 0; j < rule_.nodes.size(); ++j) {
            if (++evaluations_ > opts_.max_quad_points) {
                return false;
            }
            const Complex z = mid + half * rule_.nodes[j];
            const AnalyticSample sample = f_(z);
            const Complex ld = sample.derivative / sample.value;
            if (!is_finite(ld)) {
                return false;
            }
            const Complex zeta = (z - center_) / scale_;
            const Complex term = rule_.weights[j] * half * ld;
            Complex power(1.0);
            for (int p = 0; p <= count_; ++p) {
                sums[static_cast<std::size_t>(p)] += term * power;
                power *= zeta;
            }
        }
        return true;
    }

    bool refine(Complex a, Complex b, const std::vector<Complex>& whole, int depth, std::vector<Complex>& acc) {
        const Complex mid = 0.5 * (a + b);
        std::vector<Complex> left, right;
        if (!panel(a, mid, left) || !panel(mid, b, right)) {
            return false;
        }
        // Error budget proportional to the panel's share of the perimeter, in units of 2 pi.
        const double tol = opts_.moment_tol * 2.0 * kPi * std::abs(b - a) / perimeter_;
        double diff = 0.0;
        for (std::size_t p = 0; p < whole.size(); ++p) {
            diff = std::max(diff, std::abs(left[p] + right[p] - whole[p]));
        }
        if (diff <= tol) {
            for (std::size_t p = 0; p < whole.size(); ++p) {
                acc[p] += left[p] + right[p];
            }
            return true;
        }
        if (depth >= 40) {
            return false;
        }
        return refine(a, mid, left, depth + 1, acc) && refine(mid, b, right, depth + 1, acc);
    }

    const AnalyticFunction& f_;
    int count_;
    const ZeroSearchOptions& opts_;
    const GaussLegendreRule& rule_;
    Complex center_;
    double scale_ = 1.0;
    std::array<Complex, 4> corners_;
    double perimeter_ = 0.0;
    double short_side_ = 0.0;
    long evaluations_ = 0;
};

CellMoments converged_moments(const AnalyticFunction& f, const ContourRegion& region, int count,
                              const ZeroSearchOptions& opts) {
    CellMoments out;
    MomentIntegrator integrator(f, region, count, opts);
    if (integrator.run(out)) {
        return out;
    }
    std::ostringstream os;
    os << "argument-principle quadrature did not converge on [" << region.re_min << ", " << region.re_max
       << "] x [" << region.im_min << ", " << region.im_max << "]; a zero may lie on or near the contour";
    throw Error(ErrorKind::ContourThroughZero, os.str());
}

int rounded_count(const CellMoments& m, const ContourRegion& region, const ZeroSearchOptions& opts) {
    const Complex s0 = m.s[0];
    const double nearest = std::round(s0.real());
    if (std::abs(s0 - Complex(nearest, 0.0)) > opts.integer_tol || nearest < 0.0) {
        std::ostringstream os;
        os << "zero count " << s0 << " is not an integer on [" << region.re_min << ", " << region.re_max
           << "] x [" << region.im_min << ", " << region.im_max << "]";
        throw Error(ErrorKind::ContourThroughZero, os.str());
    }
    return static_cast<int>(nearest);
}

/// Roots of the monic polynomial whose power sums are s_1..s_n (Newton's identities).
std::vector<Complex> roots_from_power_sums(const std::vector<Complex>& s, int n) {
    std::vector<Complex> e(static_cast<std::size_t>(n + 1), Complex(0.0));
    e[0] = 1.0;
    for (int k = 1; k <= n; ++k) {
        Complex acc(0.0);
        for (int i = 1; i <= k; ++i) {
            const double sign = (i % 2 == 1) ? 1.0 : -1.0;
            acc += sign * e[static_cast<std::size_t>(k - i)] * s[static_cast<std::size_t>(i)];
        }
        e[static_cast<std::size_t>(k)] = acc / static_cast<double>(k);
    }
    if (n == 1) {
        return {e[1]};
    }
    // x^n - e1 x^{n-1} + e2 x^{n-2} - ... ; companion matrix with first row of negated coefficients.
    CMatrix companion = CMatrix::Zero(n, n);
    for (int k = 1; k <= n; ++k) {
        const double sign = (k % 2 == 1) ? 1.0 : -1.0;
        companion(0, k - 1) = sign * e[static_cast<std::size_t>(k)];
    }
    for (int i = 1; i < n; ++i) {
        companion(i, i - 1) = 1.0;
    }
    const CVector ev = eigenvalues(companion);
    std::vector<Complex> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = ev(i);
    }
    return out;
}

struct Polished {
    Complex z;
    double residual;
    bool ok;
};

Polished newton_polish(const AnalyticFunction& f, Complex z, const ZeroSearchOptions& opts) {
    AnalyticSample s = f(z);
    for (int iter = 0; iter < opts.max_newton; ++iter) {
        if (s.value == Complex(0.0)) {
            return {z, 0.0, true};
        }
        const Complex step = s.value / s.derivative;
        if (!is_finite(step)) {
            break;
        }
        z -= step;
        s = f(z);
        if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z))) {
            break;
        }
    }
    const double residual = std::abs(s.value) / s.scale;
    return {z, residual, std::isfinite(residual) && residual < opts.eps_residual};
}

class ZeroSearch {
public:
    ZeroSearch(const AnalyticFunction& f, const ZeroSearchOptions& opts) : f_(f), opts_(opts) {}

    void solve(const ContourRegion& region, const CellMoments& moments, int count, int depth) {
        if (count == 0) {
            return;
        }
        if (count <= opts_.max_per_cell && try_recover(region, moments, count)) {
            return;
        }
        if (depth >= opts_.max_depth) {
            throw Error(ErrorKind::CountMismatch, "root recovery failed after maximal subdivision");
        }
        split(region, count, depth);
    }

    std::vector<Root> roots;
    std::vector<std::string> warnings;

private:
    bool try_recover(const ContourRegion& region, const CellMoments& moments, int count) {
        std::vector<Complex> candidates = roots_from_power_sums(moments.s, count);
        std::vector<Root> found;
        for (Complex zeta : candidates) {
            const Complex guess = moments.center + moments.scale * zeta;
            const Polished p = newton_polish(f_, guess, opts_);
            if (!p.ok) {
                return false;
            }
            if (!region.contains(p.z)) {
                return false;
            }
            found.push_back({p.z, p.residual});
        }
        // Coincident roots are either a genuine multiple root or a failed recovery.
        std::vector<std::string> notes;
        for (std::size_t i = 0; i < found.size(); ++i) {
            int coincident = 1;
            for (std::size_t j = 0; j < found.size(); ++j) {
                if (j != i && std::abs(found[i].location - found[j].location) < opts_.multiplicity_radius) {
                    ++coincident;
                }
            }
            if (coincident == 1) {
                continue;
            }
            const double h = 10.0 * opts_.multiplicity_radius;
            const Complex c = found[i].location;
            ContourRegion box{c.real() - h, c.real() + h, c.imag() - h, c.imag() + h};
            int multiplicity = 0;
            try {
                multiplicity = count_zeros(f_, box, opts_);
            } catch (const Error&) {
                return false;
            }
            if (multiplicity != coincident) {
                return false;
            }
            std::ostringstream os;
            os << "MultiplicityWarning: root near " << c << " has multiplicity " << multiplicity
               << "; treated as simple";
            notes.push_back(os.str());
        }
        std::sort(notes.begin(), notes.end());
        notes.erase(std::unique(notes.begin(), notes.end()), notes.end());
        warnings.insert(warnings.end(), notes.begin(), notes.end());
        roots.insert(roots.end(), found.begin(), found.end());
        return true;
    }

    void split(const ContourRegion& region, int count, int depth) {
        static constexpr std::array<double, 7> fractions = {0.5, 0.463, 0.537, 0.419, 0.581, 0.377, 0.623};
        const bool along_re = (region.re_max - region.re_min) >= (region.im_max - region.im_min);
        const int moments_needed = opts_.max_per_cell;
        for (double frac : fractions) {
            ContourRegion lo = region;
            ContourRegion hi = region;
            if (along_re) {
                const double cut = region.re_min + frac * (region.re_max - region.re_min);
                lo.re_max = cut;
                hi.re_min = cut;
            } else {
                const double cut = region.im_min + frac * (region.im_max - region.im_min);
                lo.im_max = cut;
                hi.im_min = cut;
            }
            CellMoments mlo, mhi;
            int nlo = 0, nhi = 0;
            try {
                mlo = converged_moments(f_, lo, moments_needed, opts_);
                nlo = rounded_count(mlo, lo, opts_);
                mhi = converged_moments(f_, hi, moments_needed, opts_);
                nhi = rounded_count(mhi, hi, opts_);
            } catch (const Error& e) {
                if (e.kind() == ErrorKind::ContourThroughZero) {
                    continue;
                }
                throw;
            }
            if (nlo + nhi != count) {
                continue;
            }
            solve(lo, mlo, nlo, depth + 1);
            solve(hi, mhi, nhi, depth + 1);
            return;
        }
        throw Error(ErrorKind::CountMismatch, "could not bisect region without crossing a zero");
    }

    const AnalyticFunction& f_;
    const ZeroSearchOptions& opts_;
};

void sort_roots(std::vector<Root>& roots) {
    std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) {
        if (a.location.imag() != b.location.imag()) {
            return a.location.imag() < b.location.imag();
        }
        return a.location.real() < b.location.real();
    });
}

AnalyticFunction determinant_function(const DelayNetwork& net) {
    return [&net](Complex z) {
        const DeterminantSample s = pole_determinant(net, z);
        // det((I - M1 E) D^{-1}) with D = diag(max(1, |e_k|)) has entries bounded by 2 in modulus.
        double scale = 1.0;
        for (double t : net.delays()) {
            scale *= std::max(1.0, std::exp(-z.real() * t));
        }
        return AnalyticSample{s.value, s.derivative, scale};
    };
}

}  // namespace

int count_zeros(const AnalyticFunction& f, const ContourRegion& region, const ZeroSearchOptions& opts) {
    region.validate();
    const CellMoments m = converged_moments(f, region, 0, opts);
    return rounded_count(m, region, opts);
}

RootSet find_zeros(const AnalyticFunction& f, const ContourRegion& region, const ZeroSearchOptions& opts) {
    region.validate();
    if (opts.max_per_cell < 1) {
        throw Error(ErrorKind::DomainError, "max_per_cell must be positive");
    }
    const CellMoments top = converged_moments(f, region, opts.max_per_cell, opts);
    const int total = rounded_count(top, region, opts);
    ZeroSearch search(f, opts);
    search.solve(region, top, total, 0);
    RootSet out;
    out.region = region;
    out.roots = std::move(search.roots);
    out.warnings = std::move(search.warnings);
    sort_roots(out.roots);
    if (static_cast<int>(out.roots.size()) != total) {
        std::ostringstream os;
        os << "found " << out.roots.size() << " roots but the argument principle counts " << total;
        throw Error(ErrorKind::CountMismatch, os.str());
    }
    return out;
}

RootSet find_poles(const DelayNetwork& net, const ContourRegion& region, const ZeroSearchOptions& opts) {
    RootSet poles = find_zeros(determinant_function(net), region, opts);
    for (const Root& r : poles.roots) {
        if (!(r.location.real() < 0.0)) {
            std::ostringstream os;
            os << "pole at " << r.location << " is not in the open left half-plane";
            throw Error(ErrorKind::UnstablePoleFound, os.str());
        }
    }
    return poles;
}

RootSet zeros_from_poles(const RootSet& poles) {
    RootSet out;
    out.region = ContourRegion{-poles.region.re_max, -poles.region.re_min, poles.region.im_min,
                               poles.region.im_max};
    out.warnings = poles.warnings;
    for (const Root& r : poles.roots) {
        out.roots.push_back({-std::conj(r.location), 0.0});
    }
    sort_roots(out.roots);
    return out;
}

RootSet zeros_from_poles(const RootSet& poles, const DelayNetwork& net) {
    RootSet out = zeros_from_poles(poles);
    for (Root& r : out.roots) {
        r.residual = std::abs(eval_tf(net, r.location).determinant());
    }
    return out;
}

std::vector<long> commensurate_multiples(const DelayNetwork& net, double t0, double rel_tol) {
    if (!(t0 > 0.0) || !std::isfinite(t0)) {
        throw Error(ErrorKind::DomainError, "commensurate step must be positive");
    }
    std::vector<long> k;
    k.reserve(net.delays().size());
    for (double t : net.delays()) {
        const double ratio = t / t0;
        const long m = std::lround(ratio);
        if (m < 1 || std::abs(t - static_cast<double>(m) * t0) > rel_tol * t) {
            std::ostringstream os;
            os << "delay " << t << " is not an integer multiple of " << t0;
            throw Error(ErrorKind::NotCommensurate, os.str());
        }
        k.push_back(m);
    }
    return k;
}

RootSet commensurate_poles(const DelayNetwork& net, double t0, const ContourRegion& region) {
    region.validate();
    const std::vector<long> k = commensurate_multiples(net, t0);
    RootSet out;
    out.region = region;
    const Eigen::Index n = net.internal_size();
    long total = 0;
    for (long m : k) {
        total += m;
    }
    if (n == 0) {
        return out;
    }
    // Sample p(w) = det(I - M1 diag(w^k)) on the (total+1)-th roots of unity and invert the DFT.
    const long samples = total + 1;
    std::vector<Complex> values(static_cast<std::size_t>(samples));
    for (long j = 0; j < samples; ++j) {
        CVector d(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double angle = 2.0 * kPi * static_cast<double>((j * k[static_cast<std::size_t>(i)]) % samples) /
                                 static_cast<double>(samples);
            d(i) = std::polar(1.0, angle);
        }
        const CMatrix x = CMatrix::Identity(n, n) - net.m1() * d.asDiagonal();
        values[static_cast<std::size_t>(j)] = x.determinant();
    }
    std::vector<Complex> coeffs(static_cast<std::size_t>(samples));
    double cmax = 0.0;
    for (long m = 0; m < samples; ++m) {
        Complex acc(0.0);
        for (long j = 0; j < samples; ++j) {
            const double angle = -2.0 * kPi * static_cast<double>((j * m) % samples) / static_cast<double>(samples);
            acc += values[static_cast<std::size_t>(j)] * std::polar(1.0, angle);
        }
        coeffs[static_cast<std::size_t>(m)] = acc / static_cast<double>(samples);
        cmax = std::max(cmax, std::abs(coeffs[static_cast<std::size_t>(m)]));
    }
    long degree = total;
    while (degree > 0 && std::abs(coeffs[static_cast<std::size_t>(degree)]) < 1e-12 * cmax) {
        --degree;
    }
    if (degree == 0) {
        return out;
    }
    if (std::abs(coeffs[static_cast<std::size_t>(degree)]) < 1e-8 * cmax) {
        throw Error(ErrorKind::DegenerateLeadingCoefficient,
                    "leading coefficient of the pole polynomial is numerically ambiguous");
    }
    // Roots lambda = 1/w of the reversed polynomial lambda^d + c1/c0 lambda^{d-1} + ... + cd/c0.
    const Complex c0 = coeffs[0];
    const auto d = static_cast<Eigen::Index>(degree);
    CMatrix companion = CMatrix::Zero(d, d);
    for (Eigen::Index m = 1; m <= d; ++m) {
        companion(0, m - 1) = -coeffs[static_cast<std::size_t>(m)] / c0;
    }
    for (Eigen::Index i = 1; i < d; ++i) {
        companion(i, i - 1) = 1.0;
    }
    const CVector ev = eigenvalues(companion);
    for (Eigen::Index i = 0; i < d; ++i) {
        const Complex lambda = ev(i);
        const double mod = std::abs(lambda);
        if (!(mod > 0.0) || !(mod < 1.0)) {
            continue;
        }
        const double re = std::log(mod) / t0;
        if (!(re > region.re_min && re < region.re_max)) {
            continue;
        }
        const double arg = std::arg(lambda);
        const double period = 2.0 * kPi;
        const auto m_lo = static_cast<long>(std::ceil((region.im_min * t0 - arg) / period));
        const auto m_hi = static_cast<long>(std::floor((region.im_max * t0 - arg) / period));
        for (long m = m_lo; m <= m_hi; ++m) {
            const Complex z(re, (arg + period * static_cast<double>(m)) / t0);
            if (region.contains(z)) {
                out.roots.push_back({z, std::abs(pole_determinant(net, z).value)});
            }
        }
    }
    sort_roots(out.roots);
    return out;
}

ContourRegion default_pole_strip(const DelayNetwork& net, double im_min, double im_max) {
    double re_min = -1.0;
    if (net.internal_size() > 0) {
        const double rho = spectral_radius(net.m1());
        if (rho > 0.0) {
            re_min = 2.0 * std::log(rho) / net.max_delay();
        }
        const double tmin = *std::min_element(net.delays().begin(), net.delays().end());
        const double rel = relative_min_singular_value(net.m1());
        if (rel > NetworkTolerances::eps_rank) {
            // Poles satisfy det(E(-z) - M1) = 0, impossible once max_k exp(Re z T_k) < sigma_min(M1).
            const double smin = rel * spectral_norm(net.m1());
            re_min = std::min(re_min, std::log(smin) / tmin);
        } else {
            // No finite bound exists for singular M1; stop where the shortest delay attenuates by 1e3.
            re_min = std::min(re_min, std::log(kSingularStripAttenuation) / tmin);
        }
        re_min = 1.05 * re_min - 1e-3;
    }
    return ContourRegion{re_min, 0.0, im_min, im_max};
}

}  // namespace potapov
