#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "potapov/catalog.hpp"
#include "potapov/pade.hpp"

namespace potapov {
namespace {

TEST(PadeExp, FirstOrderValue) {
    const PadeApproximant p = pade_exp(1, 1.0);
    EXPECT_NEAR(std::abs(p.value(Complex(1.0)) - 1.0 / 3.0), 0.0, 1e-15);
    for (Complex z : {Complex(0.3, 0.0), Complex(0.1, 2.0)}) {
        EXPECT_NEAR(std::abs(p.value(z) - (1.0 - z / 2.0) / (1.0 + z / 2.0)), 0.0, 1e-15);
    }
}

TEST(PadeExp, UnitModulusOnImaginaryAxis) {
    for (int n : {1, 2, 5, 8, 12}) {
        for (double t : {0.1, 0.23, 1.0}) {
            const PadeApproximant p = pade_exp(n, t);
            for (double w = -200.0; w <= 200.0; w += 3.1) {
                EXPECT_NEAR(std::abs(p.value(Complex(0.0, w))), 1.0, 1e-12);
            }
        }
    }
}

TEST(PadeExp, TaylorMatchesToOrderTwoN) {
    for (int n = 1; n <= 10; ++n) {
        const PadeApproximant p = pade_exp(n, 1.0);
        std::vector<double> den = p.coefficients;
        for (std::size_t k = 1; k < den.size(); k += 2) {
            den[k] = -den[k];
        }
        const std::vector<double> q = oracle::series_quotient(p.coefficients, den, 2 * n + 2);
        double factorial = 1.0;
        for (int k = 0; k <= 2 * n; ++k) {
            factorial *= k == 0 ? 1.0 : k;
            const double expected = (k % 2 == 0 ? 1.0 : -1.0) / factorial;
            EXPECT_NEAR(q[static_cast<std::size_t>(k)], expected, 1e-9 * std::abs(expected)) << n << " " << k;
        }
        factorial *= 2 * n + 1;
        const double next = -1.0 / factorial;
        // The first unmatched coefficient is off by the error constant (n!)^2 / ((2n)! (2n+1)!).
        double error_constant = 1.0;
        for (int k = 1; k <= n; ++k) {
            error_constant *= static_cast<double>(k) / (n + k);
        }
        error_constant /= factorial;
        const double gap = std::abs(q[static_cast<std::size_t>(2 * n + 1)] - next);
        EXPECT_NEAR(gap, error_constant, 1e-3 * error_constant) << n;
    }
}

TEST(PadeExp, PolesAreStableRootsOfQ) {
    const PadeApproximant p = pade_exp(8, 0.5);
    ASSERT_EQ(p.q_roots.size(), 8u);
    for (Complex q : p.q_roots) {
        EXPECT_GT(q.real(), 0.0);
        Complex acc(0.0);
        for (auto it = p.coefficients.rbegin(); it != p.coefficients.rend(); ++it) {
            acc = acc * q + *it;
        }
        EXPECT_LT(std::abs(acc), 1e-10);
    }
    for (Complex pole : p.poles()) {
        EXPECT_LT(pole.real(), 0.0);
    }
}

TEST(PadeExp, InvalidArguments) {
    for (auto [n, t] : {std::pair{0, 1.0}, std::pair{2, 0.0}, std::pair{2, -1.0}}) {
        try {
            (void)pade_exp(n, t);
            FAIL() << "expected DomainError";
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::DomainError);
        }
    }
}

TEST(PadeAsProduct, EqualsApproximant) {
    const PadeApproximant p = pade_exp(5, 0.7);
    const PotapovProduct prod = pade_as_product(p);
    std::mt19937_64 rng(7);
    for (int k = 0; k < 20; ++k) {
        const Complex z = oracle::random_point(rng, -0.5, 2.0, -20.0, 20.0);
        EXPECT_NEAR(std::abs(eval_product(prod, z)(0, 0) - p.value(z)), 0.0, 1e-11);
    }
}

TEST(PadeOrders, ProportionalToDelay) {
    const std::vector<int> expected{3, 8, 3, 6};
    EXPECT_EQ(pade_orders(catalog::example1(), 8), expected);
    const std::vector<int> ones{1, 1, 1, 1};
    EXPECT_EQ(pade_orders(catalog::example1(), 1), ones);
}

TEST(PadeNetworkTf, RejectsBadOrders) {
    for (const std::vector<int>& orders : {std::vector<int>{0, 0, 0, 0}, std::vector<int>{1, 2}}) {
        try {
            (void)pade_network_tf(catalog::example1(), orders);
            FAIL() << "expected DomainError";
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::DomainError);
        }
    }
}

TEST(PadeNetworkTf, ConvergesAtLowFrequency) {
    const DelayNetwork net = catalog::example1();
    const MatrixFunction t = transfer_function(net);
    const MatrixFunction low = pade_network_tf(net, pade_orders(net, 2));
    const MatrixFunction high = pade_network_tf(net, pade_orders(net, 8));
    EXPECT_LT(sup_error(t, high, 10.0, 201), sup_error(t, low, 10.0, 201));
    EXPECT_LT(sup_error(t, high, 10.0, 201), 1e-3);
}

TEST(PadeCavity, PoleDeviationGrowsWithIndex) {
    const PadeApproximant p = pade_exp(8, 1.0);
    const std::vector<Complex> exact = oracle::cavity_poles(0.8, 1.0, 12);
    // Poles of the substituted cavity 1 - 0.8 Pade(z) = 0, i.e. Q(-z) - 0.8 Q(z) = 0.
    const std::size_t n = p.coefficients.size();
    CMatrix companion = CMatrix::Zero(static_cast<Eigen::Index>(n - 1), static_cast<Eigen::Index>(n - 1));
    std::vector<double> poly(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double c = p.coefficients[k];
        poly[k] = (k % 2 == 0 ? c : -c) - 0.8 * c;
    }
    for (std::size_t k = 0; k + 1 < n; ++k) {
        companion(0, static_cast<Eigen::Index>(k)) = -poly[n - 2 - k] / poly[n - 1];
        if (k > 0) {
            companion(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k - 1)) = 1.0;
        }
    }
    const CVector roots = eigenvalues(companion);
    std::vector<double> deviation;
    for (int m = 0; m <= 3; ++m) {
        const Complex target = exact[static_cast<std::size_t>(12 + m)];
        double best = 1e300;
        for (Eigen::Index k = 0; k < roots.size(); ++k) {
            best = std::min(best, std::abs(roots(k) - target));
        }
        deviation.push_back(best);
    }
    EXPECT_LT(deviation[0], 1e-6);
    for (std::size_t m = 1; m < deviation.size(); ++m) {
        EXPECT_GT(deviation[m], deviation[m - 1]);
    }
}

}  // namespace
}  // namespace potapov
