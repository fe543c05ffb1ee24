#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "potapov/catalog.hpp"
#include "potapov/pade.hpp"
#include "potapov/statespace.hpp"

namespace potapov {
namespace {

PotapovProduct cavity_product(int n_max) {
    const DelayNetwork net = build_cavity(0.8, 1.0);
    RootSet poles;
    for (Complex p : oracle::cavity_poles(0.8, 1.0, n_max)) {
        poles.roots.push_back({p, 0.0});
    }
    return interpolate(transfer_function(net), poles);
}

TEST(FactorToStatespace, RealPoleMatrices) {
    const StateSpace ss = factor_to_statespace(BlaschkeFactor(Complex(-1.0), CVector::Ones(1)));
    EXPECT_NEAR(std::abs(ss.a(0, 0) + 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(ss.b(0, 0) + std::sqrt(2.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(ss.c(0, 0) - std::sqrt(2.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(ss.d(0, 0) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(tf_of_statespace(ss, Complex(0.0))(0, 0) + 1.0), 0.0, 1e-14);
}

TEST(FactorToStatespace, AlwaysRealizableAndMatchesFactor) {
    std::mt19937_64 rng(6);
    for (int k = 0; k < 10; ++k) {
        const Complex p = oracle::random_point(rng, -3.0, -0.01, -20.0, 20.0);
        const CVector v = oracle::random_unitary(3, rng).col(0);
        const BlaschkeFactor f(p, v);
        const StateSpace ss = factor_to_statespace(f);
        const RealizabilityReport r = realizability_check(ss);
        EXPECT_TRUE(r.pass);
        EXPECT_LT(std::max({r.d_unitary, r.passivity, r.coupling}), 1e-12);
        const Complex z = oracle::random_point(rng, -1.0, 1.0, -20.0, 20.0);
        EXPECT_LT((tf_of_statespace(ss, z) - oracle::blaschke_entrywise(p, f.v, z)).norm(), 1e-12);
    }
}

TEST(OmegaOf, ExtractsImaginaryPart) {
    EXPECT_NEAR(std::abs(omega_of(factor_to_statespace(BlaschkeFactor(Complex(-0.1, 3.0), CVector::Ones(1))))(0, 0) +
                         3.0),
                0.0, 1e-14);
    EXPECT_NEAR(std::abs(omega_of(factor_to_statespace(BlaschkeFactor(Complex(-1.0), CVector::Ones(1))))(0, 0)),
                0.0, 1e-14);
    const StateSpace two = product_to_statespace(cavity_product(1));
    const CMatrix om = omega_of(two);
    EXPECT_LT((om - om.adjoint()).norm(), 1e-12);
}

TEST(OmegaOf, RejectsNonRealizable) {
    StateSpace ss = factor_to_statespace(BlaschkeFactor(Complex(-1.0), CVector::Ones(1)));
    ss.b = -ss.b;
    try {
        (void)omega_of(ss);
        FAIL() << "expected NotRealizable";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotRealizable);
    }
}

TEST(RealizabilityCheck, CorruptedCouplingIsMeasured) {
    StateSpace ss = factor_to_statespace(BlaschkeFactor(Complex(-0.5, 2.0), CVector::Ones(1)));
    ss.b = -ss.b;
    const RealizabilityReport r = realizability_check(ss);
    EXPECT_FALSE(r.pass);
    EXPECT_NEAR(r.coupling, 2.0 * (ss.c.adjoint() * ss.d).norm(), 1e-12);
}

TEST(RealizabilityCheck, PadeRealizationPasses) {
    const PotapovProduct p = pade_as_product(pade_exp(1, 1.0));
    EXPECT_TRUE(realizability_check(product_to_statespace(p)).pass);
}

TEST(Cascade, StaticUnitariesCompose) {
    std::mt19937_64 rng(1);
    const CMatrix u1 = oracle::random_unitary(2, rng);
    const CMatrix u2 = oracle::random_unitary(2, rng);
    const StateSpace c = cascade(static_statespace(u1), static_statespace(u2));
    EXPECT_EQ(c.modes(), 0);
    EXPECT_LT((c.d - u2 * u1).norm(), 1e-15);
}

TEST(Cascade, IdentityIsNeutral) {
    const StateSpace ss = product_to_statespace(cavity_product(2));
    const StateSpace id = static_statespace(CMatrix::Identity(1, 1));
    std::mt19937_64 rng(2);
    for (int k = 0; k < 10; ++k) {
        const Complex z = oracle::random_point(rng, 0.0, 2.0, -20.0, 20.0);
        const CMatrix ref = tf_of_statespace(ss, z);
        EXPECT_LT((tf_of_statespace(cascade(id, ss), z) - ref).norm(), 1e-13);
        EXPECT_LT((tf_of_statespace(cascade(ss, id), z) - ref).norm(), 1e-13);
    }
}

TEST(Cascade, TwoFactorsMultiply) {
    std::mt19937_64 rng(3);
    const BlaschkeFactor f1(Complex(-0.4, 1.0), oracle::random_unitary(2, rng).col(0));
    const BlaschkeFactor f2(Complex(-0.9, -2.0), oracle::random_unitary(2, rng).col(0));
    const StateSpace c = cascade(factor_to_statespace(f1), factor_to_statespace(f2));
    EXPECT_EQ(c.modes(), 2);
    for (int k = 0; k < 20; ++k) {
        const Complex z = oracle::random_point(rng, -0.2, 2.0, -10.0, 10.0);
        EXPECT_LT((tf_of_statespace(c, z) - f2.value(z) * f1.value(z)).norm(), 1e-10);
    }
}

TEST(Cascade, PortMismatch) {
    try {
        (void)cascade(static_statespace(CMatrix::Identity(1, 1)), static_statespace(CMatrix::Identity(2, 2)));
        FAIL() << "expected PortMismatch";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::PortMismatch);
    }
}

TEST(ProductToStatespace, EmptyProduct) {
    PotapovProduct p;
    p.u = CMatrix::Identity(2, 2);
    const StateSpace ss = product_to_statespace(p);
    EXPECT_EQ(ss.modes(), 0);
    EXPECT_EQ(ss.d, CMatrix::Identity(2, 2));
}

TEST(ProductToStatespace, MatchesEvalProduct) {
    const PotapovProduct p = cavity_product(1);
    const StateSpace ss = product_to_statespace(p);
    EXPECT_TRUE(realizability_check(ss).pass);
    std::mt19937_64 rng(4);
    for (int k = 0; k < 50; ++k) {
        const Complex z = oracle::random_point(rng, -0.2, 2.0, -20.0, 20.0);
        EXPECT_LT((tf_of_statespace(ss, z) - eval_product(p, z)).norm(), 1e-10);
    }
}

TEST(TfOfStatespace, LimitAndInnerness) {
    const StateSpace ss = product_to_statespace(cavity_product(3));
    EXPECT_LT((tf_of_statespace(ss, Complex(1e9)) - ss.d).norm(), 1e-7);
    const StateSpace one = factor_to_statespace(BlaschkeFactor(Complex(-0.3, 1.0), CVector::Ones(1)));
    for (double w = -10.0; w <= 10.0; w += 0.5) {
        EXPECT_NEAR(std::abs(tf_of_statespace(one, Complex(0.0, w))(0, 0)), 1.0, 1e-10);
    }
    try {
        (void)tf_of_statespace(one, Complex(-0.3, 1.0));
        FAIL() << "expected AtPole";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::AtPole);
    }
}

TEST(Simulate, ZeroInputZeroOutput) {
    const StateSpace ss = product_to_statespace(cavity_product(2));
    const std::vector<double> t = uniform_time_grid(5.0, 100);
    const Signal y = simulate(ss, constant_drive(t, CVector::Zero(1)), CVector::Zero(ss.modes()));
    for (const CVector& v : y.values) {
        EXPECT_EQ(v.norm(), 0.0);
    }
}

TEST(Simulate, ConstantDriveReachesDcGain) {
    const StateSpace ss = product_to_statespace(cavity_product(3));
    const std::vector<double> t = uniform_time_grid(300.0, 3000);
    const CVector u = CVector::Constant(1, Complex(0.7, 0.2));
    const Signal y = simulate(ss, constant_drive(t, u), CVector::Zero(ss.modes()));
    const CVector expected = tf_of_statespace(ss, Complex(0.0)) * u;
    EXPECT_LT((y.values.back() - expected).norm(), 1e-6);
}

TEST(Simulate, SinusoidalDriveReachesFrequencyResponse) {
    const StateSpace ss = product_to_statespace(cavity_product(3));
    const double w = 2.5;
    // The sampled sinusoid is integrated as its linear interpolant, an O(dt^2) input perturbation.
    const std::vector<double> t = uniform_time_grid(300.0, 300000);
    const Signal y = simulate(ss, sinusoidal_drive(t, CVector::Ones(1), w), CVector::Zero(ss.modes()));
    const Complex expected = tf_of_statespace(ss, Complex(0.0, w))(0, 0) * std::exp(Complex(0.0, w * t.back()));
    EXPECT_LT(std::abs(y.values.back()(0) - expected), 1e-6);
}

TEST(Simulate, UndrivenEnergyIsNonincreasing) {
    const StateSpace ss = product_to_statespace(cavity_product(4));
    const std::vector<double> t = uniform_time_grid(10.0, 500);
    std::vector<CVector> states;
    std::mt19937_64 rng(12);
    const CVector a0 = oracle::random_unitary(ss.modes(), rng).col(0);
    (void)simulate(ss, constant_drive(t, CVector::Zero(1)), a0, &states);
    ASSERT_EQ(states.size(), t.size());
    for (std::size_t k = 1; k < states.size(); ++k) {
        EXPECT_LE(states[k].squaredNorm(), states[k - 1].squaredNorm() + 1e-14);
    }
}

TEST(Simulate, NonuniformGridIsRejected) {
    const StateSpace ss = product_to_statespace(cavity_product(1));
    Signal in = constant_drive({0.0, 0.1, 0.3}, CVector::Ones(1));
    try {
        (void)simulate(ss, in, CVector::Zero(ss.modes()));
        FAIL() << "expected NonuniformGrid";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NonuniformGrid);
    }
}

TEST(DecayTime, SlowestMode) {
    const StateSpace ss = product_to_statespace(cavity_product(1));
    EXPECT_NEAR(decay_time(ss), -1.0 / std::log(0.8), 1e-10);
}

}  // namespace
}  // namespace potapov
